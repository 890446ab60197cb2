"""Regularity of the trace invariants c_1, c_2, ... on Sym(V⊗V^∨) by rank computation."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from ..linalg import DEFAULT_CAP, CapExceeded, SparseEchelon


@dataclass(frozen=True)
class RegularVerdict:
    k: int
    rmax: int
    d: int
    q: int
    regular: bool
    checks: tuple = field(default_factory=tuple)  # (i, s, source dim, image dim)

    def to_dict(self) -> dict:
        return {
            "k": self.k, "rmax": self.rmax, "d": self.d, "q": self.q, "regular": self.regular,
            "checks": [{"i": i, "s": s, "source_dim": a, "image_dim": b} for i, s, a, b in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def trace_polynomial(j: int, d: int, q: int) -> dict[tuple[int, ...], int]:
    """c_j = tr(X^j) in the variables x_{ab} (index a*d + b), as sorted monomials."""
    out: dict[tuple[int, ...], int] = {}
    for walk in itertools.product(range(d), repeat=j):
        key = tuple(sorted(walk[i] * d + walk[(i + 1) % j] for i in range(j)))
        out[key] = (out.get(key, 0) + 1) % q
    return {k: v for k, v in out.items() if v}


def regular_check(k: int, rmax: int, d: int, q: int, cap: int = DEFAULT_CAP) -> RegularVerdict:
    """Check that c_i is injective on Sym^s/(c_1..c_{i-1}) for i ≤ k and s + i ≤ rmax."""
    if k < 1 or d < 1 or rmax < 0:
        raise ValueError("need k >= 1, d >= 1, rmax >= 0")
    if rmax >= q:
        raise ValueError("need rmax < q")
    nvar = d * d
    monos = {s: list(itertools.combinations_with_replacement(range(nvar), s)) for s in range(rmax + 1)}
    if max(len(v) for v in monos.values()) > cap:
        raise CapExceeded(f"Sym^{rmax} of dimension {len(monos[rmax])} exceeds cap {cap}")
    index = {s: {mo: i for i, mo in enumerate(v)} for s, v in monos.items()}
    traces = {j: trace_polynomial(j, d, q) for j in range(1, min(k, rmax) + 1)}

    def times(j: int, mono: tuple[int, ...], s: int) -> dict[int, int]:
        out: dict[int, int] = {}
        for tm, c in traces[j].items():
            key = index[s][tuple(sorted(mono + tm))]
            out[key] = (out.get(key, 0) + c) % q
        return out

    def ideal(i: int, s: int) -> SparseEchelon:
        ech = SparseEchelon(q)
        for j in range(1, i):
            if j <= s:
                for mono in monos[s - j]:
                    ech.add(times(j, mono, s))
        return ech

    checks = []
    ok = True
    for i in range(1, k + 1):
        for s in range(0, rmax - i + 1):
            source = len(monos[s]) - len(ideal(i, s))
            target = ideal(i, s + i)
            base = len(target)
            for mono in monos[s]:
                target.add(times(i, mono, s + i))
            image = len(target) - base
            checks.append((i, s, source, image))
            ok = ok and image == source
    return RegularVerdict(k, rmax, d, q, ok, tuple(checks))
