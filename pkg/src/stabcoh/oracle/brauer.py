"""Semisimplicity of tiny walled Brauer algebras via the regular trace form."""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..diagrams import WalledDiagram, all_diagrams, compose_wbr
from ..linalg import SparseEchelon

MAX_STRANDS = 3


@dataclass(frozen=True)
class SemisimplicityVerdict:
    n: int
    m: int
    delta: int
    p: int
    dim: int
    semisimple: bool
    radical_dim: int

    def to_dict(self) -> dict:
        return {
            "n": self.n, "m": self.m, "delta": self.delta, "p": self.p, "dim": self.dim,
            "semisimple": self.semisimple, "radical_dim": self.radical_dim,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def structure_constants(n: int, m: int, delta: int, p: int):
    """Basis of B_{n,m}(delta) and products x_i x_j = c * x_k (x_j applied first)."""
    basis = all_diagrams((n, m), (n, m))
    index = {w: i for i, w in enumerate(basis)}
    table = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            c, w = compose_wbr(b, a, delta, p)
            table[i, j] = (c % p, index[w])
    return basis, table


def _span_products(left: list[dict[int, int]], right: list[dict[int, int]], table, p: int):
    ech = SparseEchelon(p)
    out = []
    for u in left:
        for v in right:
            prod: dict[int, int] = {}
            for i, x in u.items():
                for j, y in v.items():
                    c, k = table[i, j]
                    if c:
                        prod[k] = (prod.get(k, 0) + x * y * c) % p
            if ech.add(prod):
                out.append(prod)
    return out


def gram_semisimple(n: int, m: int, delta: int, p: int) -> SemisimplicityVerdict:
    """Radical of B_{n,m}(delta) over F_p from the trace form tr(L_{xy}).

    The kernel of the form is an ideal containing the radical; it is accepted
    as the radical only after checking that it is nilpotent.
    """
    if n < 0 or m < 0:
        raise ValueError("n and m must be non-negative")
    if n + m > MAX_STRANDS:
        raise ValueError(f"n + m must be at most {MAX_STRANDS}")
    delta %= p
    basis, table = structure_constants(n, m, delta, p)
    dim = len(basis)
    trace = [0] * dim
    for k in range(dim):
        for l in range(dim):
            c, t = table[k, l]
            if t == l:
                trace[k] = (trace[k] + c) % p
    ech = SparseEchelon(p, track=True)
    for i in range(dim):
        row = {}
        for j in range(dim):
            c, k = table[i, j]
            v = c * trace[k] % p
            if v:
                row[j] = v
        ech.add(row, tag=i)
    kernel = ech.dependencies
    power = kernel
    for _ in range(dim + 1):
        if not power:
            break
        power = _span_products(power, kernel, table, p)
    if power:
        raise ArithmeticError("trace form kernel is not nilpotent; radical undetermined")
    return SemisimplicityVerdict(n, m, delta, p, dim, not kernel, len(kernel))


__all__ = ["SemisimplicityVerdict", "WalledDiagram", "gram_semisimple", "structure_constants"]
