"""Bernoulli numbers mod p, exceptional indices and ring presentations.

B_m mod p is evaluated with the Voronoi congruence

    (c^m - 1) B_m = m c^(m-1) sum_{a=1}^{p-1} a^(m-1) floor(a c / p)   (mod p)

for 2 <= m <= p-3 even and any c with c^m != 1 mod p.  With c = 2 the floor
is 1 exactly for a > p/2, so one index costs one vectorised pass over about
p/2 residues.
"""

from __future__ import annotations

import json
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

ALGORITHM_VERSION = "voronoi-1"
DEFAULT_SCAN_CAP = 100_000
SAMPLE_SIZE = 100
CACHE_ENV = "STABCOH_CACHE_DIR"

# Odd values 1+2k with B_{p-1-2k} = 0 mod p, used as candidates in targeted mode.
KNOWN_CANDIDATES: dict[int, tuple[int, ...]] = {
    37: (5,),
    16843: (3,),
    2124679: (3, 1422781),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic Miller-Rabin for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _check_index(m: int, p: int) -> None:
    if not is_prime(p) or p < 5:
        raise ValueError(f"p must be a prime >= 5, got {p}")
    if m % 2 or not 2 <= m <= p - 3:
        raise ValueError(f"need even m with 2 <= m <= p-3 (m={m}, p={p})")


def _powmod_vec(base: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.ones_like(base)
    b = base % p
    while e:
        if e & 1:
            result = result * b % p
        b = b * b % p
        e >>= 1
    return result


def bernoulli_mod(m: int, p: int) -> int:
    """B_m mod p for even 2 <= m <= p-3."""
    _check_index(m, p)
    if p >= 3_000_000_000:
        raise ValueError("p too large for int64 vector arithmetic")
    c = 2
    while pow(c, m, p) == 1:
        c += 1
    if c == 2:
        a = np.arange((p + 1) // 2, p, dtype=np.int64)
        s = int(_powmod_vec(a, m - 1, p).sum() % p)
    else:
        a = np.arange(1, p, dtype=np.int64)
        fl = (a * c) // p
        s = int((_powmod_vec(a, m - 1, p) * fl % p).sum() % p)
    num = m * pow(c, m - 1, p) * s % p
    return num * pow(pow(c, m, p) - 1, -1, p) % p


def bernoulli_series_mod(p: int) -> list[int]:
    """B_0 .. B_{p-3} mod p by inverting t / (e^t - 1) as a power series mod p."""
    n = p - 2
    fact = [1] * (n + 2)
    for i in range(1, n + 2):
        fact[i] = fact[i - 1] * i % p
    # (e^t - 1)/t = sum t^k / (k+1)!
    f = [pow(fact[k + 1], -1, p) for k in range(n)]
    g = [0] * n
    g[0] = 1
    for k in range(1, n):
        g[k] = -sum(f[j] * g[k - j] for j in range(1, k + 1)) % p
    return [g[k] * fact[k] % p for k in range(n)]


# -- cache ------------------------------------------------------------------

class BernoulliCache:
    """JSON file mapping "p:m" to B_m mod p, tied to the algorithm version."""

    def __init__(self, path: str | os.PathLike | None = None):
        if path is None:
            root = os.environ.get(CACHE_ENV) or os.path.join(Path.home(), ".cache", "stabcoh")
            path = os.path.join(root, "bernoulli.json")
        self.path = Path(path)
        self.values: dict[str, int] = {}
        self.dirty = False
        if self.path.exists():
            try:
                data = json.loads(self.path.read_text())
            except (OSError, ValueError):
                data = {}
            if data.get("version") == ALGORITHM_VERSION:
                self.values = {k: int(v) for k, v in data.get("values", {}).items()}

    def get(self, p: int, m: int) -> int | None:
        return self.values.get(f"{p}:{m}")

    def put(self, p: int, m: int, value: int) -> None:
        self.values[f"{p}:{m}"] = int(value)
        self.dirty = True

    def save(self) -> None:
        if not self.dirty:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_suffix(".tmp")
        tmp.write_text(json.dumps({"version": ALGORITHM_VERSION, "values": self.values}, sort_keys=True))
        tmp.replace(self.path)
        self.dirty = False


def _evaluate(p: int, indices: Sequence[int], cache: BernoulliCache | None, workers: int) -> dict[int, int]:
    out: dict[int, int] = {}
    todo = []
    for m in indices:
        hit = cache.get(p, m) if cache else None
        if hit is None:
            todo.append(m)
        else:
            out[m] = hit
    if workers > 1 and len(todo) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            vals = list(pool.map(lambda m: bernoulli_mod(m, p), todo))
    else:
        vals = [bernoulli_mod(m, p) for m in todo]
    for m, v in zip(todo, vals):
        out[m] = v
        if cache:
            cache.put(p, m, v)
    if cache:
        cache.save()
    return out


# -- exceptional indices ----------------------------------------------------

@dataclass
class IrregularReport:
    p: int
    exceptional_k: tuple[int, ...]  # odd values 1+2k with B_{p-1-2k} = 0 mod p
    scan_mode: str
    vandiver_assumed: bool
    checked: int = 0
    sample: list[int] = field(default_factory=list)  # indices m checked as random spot checks

    @property
    def irregular_indices(self) -> tuple[int, ...]:
        return tuple(sorted(self.p - v for v in self.exceptional_k))

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "exceptions": list(self.exceptional_k),
            "irregular_indices": list(self.irregular_indices),
            "scan_mode": self.scan_mode,
            "vandiver_assumed": self.vandiver_assumed,
            "checked": self.checked,
            "sample_size": len(self.sample),
        }


def exceptions(
    p: int,
    mode: str = "full",
    candidates: Iterable[int] | None = None,
    *,
    scan_cap: int = DEFAULT_SCAN_CAP,
    sample_size: int = SAMPLE_SIZE,
    seed: int | None = None,
    cache: BernoulliCache | None = None,
    workers: int = 1,
) -> IrregularReport:
    """The odd values 1+2k in [3, p-2] with B_{p-1-2k} = 0 mod p.

    ``full`` checks every index; ``targeted`` checks only ``candidates`` (by
    default the known list for p) plus a random sample of other indices,
    and reports any sampled zero as well.
    """
    if p == 3:
        return IrregularReport(3, (), mode, False)
    if not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    all_odd = range(3, p - 1, 2)
    if mode == "full":
        if p > scan_cap:
            raise ValueError(f"full scan of p={p} exceeds cap {scan_cap}; use targeted mode")
        indices = [p - 1 - (v - 1) for v in all_odd]
        vals = _evaluate(p, indices, cache, workers)
        exc = tuple(sorted(p - m for m, v in vals.items() if v == 0))
        return IrregularReport(p, exc, "full", bool(exc), len(indices))
    if mode != "targeted":
        raise ValueError(f"unknown mode {mode!r}")
    cands = tuple(sorted(set(candidates if candidates is not None else KNOWN_CANDIDATES.get(p, ()))))
    for v in cands:
        if v % 2 == 0 or not 3 <= v <= p - 2:
            raise ValueError(f"candidate {v} is not an odd value in [3, p-2]")
    rng = random.Random(p if seed is None else seed)
    pool = [v for v in all_odd if v not in set(cands)] if p < 10**6 else None
    if pool is not None:
        sample_vals = rng.sample(pool, min(sample_size, len(pool)))
    else:
        picked: set[int] = set()
        while len(picked) < min(sample_size, (p - 3) // 2 - len(cands)):
            v = 2 * rng.randrange(1, (p - 1) // 2) + 1
            if v not in cands:
                picked.add(v)
        sample_vals = sorted(picked)
    indices = [p - v for v in cands] + [p - v for v in sample_vals]
    vals = _evaluate(p, indices, cache, workers)
    exc = tuple(sorted(p - m for m, v in vals.items() if v == 0))
    return IrregularReport(p, exc, "targeted", bool(exc), len(indices), [p - v for v in sample_vals])


# -- ring presentations -----------------------------------------------------

@dataclass
class RingPresentation:
    p: int
    degree_bound: int
    generators: list[tuple[str, int, str]]
    flags: dict = field(default_factory=dict)
    exceptions: tuple[int, ...] = ()
    n: int | None = None

    def degrees(self, kind: str | None = None) -> list[int]:
        return [d for _, d, k in self.generators if kind is None or k == kind]

    def to_dict(self, series_terms: int = 64) -> dict:
        n_terms = min(self.degree_bound - 1, series_terms - 1)
        out = {
            "p": self.p,
            "degree_bound": self.degree_bound,
            "exceptions": list(self.exceptions),
            "generators": [{"name": a, "degree": d, "kind": k} for a, d, k in self.generators],
            "poincare": poincare(self, n_terms) if n_terms >= 0 else [],
            "flags": dict(sorted(self.flags.items())),
        }
        if self.n is not None:
            out["n"] = self.n
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _resolve_exceptions(p: int, report: IrregularReport | None, scan_cap: int) -> IrregularReport:
    if report is not None:
        if report.p != p:
            raise ValueError("report is for a different prime")
        return report
    if p <= scan_cap:
        return exceptions(p, "full", scan_cap=scan_cap)
    return exceptions(p, "targeted")


def completed_ring(
    p: int,
    degree_bound: int | None = None,
    report: IrregularReport | None = None,
    *,
    scan_cap: int = DEFAULT_SCAN_CAP,
) -> RingPresentation:
    """Generators of the completed cohomology ring in degrees below ``degree_bound``."""
    if p < 3 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    bound = p if degree_bound is None else degree_bound
    if bound > p:
        raise ValueError(f"degree bound {bound} exceeds p = {p}")
    rep = _resolve_exceptions(p, report, scan_cap)
    gens: list[tuple[str, int, str]] = [(f"x{d}", d, "polynomial") for d in range(2, bound, 4)]
    vandiver = False
    for v in rep.exceptional_k:
        k = (v - 1) // 2
        if 4 * k < bound:
            gens += [(f"y{4 * k}", 4 * k, "polynomial"), (f"y{4 * k + 1}", 4 * k + 1, "exterior")]
        i = (p - 1 - 2 * k) // 2
        if 4 * i - 2 < bound:
            gens += [(f"y{4 * i - 2}", 4 * i - 2, "polynomial"), (f"y{4 * i - 1}", 4 * i - 1, "exterior")]
            vandiver = True
    gens.sort(key=lambda g: (g[1], g[0]))
    flags = {"regular_prime": not rep.exceptional_k, "vandiver_assumed": vandiver, "scan_mode": rep.scan_mode}
    return RingPresentation(p, bound, gens, flags, rep.exceptional_k)


def congruence_ring(
    p: int,
    n: int,
    m: int = 1,
    degree_bound: int | None = None,
    report: IrregularReport | None = None,
) -> RingPresentation:
    """Lambda of the degree-one block dual to sl_n, tensored with the completed ring.

    The answer does not depend on the level m >= 1.
    """
    if p < 3 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if m < 1:
        raise ValueError("level m must be at least 1")
    if n < 1:
        raise ValueError("n must be positive")
    base = completed_ring(p, degree_bound, report)
    block = [(f"w{j}", 1, "exterior") for j in range(1, n * n)]
    pres = RingPresentation(p, base.degree_bound, block + base.generators, dict(base.flags), base.exceptions, n)
    pres.flags["level"] = m
    return pres


def poincare(pres: RingPresentation, N: int) -> list[int]:
    """Coefficients of prod(1 + t^|g|) over exterior g times prod 1/(1 - t^|g|) over polynomial g."""
    if N >= pres.degree_bound:
        raise ValueError(f"N = {N} must be below the degree bound {pres.degree_bound}")
    coeffs = [0] * (N + 1)
    coeffs[0] = 1
    for _, d, kind in pres.generators:
        if d > N:
            continue
        if kind == "exterior":
            for k in range(N, d - 1, -1):
                coeffs[k] += coeffs[k - d]
        else:
            for k in range(d, N + 1):
                coeffs[k] += coeffs[k - d]
    return coeffs
