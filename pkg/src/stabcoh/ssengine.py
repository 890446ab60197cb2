"""Differential-graded engines.

Two pieces:

* the two-column model F_p{e_2, e_4, ..} (x) Lambda[c_3, c_5, ..] with the d_2
  differential c_t -> t e_{t-1} extended by the graded Leibniz rule;
* a filtered-complex spectral sequence for free graded-commutative algebras
  with transgressive generators (Koszul-type complexes), computed page by page
  from the filtration by base degree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .symcore import partitions

# A monomial of the two-column model: (e-index or 0, increasing tuple of c-indices).
Monomial = tuple[int, tuple[int, ...]]


def _sort_sign(items: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the permutation sorting ``items`` (0 if there is a repeat)."""
    items = list(items)
    if len(set(items)) != len(items):
        return 0, ()
    inversions = sum(1 for i in range(len(items)) for j in range(i + 1, len(items)) if items[i] > items[j])
    return (-1) ** inversions, tuple(sorted(items))


def monomial_name(mono: Monomial) -> str:
    e, cs = mono
    parts = ([f"e{e}"] if e else []) + [f"c{c}" for c in cs]
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class BigradedElement:
    """Homogeneous element of the two-column model over F_p."""

    p: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (e, cs), v in self.terms.items():
            cs = tuple(cs)
            if e and (e % 2 or e < 2):
                raise ValueError(f"e-index must be even >= 2, got {e}")
            if any(c % 2 == 0 or c < 3 for c in cs):
                raise ValueError(f"c-indices must be odd >= 3, got {cs}")
            sgn, srt = _sort_sign(cs)
            if sgn == 0:
                continue
            key = (e, srt)
            clean[key] = (clean.get(key, 0) + sgn * v) % self.p
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v})
        bideg = {self._bideg(k) for k in self.terms}
        if len(bideg) > 1:
            raise ValueError(f"element is not homogeneous: {sorted(bideg)}")

    @staticmethod
    def _bideg(mono: Monomial) -> tuple[int, int]:
        e, cs = mono
        return (2 if e else 0, e + sum(cs))

    @classmethod
    def c(cls, *indices: int, p: int, coeff: int = 1) -> BigradedElement:
        return cls(p, {(0, tuple(indices)): coeff})

    @classmethod
    def e(cls, k: int, *indices: int, p: int, coeff: int = 1) -> BigradedElement:
        return cls(p, {(k, tuple(indices)): coeff})

    @property
    def bidegree(self) -> tuple[int, int] | None:
        if not self.terms:
            return None
        return self._bideg(next(iter(self.terms)))

    @property
    def fiber_degree(self) -> int:
        """Total degree t used for the Leibniz sign."""
        b = self.bidegree
        return b[1] if b else 0

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: BigradedElement) -> BigradedElement:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BigradedElement(self.p, out)

    def __sub__(self, other: BigradedElement) -> BigradedElement:
        return self + other.scale(-1)

    def scale(self, c: int) -> BigradedElement:
        return BigradedElement(self.p, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: BigradedElement) -> BigradedElement:
        out: dict = {}
        for (e1, c1), v1 in self.terms.items():
            for (e2, c2), v2 in other.terms.items():
                if e1 and e2:
                    raise ValueError("product of two e-classes leaves the two-column model")
                sgn, cs = _sort_sign(c1 + c2)
                if sgn == 0:
                    continue
                key = (e1 or e2, cs)
                out[key] = out.get(key, 0) + sgn * v1 * v2
        return BigradedElement(self.p, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, BigradedElement) and self.p == other.p and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, frozenset(self.terms.items())))

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "terms": [{"monomial": monomial_name(k), "coeff": v} for k, v in sorted(self.terms.items())],
        }

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{v}*{monomial_name(k)}" for k, v in sorted(self.terms.items()))


def d2_apply(x: BigradedElement) -> BigradedElement:
    """d_2 on the s = 0 column: c_t -> t e_{t-1} and the graded Leibniz rule."""
    out: dict = {}
    for (e, cs), v in x.terms.items():
        if e:
            raise ValueError("d2 is only defined on the s = 0 column")
        for j, cj in enumerate(cs):
            # left factor c_{i_1} .. c_{i_{j-1}} has odd degrees, so the sign is (-1)^j
            key = (cj - 1, cs[:j] + cs[j + 1:])
            out[key] = out.get(key, 0) + (-1) ** j * cj * v
    return BigradedElement(x.p, out)


def column_basis(s: int, t: int) -> list[Monomial]:
    """Monomials of bidegree (s, t) in canonical order."""
    if s == 0:
        return [(0, tuple(sorted(lam))) for lam in partitions(t, "distinct_odd_min3")]
    if s == 2:
        out = []
        for e in range(2, t + 1, 2):
            out.extend((e, tuple(sorted(lam))) for lam in partitions(t - e, "distinct_odd_min3"))
        return out
    raise ValueError("s must be 0 or 2")


@dataclass
class InjectivityReport:
    p: int
    injective: bool
    degree_dims: list[dict]
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {"p": self.p, "injective": self.injective, "degree_dims": self.degree_dims, "witness": self.witness}


def d2_injectivity(p: int) -> InjectivityReport:
    """Check that d_2: E^{0,t} -> E^{2,t-1} is injective for 0 < t < p."""
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    rows = []
    witness = None
    for t in range(1, p):
        src = column_basis(0, t)
        tgt = column_basis(2, t - 1)
        index = {m: i for i, m in enumerate(tgt)}
        mat = np.zeros((len(tgt), len(src)), dtype=np.int64)
        for j, mono in enumerate(src):
            img = d2_apply(BigradedElement(p, {mono: 1}))
            for k, v in img.terms.items():
                mat[index[k], j] = v
        rk = linalg.rank(mat, p) if src else 0
        rows.append({"t": t, "source_dim": len(src), "target_dim": len(tgt), "rank": rk})
        if rk < len(src) and witness is None:
            vec = linalg.nullspace(mat, p)[0]
            witness = {
                "t": t,
                "element": [{"monomial": monomial_name(src[i]), "coeff": int(c)} for i, c in enumerate(vec) if c],
            }
    return InjectivityReport(p, witness is None, rows, witness)


# -- transgressive algebras -------------------------------------------------

@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    kind: str  # "polynomial" or "exterior"
    role: str = "base"  # "base" or "fiber"

    def __post_init__(self):
        if self.kind not in ("polynomial", "exterior"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.role not in ("base", "fiber"):
            raise ValueError(f"unknown role {self.role!r}")
        if self.degree <= 0:
            raise ValueError("generator degrees must be positive")


@dataclass
class TransgressiveAlgebra:
    """Free graded-commutative algebra with a transgression from fiber to base classes."""

    generators: list[Generator]
    transgressions: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        by_name = {g.name: g for g in self.generators}
        if len(by_name) != len(self.generators):
            raise ValueError("duplicate generator names")
        for g in self.generators:
            if g.kind == "exterior" and g.degree % 2 == 0:
                raise ValueError(f"exterior generator {g.name} must have odd degree")
            if g.kind == "polynomial" and g.degree % 2:
                raise ValueError(f"polynomial generator {g.name} must have even degree")
        for src, tgt in self.transgressions.items():
            a, b = by_name[src], by_name[tgt]
            if b.degree != a.degree + 1:
                raise ValueError(f"transgression {src} -> {tgt} must raise degree by one")
            if a.role != "fiber" or b.role != "base":
                raise ValueError("transgressions go from fiber to base generators")

    def generator(self, name: str) -> Generator:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)


def regular_prime_family(degree_bound: int) -> TransgressiveAlgebra:
    """Base Lambda[y_3, y_5, ..], fiber F_p[x_2, x_6, ..], x_{4k+2} -> y_{4k+3}."""
    gens = [Generator(f"y{d}", d, "exterior", "base") for d in range(3, degree_bound + 2, 2)]
    fiber = [Generator(f"x{d}", d, "polynomial", "fiber") for d in range(2, degree_bound + 2, 4)]
    trans = {g.name: f"y{g.degree + 1}" for g in fiber if g.degree + 1 <= degree_bound + 1}
    return TransgressiveAlgebra(gens + fiber, trans)


def _monomials(gens: Sequence[Generator], max_degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of all monomials of degree <= max_degree."""
    out = []

    def rec(i: int, deg: int, acc: list[int]):
        if i == len(gens):
            out.append(tuple(acc))
            return
        g = gens[i]
        top = 1 if g.kind == "exterior" else (max_degree - deg) // g.degree
        for k in range(top + 1):
            if deg + k * g.degree > max_degree:
                break
            acc.append(k)
            rec(i + 1, deg + k * g.degree, acc)
            acc.pop()

    rec(0, 0, [])
    return out


@dataclass
class KoszulResult:
    p: int
    degree_bound: int
    e2: list[int]
    e_infinity: list[int]
    homology: list[int]
    pages: dict = field(default_factory=dict)  # r -> {(s, t): dim} for nonzero entries

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "degree_bound": self.degree_bound,
            "e2": self.e2,
            "e_infinity": self.e_infinity,
            "homology": self.homology,
            "pages": {
                str(r): [{"s": s, "t": t, "dim": d} for (s, t), d in sorted(pg.items())]
                for r, pg in sorted(self.pages.items())
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def run_koszul(alg: TransgressiveAlgebra, p: int, degree_bound: int) -> KoszulResult:
    """Spectral sequence of the Koszul complex filtered by base degree.

    Returns E_2 and E_infinity graded dimensions in total degrees 0..degree_bound,
    plus every intermediate page.  E_infinity is cross-checked against the
    homology of the whole complex.
    """
    if degree_bound > 2 * p - 3:
        raise ValueError(f"degree bound {degree_bound} exceeds 2p-3 = {2 * p - 3}")
    top = degree_bound + 1
    gens = [g for g in alg.generators if g.degree <= top]
    names = [g.name for g in gens]
    monos = _monomials(gens, top)
    deg = {m: sum(k * g.degree for k, g in zip(m, gens)) for m in monos}
    base_deg = {m: sum(k * g.degree for k, g in zip(m, gens) if g.role == "base") for m in monos}
    by_degree: dict[int, list] = {}
    for m in monos:
        by_degree.setdefault(deg[m], []).append(m)
    for lst in by_degree.values():
        lst.sort(key=lambda m: (base_deg[m], m))
    pos = {n: {m: i for i, m in enumerate(lst)} for n, lst in by_degree.items()}

    trans = [(names.index(a), names.index(b)) for a, b in alg.transgressions.items() if a in names and b in names]

    def differential(n: int) -> np.ndarray:
        src = by_degree.get(n, [])
        tgt = by_degree.get(n + 1, [])
        mat = np.zeros((len(tgt), len(src)), dtype=np.int64)
        for j, m in enumerate(src):
            for gi, (xi, yi) in enumerate(trans):
                if m[xi] == 0:
                    continue
                # sign from moving D past the generators in front of x
                prefix = sum(m[k] * gens[k].degree for k in range(xi))
                coeff = m[xi] * (-1) ** prefix
                new = list(m)
                new[xi] -= 1
                if gens[yi].kind == "exterior" and new[yi]:
                    continue
                # move y from position xi into position yi
                lo, hi = sorted((xi, yi))
                between = sum(new[k] * gens[k].degree for k in range(lo + 1, hi))
                if yi < xi:
                    between += new[xi] * gens[xi].degree
                coeff *= (-1) ** (between * gens[yi].degree)
                new[yi] += 1
                new = tuple(new)
                if new not in pos.get(n + 1, {}):
                    continue
                mat[pos[n + 1][new], j] += coeff
        return mat % p

    dmat = {n: differential(n) for n in range(-1, top + 1)}
    for n in range(0, top):
        prod = linalg.matmul(dmat[n + 1], dmat[n], p) if dmat[n].size and dmat[n + 1].size else None
        if prod is not None and prod.any():  # pragma: no cover - sign bug guard
            raise AssertionError(f"D^2 != 0 in degree {n}")

    max_s = max([base_deg[m] for m in monos] + [0])

    def filt_cols(n: int, s: int) -> list[int]:
        return [i for i, m in enumerate(by_degree.get(n, [])) if base_deg[m] >= s]

    def z_space(n: int, s: int, r: int) -> np.ndarray:
        """Rows spanning Z_r^s in degree n, in full coordinates."""
        cols = filt_cols(n, s)
        size = len(by_degree.get(n, []))
        if not cols:
            return np.zeros((0, size), dtype=np.int64)
        d = dmat[n]
        tgt = by_degree.get(n + 1, [])
        low_rows = [i for i, m in enumerate(tgt) if base_deg[m] < s + r]
        sub = d[np.ix_(low_rows, cols)] if low_rows else np.zeros((0, len(cols)), dtype=np.int64)
        ker = linalg.nullspace(sub, p) if low_rows else np.eye(len(cols), dtype=np.int64)
        full = np.zeros((ker.shape[0], size), dtype=np.int64)
        full[:, cols] = ker
        return full

    def e_dim(n: int, s: int, r: int) -> int:
        size = len(by_degree.get(n, []))
        if size == 0:
            return 0
        z = z_space(n, s, r)
        if z.shape[0] == 0:
            return 0
        z_up = z_space(n, s + 1, r - 1)
        zb = z_space(n - 1, s - r + 1, r - 1) if n >= 1 else np.zeros((0, 0), dtype=np.int64)
        bnd = linalg.matmul(zb, dmat[n - 1].T, p) if zb.shape[0] and dmat[n - 1].size else np.zeros((0, size), dtype=np.int64)
        denom = np.concatenate([z_up, bnd], axis=0)
        return linalg.rank(z, p) - (linalg.rank(denom, p) if denom.shape[0] else 0)

    def fiber_deg(n: int, s: int) -> int:
        return n - s

    pages: dict = {}
    r_last = max_s + 2
    for r in range(2, r_last + 1):
        page = {}
        for n in range(degree_bound + 1):
            for s in sorted({base_deg[m] for m in by_degree.get(n, [])}):
                dim = e_dim(n, s, r)
                if dim:
                    page[(s, fiber_deg(n, s))] = dim
        pages[r] = page
    e2 = [sum(v for (s, t), v in pages[2].items() if s + t == n) for n in range(degree_bound + 1)]
    einf = [sum(v for (s, t), v in pages[r_last].items() if s + t == n) for n in range(degree_bound + 1)]

    homology = []
    for n in range(degree_bound + 1):
        size = len(by_degree.get(n, []))
        rk_out = linalg.rank(dmat[n], p) if dmat[n].size else 0
        rk_in = linalg.rank(dmat[n - 1], p) if n >= 1 and dmat[n - 1].size else 0
        homology.append(size - rk_out - rk_in)
    if homology != einf:  # pragma: no cover - convergence guard
        raise AssertionError(f"E_infinity {einf} does not match homology {homology}")
    return KoszulResult(p, degree_bound, e2, einf, homology, pages)


def exterior_series(degrees: Sequence[int], bound: int) -> list[int]:
    """Graded dimensions of an exterior algebra on the given degrees, 0..bound."""
    coeffs = [0] * (bound + 1)
    coeffs[0] = 1
    for d in degrees:
        for k in range(bound, d - 1, -1):
            coeffs[k] += coeffs[k - d]
    return coeffs
