"""Stable cohomology bases and multiplicities.

All degrees are cohomological: a label x^[i] sits in degree 2i and the class
c_i of the invariant ring sits in degree 2i.  The bases here are the
combinatorial models; the oracle package checks them against honest
invariant computations over finite fields.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

from .diagrams import LabeledBasisElement, labeled_basis
from .symcore import (
    Partition,
    as_partition,
    chi,
    class_size,
    compose,
    cycle_type,
    inverse,
    partitions,
    sign,
    specht_dim,
)


@dataclass(frozen=True)
class GradedBasis:
    """An ordered basis of one graded piece."""

    shape: tuple[int, int]
    degree: int
    elements: tuple = ()
    kind: str = "labeled"

    @property
    def dim(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def to_dict(self) -> dict:
        return {
            "shape": list(self.shape),
            "degree": self.degree,
            "kind": self.kind,
            "dim": self.dim,
            "elements": [_element_json(e) for e in self.elements],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _element_json(e: Any):
    if isinstance(e, LabeledBasisElement):
        return e.to_dict()
    if isinstance(e, tuple):
        return [_element_json(x) for x in e]
    return e


def _half(degree: int) -> int:
    if degree < 0 or degree % 2:
        raise ValueError(f"degree must be a non-negative even integer, got {degree}")
    return degree // 2


def dp_mult(a: int, b: int, p: int) -> tuple[int, int]:
    """x^[a] x^[b] = C(a+b, a) x^[a+b]; returns (coefficient mod p, exponent)."""
    if a < 0 or b < 0:
        raise ValueError("exponents must be non-negative")
    return math.comb(a + b, a) % p, a + b


def ext_basis(ns: int, nt: int, degree: int) -> GradedBasis:
    """Basis of Ext^degree(I^{(x)T}, I^{(x)S}): pairs (ell, sigma) with sum(ell) = degree/2."""
    r = _half(degree)
    if ns != nt:
        return GradedBasis((ns, nt), degree)
    return GradedBasis((ns, nt), degree, tuple(labeled_basis(ns, r)))


def ext_dim(n: int, degree: int) -> int:
    r = _half(degree)
    if n == 0:
        return 1 if r == 0 else 0
    return math.factorial(n) * math.comb(r + n - 1, n - 1)


def invariant_monomials(r: int, p: int) -> GradedBasis:
    """Monomials c_1^{a_1} c_2^{a_2} ... of weight r, one per partition of r."""
    if r >= p:
        raise ValueError(f"need r < p (r={r}, p={p})")
    return GradedBasis((0, 0), 2 * r, tuple(partitions(r)), kind="c-monomial")


def xmod_basis(n: int, m: int, degree: int, p: int | None = None) -> GradedBasis:
    """Basis of the invariants of I^n (x) (I^v)^m (x) X^degree, labels x^[i] for d_i."""
    r = _half(degree)
    if p is not None and r >= p:
        raise ValueError(f"need degree/2 < p (degree={degree}, p={p})")
    return ext_basis(n, m, degree)


def reduced_basis(n: int, m: int, degree: int, p: int | None = None) -> GradedBasis:
    """Basis for the quotient V_[n,m]: every label at least one."""
    full = xmod_basis(n, m, degree, p)
    elems = tuple(e for e in full.elements if all(x >= 1 for x in e.labels))
    return GradedBasis((n, m), degree, elems)


def reduced_dim(n: int, degree: int) -> int:
    r = _half(degree)
    if n == 0:
        return 1 if r == 0 else 0
    if r < n:
        return 0
    return math.factorial(n) * math.comb(r - 1, n - 1)


def sym_invariant_basis(n: int, r: int) -> list[tuple[LabeledBasisElement, Partition]]:
    """Invariants of I^n (x) (I^v)^n (x) Sym^r(I (x) I^v) before dividing by the c_i.

    A basis element is an X-model element with total label j together with a
    c-monomial of weight r - j.
    """
    out = []
    for j in range(r + 1):
        for e in labeled_basis(n, j):
            for lam in partitions(r - j):
                out.append((e, lam))
    return out


def mult_c(i: int, elt: tuple[LabeledBasisElement, Partition]) -> tuple[LabeledBasisElement, Partition]:
    """Multiplication by c_i: adjoin an i-cycle of zero-labeled points."""
    e, lam = elt
    return e, tuple(sorted(lam + (i,), reverse=True))


def bijection_orbits(n: int, r: int, every_cycle_meets_s: bool) -> int:
    """Count Sigma_r-orbits of permutations of S u R (|S| = n, |R| = r).

    The permutation is read as a bijection T u R -> S u R with T identified
    with S.  Sigma_r acts by conjugation on the R points.  With
    ``every_cycle_meets_s`` only permutations whose every cycle contains a
    point of S are counted.  Brute force; keep n + r small.
    """
    size = n + r
    rperms = list(itertools.permutations(range(r)))
    seen = set()
    count = 0
    for pi in itertools.permutations(range(size)):
        if pi in seen:
            continue
        if every_cycle_meets_s and not _cycles_meet(pi, n):
            continue
        count += 1
        for rho in rperms:
            g = tuple(range(n)) + tuple(n + x for x in rho)
            seen.add(compose(compose(g, pi), inverse(g)))
    return count


def _cycles_meet(pi: Sequence[int], n: int) -> bool:
    seen = [False] * len(pi)
    for i in range(len(pi)):
        if seen[i]:
            continue
        hit = False
        j = i
        while not seen[j]:
            seen[j] = True
            hit = hit or j < n
            j = pi[j]
        if not hit:
            return False
    return True


# -- multiplicities ---------------------------------------------------------

def _invariant_label_count(cycle_lengths: tuple[int, ...], r: int) -> int:
    """Labelings constant on cycles, every label >= 1, total r."""

    @lru_cache(maxsize=None)
    def go(i: int, rest: int) -> int:
        if i == len(cycle_lengths):
            return 1 if rest == 0 else 0
        c = cycle_lengths[i]
        return sum(go(i + 1, rest - a * c) for a in range(1, rest // c + 1))

    return go(0, r)


def check_multiplicity_args(lam: Partition, mu: Partition, degree: int, p: int) -> None:
    if sum(lam) + sum(mu) > (p + 1) // 2:
        raise ValueError(f"need |lambda| + |mu| <= (p+1)/2 (p={p})")
    if degree >= 2 * p:
        raise ValueError(f"need degree < 2p (degree={degree}, p={p})")
    _half(degree)


def multiplicity(lam: Sequence[int], mu: Sequence[int], degree: int, p: int) -> int:
    """Multiplicity of S^lam (x) S^mu in the reduced basis of bidegree (|lam|, |mu|).

    Averages chi_lam(tau) chi_mu(upsilon) times the number of basis elements
    fixed by (ell, sigma) -> (ell o tau^-1, tau sigma upsilon^-1).  A fixed
    sigma exists only when tau and upsilon are conjugate, and then there are
    |centraliser| of them, so the double sum collapses to one over classes.
    """
    lam = as_partition(lam)
    mu = as_partition(mu)
    check_multiplicity_args(lam, mu, degree, p)
    n, m = sum(lam), sum(mu)
    if n != m:
        return 0
    r = degree // 2
    total = Fraction(0)
    for rho in partitions(n):
        fixed_labels = _invariant_label_count(rho, r) if n else int(r == 0)
        if not fixed_labels:
            continue
        total += class_size(rho) * chi(lam, rho) * chi(mu, rho) * fixed_labels
    total /= math.factorial(n)
    if total.denominator != 1 or total < 0:  # pragma: no cover - would be a character bug
        raise ArithmeticError(f"non-integral multiplicity {total}")
    return int(total)


def multiplicity_bruteforce(lam: Sequence[int], mu: Sequence[int], degree: int) -> int:
    """Same multiplicity from the explicit permutation action on reduced_basis."""
    lam, mu = as_partition(lam), as_partition(mu)
    n, m = sum(lam), sum(mu)
    if n != m:
        return 0
    basis = reduced_basis(n, m, degree).elements
    index = {e: i for i, e in enumerate(basis)}
    total = 0
    for tau in itertools.permutations(range(n)):
        tinv = inverse(tau)
        for ups in itertools.permutations(range(m)):
            uinv = inverse(ups)
            fixed = 0
            for e in basis:
                labels = tuple(e.labels[tinv[i]] for i in range(n))
                sigma = compose(compose(tau, e.sigma), uinv)
                if index.get(LabeledBasisElement(labels, sigma)) == index[e]:
                    fixed += 1
            total += chi(lam, cycle_type(tau)) * chi(mu, cycle_type(ups)) * fixed
    q, rem = divmod(total, math.factorial(n) * math.factorial(m))
    assert rem == 0
    return q


@dataclass
class MultiplicityTable:
    """Multiplicities keyed by (lambda, mu, degree)."""

    p: int
    entries: dict = field(default_factory=dict)

    def rows(self) -> list[dict]:
        return [
            {"lambda": list(lam), "mu": list(mu), "degree": deg, "multiplicity": v}
            for (lam, mu, deg), v in sorted(self.entries.items(), key=lambda kv: (kv[0][2], sum(kv[0][0]), sum(kv[0][1]), kv[0]))
        ]

    def to_dict(self) -> dict:
        return {"p": self.p, "rows": self.rows()}


def multiplicity_table(max_size: int, degrees: Sequence[int], p: int) -> MultiplicityTable:
    """All (lambda, mu) with |lambda| = |mu| and |lambda| + |mu| <= max_size."""
    table = MultiplicityTable(p)
    for n in range(max_size // 2 + 1):
        for lam in partitions(n):
            for mu in partitions(n):
                for deg in degrees:
                    table.entries[(lam, mu, deg)] = multiplicity(lam, mu, deg, p)
    return table


def isotypic_total(n: int, degree: int, p: int) -> int:
    """sum over (lambda, mu) of dim S^lam dim S^mu times the multiplicity."""
    return sum(
        specht_dim(lam) * specht_dim(mu) * multiplicity(lam, mu, degree, p)
        for lam in partitions(n)
        for mu in partitions(n)
    )


# -- adjoint representation and exterior powers -----------------------------

def sl_adjoint_basis(t: int, degree: int) -> GradedBasis:
    """Stable basis for the cohomology of SL with coefficients in (sl^v)^{(x)t}.

    Pairs (ell, sigma) on t points with no j having ell(j) = 0 and sigma(j) = j.
    """
    r = _half(degree)
    elems = tuple(
        e for e in labeled_basis(t, r)
        if not any(e.labels[j] == 0 and e.sigma[j] == j for j in range(t))
    )
    return GradedBasis((t, t), degree, elems)


def lambda_cohomology(q: int, t: int, p: int) -> GradedBasis:
    """Basis of H^q(SL; Lambda^t[sl^v]) in the stable range, q in {0, 1, 2}.

    q = 0: products of c_i over distinct odd i >= 3 summing to t.
    q = 1: nothing.
    q = 2: e_k times such a product, k >= 2 even, with total t.
    """
    if t >= p:
        raise ValueError(f"need t < p (t={t}, p={p})")
    if q not in (0, 1, 2):
        raise ValueError("q must be 0, 1 or 2")
    if q == 0:
        elems = tuple(partitions(t, "distinct_odd_min3"))
        return GradedBasis((t, t), 0, elems, kind="c-monomial")
    if q == 1:
        return GradedBasis((t, t), 1, (), kind="c-monomial")
    elems = []
    for e in range(2, t + 1, 2):
        for odd in partitions(t - e, "distinct_odd_min3"):
            elems.append((e, odd))
    return GradedBasis((t, t), 2, tuple(elems), kind="e-c-monomial")


def signed_orbit_classes(t: int, total_label: int, sl: bool = True) -> list[tuple[LabeledBasisElement, int]]:
    """Brute-force basis of the sign-twisted coinvariants of Sigma_t on labeled permutations.

    Sigma_t acts on (ell, sigma) by relabeling both; an orbit survives in the
    sign coinvariants iff its stabiliser is even.  With ``sl`` the orbits
    containing an unlabeled fixed point are dropped (passage from gl to sl).
    Returns (orbit representative, orbit size) in canonical order.
    """
    perms = list(itertools.permutations(range(t)))
    seen = set()
    out = []
    for e in labeled_basis(t, total_label):
        if e in seen:
            continue
        orbit = set()
        odd_stab = False
        for pi in perms:
            pinv = inverse(pi)
            img = LabeledBasisElement(
                tuple(e.labels[pinv[i]] for i in range(t)),
                compose(compose(pi, e.sigma), pinv),
            )
            orbit.add(img)
            if img == e and sign(pi) < 0:
                odd_stab = True
        seen |= orbit
        if odd_stab:
            continue
        if sl and any(e.labels[j] == 0 and e.sigma[j] == j for j in range(t)):
            continue
        out.append((min(orbit), len(orbit)))
    return out


def lambda_poincare_h0(bound: int) -> list[int]:
    """Coefficients of prod over odd i >= 3 of (1 + t^i), degrees 0 .. bound-1."""
    coeffs = [0] * bound
    if bound:
        coeffs[0] = 1
    for i in range(3, bound, 2):
        for k in range(bound - 1, i - 1, -1):
            coeffs[k] += coeffs[k - i]
    return coeffs
