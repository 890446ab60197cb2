"""Acceptance battery shared by the CLI ``verify`` subcommand."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from math import comb, factorial
from typing import Callable

from . import arith, diagrams, ssengine, stablering
from .oracle import gram_semisimple, specht_invariants, symmetric_invariants
from .symcore import partitions

LEVELS = ("fast", "full")


@dataclass
class CheckResult:
    name: str
    passed: bool
    seconds: float
    detail: str = ""


@dataclass
class SuiteReport:
    level: str
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "passed": self.passed,
            "checks": [
                {"name": r.name, "passed": r.passed, "seconds": round(r.seconds, 3), "detail": r.detail}
                for r in self.results
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def check_irregular(level: str) -> tuple[bool, str]:
    notes = []
    ok = True
    r37 = arith.exceptions(37)
    ok &= r37.exceptional_k == (5,)
    y37 = [d for name, d, _ in arith.completed_ring(37, 37, r37).generators if name.startswith("y")]
    ok &= y37 == [8, 9]
    notes.append(f"37: {list(r37.exceptional_k)} y-degrees {y37}")
    targets = [(16843, (3,), [4, 5])]
    if level == "full":
        targets.append((2124679, (3, 1422781), [4, 5, 1403794, 1403795]))
    for p, exc, ys in targets:
        rep = arith.exceptions(p, "targeted")
        pres = arith.completed_ring(p, p, rep)
        got = [d for name, d, _ in pres.generators if name.startswith("y")]
        kinds = {d: k for name, d, k in pres.generators if name.startswith("y")}
        kinds_ok = all(kinds[d] == ("polynomial" if d % 2 == 0 else "exterior") for d in got)
        ok &= rep.exceptional_k == exc and got == ys and kinds_ok and len(rep.sample) == arith.SAMPLE_SIZE
        notes.append(f"{p}: {list(rep.exceptional_k)} y-degrees {got}")
    return ok, "; ".join(notes)


def check_theorem_b(level: str) -> tuple[bool, str]:
    p, d = 7, 11
    size = 4 if level == "full" else 2
    bad = []
    count = 0
    for n in range(size + 1):
        for m in range(size + 1 - n):
            for lam in partitions(n):
                for mu in partitions(m):
                    for deg in (0, 2, 4, 6):
                        want = stablering.multiplicity(lam, mu, deg, p)
                        got = specht_invariants(lam, mu, deg, d, p)
                        count += 1
                        if got != want:
                            bad.append((lam, mu, deg, got, want))
                        if n + m <= 2 and level == "full":
                            nxt = specht_invariants(lam, mu, deg, d + p, p)
                            count += 1
                            if nxt != got:
                                bad.append((lam, mu, deg, "d+p", nxt, got))
    return not bad, f"{count} comparisons" + (f", mismatches {bad}" if bad else "")


def check_stable_bases(level: str) -> tuple[bool, str]:
    bad = []
    for n in range(1, 5):
        for r in range(7):
            got = stablering.ext_basis(n, n, 2 * r).dim
            if got != factorial(n) * comb(r + n - 1, n - 1):
                bad.append(("ext", n, r, got))
    p = 7
    for r in range(p):
        if stablering.invariant_monomials(r, p).dim != len(partitions(r)):
            bad.append(("monomials", r))
    for d in (8, 9):
        for r in range(4):
            got = symmetric_invariants(0, 0, r, d, p, coev=False, cquot=False).dim
            if got != stablering.invariant_monomials(r, p).dim:
                bad.append(("oracle", d, r, got))
    return not bad, "ok" if not bad else str(bad)


def check_delta(level: str) -> tuple[bool, str]:
    p = 7
    count = 0
    for n in range(1, 4):
        for total in range(2 * n + 1):
            for x in diagrams.labeled_basis(n, total):
                if max(x.labels, default=0) > 2:
                    continue
                for s in range(n):
                    for t in range(n):
                        lhs = diagrams.delta(s, t, x, 5, p)
                        rhs = diagrams.act_labeled(diagrams.evaluation_diagram(n, s, t),
                                                   diagrams.FpCombination.single(x, p), 5)
                        count += 1
                        if lhs != rhs:
                            return False, f"mismatch at {x} ({s},{t})"
    return True, f"{count} cases"


def check_d2(level: str) -> tuple[bool, str]:
    bound = 100 if level == "full" else 40
    primes = [q for q in range(3, bound) if arith.is_prime(q)]
    failing = [q for q in primes if not ssengine.d2_injectivity(q).injective]
    el = ssengine.BigradedElement
    x = ssengine.d2_apply(el.c(3, 5, p=13))
    want = el.e(2, 5, p=13, coeff=3) + el.e(4, 3, p=13, coeff=-5)
    ok = not failing and x == want and not x.is_zero()
    return ok, f"{len(primes)} primes, failing {failing}; d2(c3 c5) = {x}"


def check_koszul(level: str) -> tuple[bool, str]:
    bound = 20
    bad = []
    for p in ((13, 17, 19, 23) if level == "full" else (13,)):
        res = ssengine.run_koszul(ssengine.regular_prime_family(bound), p, bound)
        want = ssengine.exterior_series(range(5, bound + 2, 4), bound)
        if res.e_infinity != want:
            bad.append(p)
    return not bad, "ok" if not bad else f"mismatch at {bad}"


def check_lambda(level: str) -> tuple[bool, str]:
    bad = []
    for p in (q for q in range(3, 24) if arith.is_prime(q)):
        for t in range(p):
            if stablering.lambda_cohomology(1, t, p).dim:
                bad.append(("H1", t, p))
        series = [stablering.lambda_cohomology(0, t, p).dim for t in range(p)]
        if series != stablering.lambda_poincare_h0(p):
            bad.append(("H0", p))
        for t in range(p):
            count = sum(1 for k in range(2, t + 1, 2) for odd in _distinct_odd(t - k))
            if stablering.lambda_cohomology(2, t, p).dim != count:
                bad.append(("H2", t, p))
    return not bad, "ok" if not bad else str(bad)


def _distinct_odd(n: int) -> list[tuple[int, ...]]:
    """Sets of distinct odd integers >= 3 with sum n (direct subset search)."""
    odds = list(range(3, n + 1, 2))
    out = []
    for mask in range(1 << len(odds)):
        chosen = tuple(o for i, o in enumerate(odds) if mask >> i & 1)
        if sum(chosen) == n:
            out.append(chosen)
    return out


def check_gram(level: str) -> tuple[bool, str]:
    ok = True
    for p in (5, 7):
        for delta in range(p):
            ok &= gram_semisimple(1, 1, delta, p).semisimple == (delta != 0)
        ok &= gram_semisimple(1, 1, (p + 1) // 2, p).semisimple
    return ok, "B_{1,1} verdicts"


def check_poincare(level: str) -> tuple[bool, str]:
    got = arith.poincare(arith.congruence_ring(5, 2), 4)
    return got == [1, 3, 4, 4, 4], str(got)


CHECKS: list[tuple[str, Callable[[str], tuple[bool, str]]]] = [
    ("irregular primes", check_irregular),
    ("theorem-b oracle", check_theorem_b),
    ("stable basis dimensions", check_stable_bases),
    ("delta vs diagram action", check_delta),
    ("d2 injectivity", check_d2),
    ("regular-prime spectral sequence", check_koszul),
    ("lambda cohomology", check_lambda),
    ("semisimplicity", check_gram),
    ("poincare series", check_poincare),
]


def verify_suite(level: str = "fast", progress: Callable[[CheckResult], None] | None = None) -> SuiteReport:
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    report = SuiteReport(level)
    for name, fn in CHECKS:
        start = time.perf_counter()
        try:
            ok, detail = fn(level)
        except Exception as exc:  # a crashing check is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        res = CheckResult(name, bool(ok), time.perf_counter() - start, detail)
        report.results.append(res)
        if progress is not None:
            progress(res)
    return report
