from __future__ import annotations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from stabcoh import arith
from stabcoh.arith import (
    BernoulliCache,
    bernoulli_mod,
    bernoulli_series_mod,
    completed_ring,
    congruence_ring,
    exceptions,
    is_prime,
    poincare,
)

PRIMES = [p for p in range(5, 200) if sympy.isprime(p)]
IRREGULAR = [37, 59, 67, 101, 103, 131, 149, 157]


def _sympy_mod(m, p):
    b = sympy.bernoulli(m)
    return int(b.p) * pow(int(b.q), -1, p) % p


def test_bernoulli_examples():
    assert bernoulli_mod(2, 7) == 6
    assert bernoulli_mod(4, 7) == 3
    assert bernoulli_mod(32, 37) == 0


@pytest.mark.parametrize("p", PRIMES)
def test_bernoulli_matches_series_and_exact_values(p):
    series = bernoulli_series_mod(p)
    for m in range(2, p - 2, 2):
        got = bernoulli_mod(m, p)
        assert got == series[m]
        assert got == _sympy_mod(m, p)


def test_primality():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(2124679) and not is_prime(2124679 * 3)


def test_irregular_primes_below_200():
    found = [p for p in PRIMES if exceptions(p).exceptional_k]
    assert found == IRREGULAR


@pytest.mark.parametrize("p", IRREGULAR)
def test_irregular_indices_match_exact_zero_set(p):
    rep = exceptions(p)
    zeros = tuple(m for m in range(2, p - 2, 2) if sympy.bernoulli(m).p % p == 0)
    assert rep.irregular_indices == zeros
    assert rep.vandiver_assumed


def test_exception_examples():
    assert exceptions(5).exceptional_k == ()
    assert exceptions(37).exceptional_k == (5,)
    rep = exceptions(16843, "targeted")
    assert rep.exceptional_k == (3,)
    assert len(rep.sample) == arith.SAMPLE_SIZE


def test_exception_errors():
    with pytest.raises(ValueError):
        exceptions(15)
    with pytest.raises(ValueError):
        exceptions(16843, "full", scan_cap=1000)
    with pytest.raises(ValueError):
        exceptions(37, "targeted", candidates=[4])
    with pytest.raises(ValueError):
        exceptions(37, "sideways")


def test_targeted_sample_is_reproducible():
    a = exceptions(101, "targeted", candidates=[], seed=3, sample_size=10)
    b = exceptions(101, "targeted", candidates=[], seed=3, sample_size=10)
    assert a.sample == b.sample and len(a.sample) == 10


def test_parallel_scan_matches_serial():
    assert exceptions(157, workers=4).exceptional_k == exceptions(157).exceptional_k


def test_completed_ring_examples():
    ring = completed_ring(37, 37)
    assert ring.degrees("polynomial") == [2, 6, 8, 10, 14, 18, 22, 26, 30, 34]
    assert [g for g in ring.generators if g[0].startswith("y")] == [("y8", 8, "polynomial"), ("y9", 9, "exterior")]
    assert completed_ring(16843, 16843, exceptions(16843, "targeted")).degrees("exterior") == [5]


def test_regular_ring_is_the_x_family():
    for p in (5, 7, 11, 13, 17):
        ring = completed_ring(p, p)
        assert ring.generators == [(f"x{d}", d, "polynomial") for d in range(2, p, 4)]
        assert ring.flags["regular_prime"] and not ring.flags["vandiver_assumed"]


def test_completed_ring_guards():
    with pytest.raises(ValueError):
        completed_ring(37, 38)
    with pytest.raises(ValueError):
        completed_ring(9)


def test_congruence_ring_examples():
    assert poincare(congruence_ring(3, 2), 2) == [1, 3, 4]
    assert poincare(congruence_ring(5, 2), 4) == [1, 3, 4, 4, 4]
    big = congruence_ring(37, 4, 2)
    assert {"y8", "y9"} <= {g[0] for g in big.generators}
    assert big.generators == congruence_ring(37, 4, 1).generators
    with pytest.raises(ValueError):
        congruence_ring(5, 2, 0)


def test_poincare_examples():
    empty = arith.RingPresentation(7, 7, [])
    assert poincare(empty, 6) == [1, 0, 0, 0, 0, 0, 0]
    with pytest.raises(ValueError):
        poincare(empty, 7)


@settings(max_examples=30)
@given(st.sampled_from([5, 7, 11, 13, 37]), st.integers(1, 5))
def test_degree_one_coefficient(p, n):
    assert poincare(congruence_ring(p, n), 1)[1] == n * n - 1


@settings(max_examples=40)
@given(
    st.lists(st.tuples(st.integers(1, 9), st.booleans()), max_size=5),
    st.integers(1, 9),
    st.booleans(),
)
def test_poincare_monotone_under_new_generators(gens, d, ext):
    def pres(extra):
        out = [(f"g{i}", deg if not e else deg | 1, "exterior" if e else "polynomial")
               for i, (deg, e) in enumerate(gens)]
        return arith.RingPresentation(11, 11, out + extra)

    base = poincare(pres([]), 10)
    kind = "exterior" if ext else "polynomial"
    more = poincare(pres([("new", d, kind)]), 10)
    assert all(b <= m for b, m in zip(base, more))


def test_cache_round_trip(tmp_path, monkeypatch):
    path = tmp_path / "b.json"
    cache = BernoulliCache(path)
    rep = exceptions(37, cache=cache)
    assert path.exists()
    fresh = BernoulliCache(path)
    assert fresh.get(37, 32) == 0
    assert exceptions(37, cache=fresh).exceptional_k == rep.exceptional_k
    monkeypatch.setenv(arith.CACHE_ENV, str(tmp_path / "env"))
    assert BernoulliCache().path == tmp_path / "env" / "bernoulli.json"


def test_cache_ignores_other_versions(tmp_path):
    path = tmp_path / "b.json"
    path.write_text('{"version": "old", "values": {"37:32": 5}}')
    assert BernoulliCache(path).get(37, 32) is None


def test_primality_matches_sympy():
    assert all(is_prime(n) == sympy.isprime(n) for n in range(20000))
    assert all(is_prime(n) == sympy.isprime(n) for n in range(10**9, 10**9 + 2000))
