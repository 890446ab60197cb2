from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stabcoh.ssengine import (
    BigradedElement,
    Generator,
    TransgressiveAlgebra,
    d2_apply,
    d2_injectivity,
    exterior_series,
    regular_prime_family,
    run_koszul,
)

el = BigradedElement


def test_d2_examples():
    assert d2_apply(el.c(3, p=13)) == el.e(2, p=13, coeff=3)
    assert d2_apply(el.c(5, p=13)) == el.e(4, p=13, coeff=5)
    assert d2_apply(el.c(3, 5, p=13)) == el.e(2, 5, p=13, coeff=3) - el.e(4, 3, p=13, coeff=5)


def test_d2_vanishes_mod_p_on_multiples_of_p():
    assert d2_apply(el.c(7, p=7)).is_zero()


def test_d2_rejects_second_column():
    with pytest.raises(ValueError):
        d2_apply(el.e(2, p=7))


def test_element_validation():
    with pytest.raises(ValueError):
        el.c(4, p=7)
    with pytest.raises(ValueError):
        el.e(3, p=7)
    assert el.c(3, 3, p=7).is_zero()
    assert el.c(5, 3, p=7) == el.c(3, 5, p=7, coeff=-1)


odd_sets = st.sets(st.sampled_from([3, 5, 7, 9, 11]), max_size=3)


@settings(max_examples=60)
@given(odd_sets, odd_sets, st.integers(1, 12), st.integers(1, 12))
def test_d2_leibniz(a_idx, b_idx, ca, cb):
    p = 13
    a = el.c(*sorted(a_idx), p=p, coeff=ca)
    b = el.c(*sorted(b_idx), p=p, coeff=cb)
    sign = (-1) ** a.fiber_degree
    assert d2_apply(a * b) == d2_apply(a) * b + (a * d2_apply(b)).scale(sign)


def test_injectivity_examples():
    rep = d2_injectivity(7)
    assert rep.injective and rep.witness is None
    assert [row["rank"] for row in rep.degree_dims if row["t"] in (3, 5)] == [1, 1]
    rep13 = d2_injectivity(13)
    assert rep13.injective
    assert next(r for r in rep13.degree_dims if r["t"] == 8) == {"t": 8, "source_dim": 1, "target_dim": 2, "rank": 1}
    assert all(row["source_dim"] == 0 for row in d2_injectivity(3).degree_dims)


@pytest.mark.parametrize("p", [q for q in range(3, 101) if all(q % d for d in range(2, q))])
def test_injectivity_below_100(p):
    assert d2_injectivity(p).injective


def test_koszul_without_transgressions_is_e2():
    gens = [Generator("y3", 3, "exterior"), Generator("x2", 2, "polynomial", "fiber")]
    res = run_koszul(TransgressiveAlgebra(gens), 11, 12)
    assert res.e_infinity == res.e2
    assert res.e2[:7] == [1, 0, 1, 1, 1, 1, 1]


def test_koszul_single_pair_is_acyclic():
    gens = [Generator("y3", 3, "exterior"), Generator("x2", 2, "polynomial", "fiber")]
    res = run_koszul(TransgressiveAlgebra(gens, {"x2": "y3"}), 11, 12)
    assert res.e_infinity == [1] + [0] * 12


@pytest.mark.parametrize("p", [13, 17, 19])
def test_regular_prime_family_abuts_to_exterior_algebra(p):
    res = run_koszul(regular_prime_family(20), p, 20)
    assert res.e_infinity == exterior_series([5, 9, 13, 17], 20)
    assert res.homology == res.e_infinity


def test_koszul_bound_guard():
    with pytest.raises(ValueError):
        run_koszul(regular_prime_family(20), 7, 20)


def test_transgression_validation():
    gens = [Generator("y3", 3, "exterior"), Generator("x4", 4, "polynomial", "fiber")]
    with pytest.raises(ValueError):
        TransgressiveAlgebra(gens, {"x4": "y3"})
    with pytest.raises(ValueError):
        Generator("y2", 2, "exterior").__class__("bad", 0, "exterior")


def test_exterior_series():
    assert exterior_series([1, 1, 1], 4) == [1, 3, 3, 1, 0]
