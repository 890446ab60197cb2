from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stabcoh.symcore import (
    as_partition,
    chi,
    class_representative,
    class_size,
    compose,
    cycle_type,
    inverse,
    partitions,
    permutations,
    sign,
    specht_dim,
)


def _partition_counts(n):
    # coefficients of prod 1/(1 - t^k), independent of the enumerator
    coeffs = [1] + [0] * n
    for k in range(1, n + 1):
        for i in range(k, n + 1):
            coeffs[i] += coeffs[i - k]
    return coeffs


def test_partition_examples():
    assert partitions(0) == [()]
    assert len(partitions(4)) == 5
    assert partitions(7, "distinct_odd") == [(7,)]
    assert partitions(9, "distinct_odd_min3") == [(9,)]
    assert partitions(5, "parts_positive_count", n=2) == [(4, 1), (3, 2)]


def test_partition_errors():
    with pytest.raises(ValueError):
        partitions(-1)
    with pytest.raises(ValueError):
        partitions(3, "bogus")
    with pytest.raises(ValueError):
        partitions(3, "parts_positive_count")
    with pytest.raises(ValueError):
        as_partition((1, 2))


def test_partition_counts_match_generating_function():
    counts = _partition_counts(15)
    assert [len(partitions(r)) for r in range(16)] == counts


def test_distinct_odd_counts_match_generating_function():
    bound = 25
    coeffs = [1] + [0] * bound
    for i in range(1, bound + 1, 2):
        for k in range(bound, i - 1, -1):
            coeffs[k] += coeffs[k - i]
    assert [len(partitions(r, "distinct_odd")) for r in range(bound + 1)] == coeffs


def test_specht_examples():
    assert specht_dim((4,)) == 1
    assert specht_dim((1, 1, 1)) == 1
    assert specht_dim((2, 1)) == 2
    assert specht_dim((3, 2)) == 5


def test_character_examples():
    assert chi((1, 1), (2,)) == -1
    assert chi((2,), (2,)) == 1
    assert chi((2, 1), (3,)) == -1
    assert chi((2, 1), (1, 1, 1)) == 2


def test_class_size_examples():
    assert class_size((1, 1)) == 1
    assert class_size((2,)) == 1
    assert class_size((3,)) == 2
    assert class_size((2, 2)) == 3


@pytest.mark.parametrize("n", range(1, 7))
def test_sum_of_squared_dimensions(n):
    assert sum(specht_dim(lam) ** 2 for lam in partitions(n)) == math.factorial(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_class_sizes_sum_to_order(n):
    assert sum(class_size(rho) for rho in partitions(n)) == math.factorial(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_character_orthogonality(n):
    parts = partitions(n)
    for lam in parts:
        assert chi(lam, (1,) * n) == specht_dim(lam)
        for mu in parts:
            inner = Fraction(sum(class_size(r) * chi(lam, r) * chi(mu, r) for r in parts), math.factorial(n))
            assert inner == (lam == mu)


@pytest.mark.parametrize("n", range(1, 6))
def test_class_sizes_match_enumeration(n):
    counts = {}
    for perm in permutations(n):
        counts[cycle_type(perm)] = counts.get(cycle_type(perm), 0) + 1
    assert counts == {rho: class_size(rho) for rho in partitions(n)}


@given(st.permutations(list(range(6))), st.permutations(list(range(6))))
def test_permutation_group_laws(a, b):
    a, b = tuple(a), tuple(b)
    assert compose(a, inverse(a)) == tuple(range(6))
    assert sign(compose(a, b)) == sign(a) * sign(b)
    assert cycle_type(compose(a, b)) == cycle_type(compose(b, a))


@settings(max_examples=40)
@given(st.integers(1, 7).flatmap(lambda n: st.sampled_from(partitions(n))))
def test_class_representative_has_its_cycle_type(rho):
    assert cycle_type(class_representative(rho)) == rho
