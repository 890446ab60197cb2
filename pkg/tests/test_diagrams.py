from __future__ import annotations

import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stabcoh.diagrams import (
    FpCombination,
    LabeledBasisElement,
    WalledDiagram,
    act_labeled,
    all_diagrams,
    compose_wbr,
    delta,
    evaluation_diagram,
    labeled_basis,
    uwbr_action,
    uwbr_diagram,
)

P = 7
CAP = WalledDiagram((1, 1), (0, 0), cap=[(0, 0)])
CUP = WalledDiagram((0, 0), (1, 1), cup=[(0, 0)])
E = WalledDiagram((1, 1), (1, 1), cap=[(0, 0)], cup=[(0, 0)])


def _el(labels, sigma):
    return LabeledBasisElement(tuple(labels), tuple(sigma))


def test_identity_composition():
    ident = WalledDiagram.identity(2, 1)
    assert compose_wbr(ident, ident, 3, P) == (1, ident)


def test_cap_cup_compositions():
    # cap then cup closes no circle; cup then cap closes one
    assert compose_wbr(CAP, CUP, 5, P) == (1, E)
    assert compose_wbr(CUP, CAP, 5, P) == (5, WalledDiagram((0, 0), (0, 0)))
    assert compose_wbr(E, E, 5, P) == (5, E)


def test_crossings_compose_to_identity():
    swap = WalledDiagram((2, 0), (2, 0), [(0, 1), (1, 0)])
    assert compose_wbr(swap, swap, 4, P) == (1, WalledDiagram.identity(2, 0))


def test_composition_rejects_mismatched_shapes():
    with pytest.raises(ValueError):
        compose_wbr(CAP, CAP, 1, P)


def test_invalid_diagram_rejected():
    with pytest.raises(ValueError):
        WalledDiagram((1, 1), (1, 1), [(0, 0)], [])


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)])
def test_diagram_counts(n, m):
    # walled Brauer algebra dimension is (n + m)!
    assert len(all_diagrams((n, m), (n, m))) == math.factorial(n + m)


def test_composition_is_associative():
    shapes = [(2, 1), (2, 1), (2, 1), (2, 1)]
    ds = all_diagrams(shapes[0], shapes[1])
    for a, b, c in itertools.product(ds[::2], ds[1::2], ds[::3]):
        cab, ab = compose_wbr(a, b, 3, P)
        left_c, left = compose_wbr(ab, c, 3, P)
        cbc, bc = compose_wbr(b, c, 3, P)
        right_c, right = compose_wbr(a, bc, 3, P)
        assert left == right
        assert cab * left_c % P == cbc * right_c % P


def test_closing_strand_examples():
    dim_v = 5
    x0 = FpCombination.single(_el([0], [0]), P)
    assert act_labeled(CAP, x0, dim_v) == FpCombination.single(_el([], []), P, dim_v)
    x2 = FpCombination.single(_el([2], [0]), P)
    assert act_labeled(CAP, x2, dim_v).is_zero()


def test_merging_strands_multiplies_labels():
    x = FpCombination.single(_el([1, 1], [1, 0]), P)
    got = act_labeled(evaluation_diagram(2, 0, 0), x, 5)
    assert got == FpCombination.single(_el([2], [0]), P, 2)


def test_delta_examples():
    assert delta(0, 0, _el([0], [0]), 5, P) == FpCombination.single(_el([], []), P, 5)
    assert delta(0, 0, _el([2], [0]), 5, P).is_zero()
    assert delta(0, 1, _el([1, 1], [0, 1]), 5, P) == FpCombination.single(_el([2], [0]), P, 2)


def test_delta_rejects_points_outside_shape():
    with pytest.raises(ValueError):
        delta(2, 0, _el([0, 0], [0, 1]), 5, P)


@settings(max_examples=150, deadline=None)
@given(
    st.integers(1, 4).flatmap(
        lambda n: st.tuples(
            st.lists(st.integers(0, 3), min_size=n, max_size=n),
            st.permutations(list(range(n))),
            st.integers(0, n - 1),
            st.integers(0, n - 1),
        )
    ),
    st.integers(0, 10),
)
def test_delta_agrees_with_diagram_action(data, dim_v):
    labels, sigma, s, t = data
    x = _el(labels, sigma)
    want = act_labeled(evaluation_diagram(len(labels), s, t), FpCombination.single(x, P), dim_v)
    assert delta(s, t, x, dim_v, P) == want


def test_upward_action_matches_diagram():
    x = _el([1, 0], [1, 0])
    f, g, m = {0: 2, 1: 0}, {0: 1, 1: 2}, {1: 0}
    want = FpCombination.single(uwbr_action(f, g, m, 3, x), P)
    assert act_labeled(uwbr_diagram(f, g, m, 2, 3), FpCombination.single(x, P), 5) == want


def test_labeled_basis_size():
    assert len(labeled_basis(2, 1)) == 4
    assert len(labeled_basis(3, 2)) == 6 * math.comb(4, 2)


def test_diagram_json_round_trip():
    for w in all_diagrams((2, 1), (1, 2)):
        assert WalledDiagram.from_dict(w.to_dict()) == w
    assert E.to_json() == (
        '{"cap": [[0, 0]], "cup": [[0, 0]], "source": [1, 1], '
        '"target": [1, 1], "through_left": [], "through_right": []}'
    )
