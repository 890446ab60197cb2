from __future__ import annotations

import numpy as np
import pytest

from stabcoh.linalg import CapExceeded
from stabcoh.oracle import (
    build_rep,
    closure_order,
    gl_gens,
    gl_order,
    gram_semisimple,
    invariants_dim,
    regular_check,
    sl_order,
    specht_invariants,
    standard_recipe,
    symmetric_invariants,
)
from stabcoh.oracle.regular import trace_polynomial
from stabcoh.oracle.symmetric import validate_trace_ideal, young_blocks
from stabcoh.stablering import invariant_monomials, multiplicity

V = {"op": "V"}
GLADJ = {"op": "tensor", "args": [V, {"op": "dual", "arg": V}]}


def _dim(recipe, d, q, group="GL"):
    return invariants_dim(build_rep(recipe, d, q, group))[0]


def _mixed_x(n, m, r):
    return {"op": "tensor", "args": [{"op": "coev_quotient", "n": n, "m": m}, {"op": "X", "degree": 2 * r}]}


def test_generator_closure_orders():
    assert closure_order(gl_gens(1, 5)) == 4
    assert closure_order(gl_gens(2, 3)) == 48 == gl_order(2, 3)
    assert closure_order(gl_gens(2, 3, "SL")) == 24 == sl_order(2, 3)
    assert closure_order(gl_gens(3, 2)) == 168 == gl_order(3, 2)
    assert closure_order(gl_gens(2, 5, "SL")) == 120 == sl_order(2, 5)


def test_module_dimensions():
    for d in (2, 3):
        assert build_rep({"op": "coev_quotient", "n": 1, "m": 1}, d, 5).dim == d * d - 1
        assert build_rep({"op": "X", "degree": 2}, d, 5).dim == d * d - 1
    assert build_rep({"op": "sym", "k": 2, "arg": V}, 3, 5).dim == 6
    assert build_rep({"op": "ext", "k": 2, "arg": V}, 3, 5).dim == 3


def test_specht_with_trivial_shapes_is_the_quotient():
    a = build_rep({"op": "specht", "lambda": [1], "mu": [1], "arg": {"op": "coev_quotient", "n": 1, "m": 1}}, 3, 5)
    b = build_rep({"op": "coev_quotient", "n": 1, "m": 1}, 3, 5)
    assert a.dim == b.dim
    assert _dim(a.recipe, 3, 5) == _dim(b.recipe, 3, 5)


def test_invariant_examples():
    for d in (2, 3):
        assert _dim(GLADJ, d, 5) == 1
        assert _dim(V, d, 5) == 0
    assert _dim({"op": "sym", "k": 2, "arg": GLADJ}, 3, 7) == 2
    assert _dim({"op": "trivial"}, 3, 7) == 1


def test_dense_matches_stable_multiplicity_at_small_d():
    # d = 4 at p = 7 is past the stable bound for these shapes
    assert _dim(standard_recipe((1,), (1,), 2), 4, 7) == multiplicity((1,), (1,), 2, 7)
    assert _dim(standard_recipe((1,), (1,), 0), 4, 7) == 0


def test_cap_is_enforced():
    with pytest.raises(CapExceeded):
        build_rep({"op": "sym", "k": 3, "arg": GLADJ}, 3, 5, cap=50)
    with pytest.raises(ValueError):
        build_rep({"op": "bogus"}, 2, 5)


@pytest.mark.parametrize("n,r", [(0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1)])
@pytest.mark.parametrize("d", [3, 4])
def test_symmetric_engine_matches_dense(n, r, d):
    dense = _dim(_mixed_x(n, n, r), d, 7)
    assert symmetric_invariants(n, n, r, d, 7).dim == dense


@pytest.mark.parametrize("n,r", [(0, 2), (1, 1), (2, 0)])
def test_symmetric_engine_sl_matches_dense(n, r):
    assert symmetric_invariants(n, n, r, 5, 5, "SL").dim == _dim(_mixed_x(n, n, r), 5, 5, "SL")


@pytest.mark.parametrize("size", [1, 2, 3, 6])
def test_symmetric_engine_independent_of_blocks(size):
    want = symmetric_invariants(1, 1, 2, 8, 7).dim
    assert symmetric_invariants(1, 1, 2, 8, 7, block_size=size).dim == want


def test_young_blocks_partition_indices():
    blocks = young_blocks(11, 7)
    assert sorted(i for b in blocks for i in b) == list(range(11))
    assert max(len(b) for b in blocks) <= 6


def test_symmetric_engine_guards():
    assert symmetric_invariants(2, 1, 1, 11, 7).dim == 0
    with pytest.raises(ValueError):
        symmetric_invariants(3, 3, 3, 20, 7)
    with pytest.raises(ValueError):
        symmetric_invariants(1, 1, 2, 5, 7, "SL")
    with pytest.raises(ValueError):
        symmetric_invariants(1, 1, 1, 5, 7, "PGL")


def test_stable_sym_invariants():
    for d in (8, 9):
        got = [symmetric_invariants(0, 0, r, d, 7, coev=False, cquot=False).dim for r in range(4)]
        assert got == [invariant_monomials(r, 7).dim for r in range(4)]


def test_trace_products_span_invariants():
    for r in range(1, 4):
        validate_trace_ideal(r, 8, 7)


def test_specht_invariants_examples():
    assert specht_invariants((1,), (1,), 2, 11, 7) == 1
    assert specht_invariants((1, 1), (1, 1), 4, 11, 7) == 1
    assert specht_invariants((2,), (1, 1), 4, 11, 7) == 0
    assert specht_invariants((1,), (1,), 0, 11, 7) == 0


def test_gram_examples():
    assert gram_semisimple(1, 0, 3, 5).semisimple
    zero = gram_semisimple(1, 1, 0, 5)
    assert not zero.semisimple and zero.radical_dim >= 1
    assert gram_semisimple(1, 1, 3, 5).semisimple


def test_gram_two_one():
    # B_{2,1}(delta) over F_5 degenerates exactly at delta = +-1
    verdicts = {delta: gram_semisimple(2, 1, delta, 5) for delta in range(5)}
    assert [delta for delta, v in verdicts.items() if not v.semisimple] == [1, 4]
    assert verdicts[1].radical_dim == verdicts[4].radical_dim == 3
    assert verdicts[1].dim == 6


def test_gram_guard():
    with pytest.raises(ValueError):
        gram_semisimple(3, 1, 1, 5)


def test_trace_polynomial():
    assert trace_polynomial(1, 2, 5) == {(0,): 1, (3,): 1}
    assert trace_polynomial(2, 2, 5) == {(0, 0): 1, (1, 2): 2, (3, 3): 1}


@pytest.mark.parametrize("k,rmax,d", [(1, 3, 3), (2, 3, 4), (2, 3, 5), (3, 3, 3)])
def test_regular_examples(k, rmax, d):
    verdict = regular_check(k, rmax, d, 5)
    assert verdict.regular
    assert all(src == img for _, _, src, img in verdict.checks)


def test_regular_check_cap():
    with pytest.raises(CapExceeded):
        regular_check(2, 4, 4, 5, cap=100)


def test_matrices_are_invertible_mod_p():
    for g in gl_gens(3, 5):
        assert g.rank() == 3
        assert np.array_equal((g @ g.inverse()).data, np.eye(3, dtype=np.int64))
