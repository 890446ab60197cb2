"""Explicit matrix representations of GL_d(F_p) built from a recipe tree.

Recipes are JSON-like dicts with an "op" key:

    {"op": "V"}                          the natural representation
    {"op": "trivial"}
    {"op": "dual", "arg": R}
    {"op": "tensor", "args": [R, ...]}
    {"op": "sym", "k": k, "arg": R}
    {"op": "ext", "k": k, "arg": R}
    {"op": "mixed", "n": n, "m": m}      V^{(x)n} (x) (V^v)^{(x)m} with its slot action
    {"op": "coev_quotient", "n": n, "m": m}
    {"op": "sl"}                         V (x) V^v modulo the coevaluation
    {"op": "X", "degree": i}             Sym^{i/2}(V (x) V^v) modulo positive-degree invariants
    {"op": "specht", "lambda": [...], "mu": [...], "arg": R}

``specht`` needs an argument carrying a slot action (mixed or coev_quotient,
possibly tensored on the right with other modules).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .. import linalg
from ..linalg import DEFAULT_CAP, CapExceeded, MatrixModP
from ..symcore import as_partition, sign
from .groups import gl_gens

GEN_NAMES = ("torus", "transvection", "cycle", "swap")


@dataclass
class RepresentedModule:
    """A finite-dimensional representation given by generator matrices."""

    p: int
    dim: int
    action: dict[str, MatrixModP]
    recipe: dict
    slots: tuple[int, int] | None = None
    slot_matrix: Callable | None = field(default=None, repr=False)

    def matrices(self) -> list[np.ndarray]:
        return [m.data for m in self.action.values()]


class _Ctx:
    def __init__(self, d: int, q: int, group: str, cap: int):
        self.d, self.p, self.group, self.cap = d, q, group, cap
        gens = gl_gens(d, q, group)
        self.names = GEN_NAMES[: len(gens)] if d > 1 else ("torus",)
        self.gens = [g.data for g in gens]

    def check(self, dim: int) -> None:
        if dim > self.cap:
            raise CapExceeded(f"module dimension {dim} exceeds cap {self.cap}")


def _module(ctx: _Ctx, mats: list[np.ndarray], recipe: dict, slots=None, slot_matrix=None) -> RepresentedModule:
    dim = mats[0].shape[0] if mats else 0
    action = {name: MatrixModP(ctx.p, m) for name, m in zip(ctx.names, mats)}
    return RepresentedModule(ctx.p, dim, action, recipe, slots, slot_matrix)


def build_rep(recipe: dict, d: int, q: int, group: str = "GL", cap: int = DEFAULT_CAP) -> RepresentedModule:
    """Build the representation described by ``recipe`` for GL_d(F_q) or SL_d(F_q)."""
    ctx = _Ctx(d, q, group, cap)
    return _build(recipe, ctx)


def _build(recipe: dict, ctx: _Ctx) -> RepresentedModule:
    op = recipe.get("op")
    p = ctx.p
    if op == "V":
        return _module(ctx, [g % p for g in ctx.gens], recipe)
    if op == "trivial":
        return _module(ctx, [np.ones((1, 1), dtype=np.int64) for _ in ctx.gens], recipe)
    if op == "dual":
        inner = _build(recipe["arg"], ctx)
        return _module(ctx, [linalg.inverse(m, p).T.copy() for m in inner.matrices()], recipe)
    if op == "tensor":
        parts = [_build(r, ctx) for r in recipe["args"]]
        ctx.check(math.prod(x.dim for x in parts))
        mats = []
        for k in range(len(ctx.gens)):
            acc = np.ones((1, 1), dtype=np.int64)
            for x in parts:
                acc = np.kron(acc, x.matrices()[k]) % p
            mats.append(acc)
        slots, slot_matrix = None, None
        if parts[0].slots is not None:
            rest = math.prod(x.dim for x in parts[1:])
            first = parts[0]
            slots = first.slots
            slot_matrix = lambda pi, rho: np.kron(first.slot_matrix(pi, rho), np.eye(rest, dtype=np.int64))
        return _module(ctx, mats, recipe, slots, slot_matrix)
    if op == "sym":
        inner = _build(recipe["arg"], ctx)
        k = int(recipe["k"])
        if k >= p:
            raise ValueError("symmetric powers need k < p")
        basis = list(itertools.combinations_with_replacement(range(inner.dim), k))
        ctx.check(len(basis))
        return _module(ctx, [_sym_matrix(m, basis, p) for m in inner.matrices()], recipe)
    if op == "ext":
        inner = _build(recipe["arg"], ctx)
        k = int(recipe["k"])
        basis = list(itertools.combinations(range(inner.dim), k))
        ctx.check(len(basis))
        return _module(ctx, [_ext_matrix(m, basis, p) for m in inner.matrices()], recipe)
    if op == "mixed":
        return _mixed(int(recipe["n"]), int(recipe["m"]), ctx, recipe)
    if op == "sl":
        return _with_recipe(_build({"op": "coev_quotient", "n": 1, "m": 1}, ctx), recipe)
    if op == "coev_quotient":
        n, m = int(recipe["n"]), int(recipe["m"])
        full = _mixed(n, m, ctx, recipe)
        rel = _coev_relations(n, m, ctx.d, p)
        return _quotient(full, rel, ctx, recipe)
    if op == "X":
        return _x_module(int(recipe["degree"]), ctx, recipe)
    if op == "specht":
        lam = as_partition(recipe.get("lambda", []))
        mu = as_partition(recipe.get("mu", []))
        if sum(lam) >= p or sum(mu) >= p:
            raise ValueError("Specht projection needs |lambda|, |mu| < p")
        inner = _build(recipe["arg"], ctx)
        if inner.slots != (sum(lam), sum(mu)):
            raise ValueError(f"Specht shapes {lam}, {mu} do not match slots {inner.slots}")
        e = young_operator(inner, lam, mu)
        return _image(inner, e, ctx, recipe)
    raise ValueError(f"unknown recipe op {op!r}")


def _with_recipe(mod: RepresentedModule, recipe: dict) -> RepresentedModule:
    mod.recipe = recipe
    return mod


def _mixed(n: int, m: int, ctx: _Ctx, recipe: dict) -> RepresentedModule:
    d, p = ctx.d, ctx.p
    dim = d ** (n + m)
    ctx.check(dim)
    mats = []
    for g in ctx.gens:
        gd = linalg.inverse(g, p).T.copy()
        acc = np.ones((1, 1), dtype=np.int64)
        for _ in range(n):
            acc = np.kron(acc, g) % p
        for _ in range(m):
            acc = np.kron(acc, gd) % p
        mats.append(acc)

    def slot_matrix(pi, rho):
        perm = tuple(pi) + tuple(n + x for x in rho)
        return _slot_perm_matrix(perm, d, n + m)

    return _module(ctx, mats, recipe, (n, m), slot_matrix)


def _slot_perm_matrix(perm: tuple[int, ...], d: int, k: int) -> np.ndarray:
    """Permutation of tensor slots: the factor in slot i moves to slot perm[i]."""
    dim = d**k
    mat = np.zeros((dim, dim), dtype=np.int64)
    for idx in itertools.product(range(d), repeat=k):
        new = [0] * k
        for i, x in enumerate(idx):
            new[perm[i]] = x
        src = _flat(idx, d)
        dst = _flat(new, d)
        mat[dst, src] = 1
    return mat


def _flat(idx, d: int) -> int:
    out = 0
    for x in idx:
        out = out * d + x
    return out


def _coev_relations(n: int, m: int, d: int, p: int) -> np.ndarray:
    """Images of all coevaluation insertions in V^{(x)n} (x) (V^v)^{(x)m}."""
    if n == 0 or m == 0:
        return np.zeros((0, d ** (n + m)), dtype=np.int64)
    rows = []
    for a in range(n):
        for b in range(m):
            for rest in itertools.product(range(d), repeat=n + m - 2):
                vec = np.zeros(d ** (n + m), dtype=np.int64)
                for i in range(d):
                    idx = list(rest)
                    idx.insert(a, i)
                    idx.insert(n + b, i)
                    vec[_flat(idx, d)] += 1
                rows.append(vec % p)
    return np.array(rows, dtype=np.int64)


def _quotient(mod: RepresentedModule, rel: np.ndarray, ctx: _Ctx, recipe: dict) -> RepresentedModule:
    p = ctx.p
    if rel.shape[0] == 0:
        mod.recipe = recipe
        return mod
    r, piv = linalg.rref(rel, p)
    r = r[: len(piv)]
    free = [c for c in range(mod.dim) if c not in set(piv)]

    def reduce(mat: np.ndarray) -> np.ndarray:
        top = mat[np.ix_(free, free)]
        corr = linalg.matmul(r[:, free].T, mat[np.ix_(piv, free)], p)
        return (top - corr) % p

    mats = [reduce(m) for m in mod.matrices()]
    slot_matrix = None
    if mod.slot_matrix is not None:
        inner = mod.slot_matrix
        slot_matrix = lambda pi, rho: reduce(inner(pi, rho))
    return _module(ctx, mats, recipe, mod.slots, slot_matrix)


def _image(mod: RepresentedModule, e: np.ndarray, ctx: _Ctx, recipe: dict) -> RepresentedModule:
    p = ctx.p
    b = linalg.row_space(e.T, p)
    if b.shape[0] == 0:
        return _module(ctx, [np.zeros((0, 0), dtype=np.int64) for _ in ctx.gens], recipe)
    _, piv = linalg.rref(b, p)
    mats = [linalg.matmul(m, b.T, p)[piv, :] for m in mod.matrices()]
    return _module(ctx, mats, recipe)


def _sym_matrix(m: np.ndarray, basis: list[tuple[int, ...]], p: int) -> np.ndarray:
    index = {mono: i for i, mono in enumerate(basis)}
    cols = [{l: int(v) for l, v in enumerate(m[:, i]) if v} for i in range(m.shape[1])]
    out = np.zeros((len(basis), len(basis)), dtype=np.int64)
    for j, mono in enumerate(basis):
        poly = {(): 1}
        for i in mono:
            nxt: dict = {}
            for key, c in poly.items():
                for l, v in cols[i].items():
                    k2 = tuple(sorted(key + (l,)))
                    nxt[k2] = (nxt.get(k2, 0) + c * v) % p
            poly = nxt
        for key, c in poly.items():
            if c:
                out[index[key], j] = c
    return out


def _ext_matrix(m: np.ndarray, basis: list[tuple[int, ...]], p: int) -> np.ndarray:
    out = np.zeros((len(basis), len(basis)), dtype=np.int64)
    for j, cols in enumerate(basis):
        for i, rows in enumerate(basis):
            sub = m[np.ix_(rows, cols)]
            out[i, j] = _det_mod(sub, p)
    return out


def _det_mod(a: np.ndarray, p: int) -> int:
    n = a.shape[0]
    if n == 0:
        return 1
    total = 0
    for perm in itertools.permutations(range(n)):
        prod = sign(perm)
        for i in range(n):
            prod = prod * int(a[perm[i], i]) % p
        total += prod
    return total % p


def _x_module(degree: int, ctx: _Ctx, recipe: dict) -> RepresentedModule:
    if degree % 2:
        raise ValueError("X is concentrated in even degrees")
    r = degree // 2
    p = ctx.p
    if r >= p:
        raise ValueError("X^i needs i/2 < p")
    if r == 0:
        return _with_recipe(_build({"op": "trivial"}, ctx), recipe)
    gl = {"op": "tensor", "args": [{"op": "V"}, {"op": "dual", "arg": {"op": "V"}}]}
    top = _build({"op": "sym", "k": r, "arg": gl}, ctx)
    w = ctx.d * ctx.d
    basis_r = list(itertools.combinations_with_replacement(range(w), r))
    index_r = {mono: i for i, mono in enumerate(basis_r)}
    rel = []
    for j in range(1, r + 1):
        sym_j = _build({"op": "sym", "k": j, "arg": gl}, ctx)
        inv_dim, inv_basis = invariants_dim(sym_j, want_basis=True)
        basis_j = list(itertools.combinations_with_replacement(range(w), j))
        rest = list(itertools.combinations_with_replacement(range(w), r - j))
        for vec in inv_basis:
            terms = [(basis_j[i], int(c)) for i, c in enumerate(vec) if c]
            for mono in rest:
                row = np.zeros(len(basis_r), dtype=np.int64)
                for key, c in terms:
                    row[index_r[tuple(sorted(key + mono))]] += c
                rel.append(row % p)
    rel_arr = np.array(rel, dtype=np.int64) if rel else np.zeros((0, len(basis_r)), dtype=np.int64)
    return _quotient(top, rel_arr, ctx, recipe)


def young_operator(mod: RepresentedModule, lam, mu) -> np.ndarray:
    """Young symmetrizer of (lam, mu) acting through the slot action."""
    p = mod.p
    n, m = mod.slots
    e1 = _young(lam, lambda pi: mod.slot_matrix(pi, tuple(range(m))), mod.dim, p)
    e2 = _young(mu, lambda rho: mod.slot_matrix(tuple(range(n)), rho), mod.dim, p)
    return linalg.matmul(e1, e2, p)


def _young(lam, act, dim: int, p: int) -> np.ndarray:
    n = sum(lam)
    if n == 0:
        return np.eye(dim, dtype=np.int64)
    # row-reading tableau: box (i, j) holds the number start_i + j
    rows, start = [], 0
    for length in lam:
        rows.append(list(range(start, start + length)))
        start += length
    cols = [[rows[i][j] for i in range(len(lam)) if lam[i] > j] for j in range(lam[0])]

    def group(blocks):
        out = []
        for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
            perm = list(range(n))
            for blk, img in zip(blocks, choice):
                for a, b in zip(blk, img):
                    perm[a] = b
            out.append(tuple(perm))
        return out

    a = np.zeros((dim, dim), dtype=np.int64)
    for g in group(rows):
        a = (a + act(g)) % p
    b = np.zeros((dim, dim), dtype=np.int64)
    for g in group(cols):
        b = (b + sign(g) * act(g)) % p
    return linalg.matmul(b, a, p)


def invariants_dim(rep: RepresentedModule, want_basis: bool = False, cap: int = DEFAULT_CAP):
    """Dimension of the joint fixed space of the generators.

    Kernels are intersected one generator at a time; diagonal generators are
    handled by selecting coordinates.  Returns (dim, basis rows or None).
    """
    if rep.dim > cap:
        raise CapExceeded(f"module dimension {rep.dim} exceeds cap {cap}")
    p = rep.p
    n = rep.dim
    if n == 0:
        return (0, np.zeros((0, 0), dtype=np.int64) if want_basis else None)
    mats = rep.matrices()
    mats = sorted(mats, key=lambda m: 0 if _is_diagonal(m) else 1)
    basis = np.eye(n, dtype=np.int64)
    for m in mats:
        if basis.shape[0] == 0:
            break
        if _is_diagonal(m) and basis.shape[0] == n and np.array_equal(basis, np.eye(n, dtype=np.int64)):
            keep = np.flatnonzero(np.diag(m) % p == 1)
            basis = np.eye(n, dtype=np.int64)[keep]
            continue
        diff = (linalg.matmul(m, basis.T, p) - basis.T) % p
        coeffs = linalg.nullspace(diff, p)
        basis = linalg.matmul(coeffs, basis, p) if coeffs.shape[0] else np.zeros((0, n), dtype=np.int64)
    dim = basis.shape[0]
    return (dim, basis if want_basis else None)


def _is_diagonal(m: np.ndarray) -> bool:
    return np.count_nonzero(m - np.diag(np.diag(m))) == 0


def standard_recipe(lam, mu, degree: int) -> dict:
    """Recipe for S_{lam,mu}(V) (x) X^degree."""
    n, m = sum(lam), sum(mu)
    base = {"op": "coev_quotient", "n": n, "m": m}
    return {
        "op": "tensor",
        "args": [
            {"op": "specht", "lambda": list(lam), "mu": list(mu), "arg": base},
            {"op": "X", "degree": degree},
        ],
    }
