"""Generating sets for GL_d(F_q) and SL_d(F_q)."""

from __future__ import annotations

import numpy as np

from ..linalg import MatrixModP


def primitive_root(q: int) -> int:
    if q == 2:
        return 1
    factors = set()
    n, f = q - 1, 2
    while f * f <= n:
        while n % f == 0:
            factors.add(f)
            n //= f
        f += 1
    if n > 1:
        factors.add(n)
    for g in range(2, q):
        if all(pow(g, (q - 1) // r, q) != 1 for r in factors):
            return g
    raise ValueError(f"{q} is not prime")


def gl_gens(d: int, q: int, group: str = "GL") -> list[MatrixModP]:
    """Small generating set: torus element, transvection E_12(1), cycle and transposition.

    For SL the permutation matrices are replaced by signed versions of
    determinant one and the torus element by diag(z, 1/z, 1, ..).
    """
    if d < 1:
        raise ValueError("d must be positive")
    if group not in ("GL", "SL"):
        raise ValueError("group must be GL or SL")
    z = primitive_root(q)
    eye = np.eye(d, dtype=np.int64)
    if d == 1:
        if group == "SL":
            return [MatrixModP(q, eye)]
        return [MatrixModP(q, np.array([[z]]))]
    gens = []
    torus = eye.copy()
    torus[0, 0] = z
    if group == "SL":
        torus[1, 1] = pow(z, -1, q)
    gens.append(torus)
    trans = eye.copy()
    trans[0, 1] = 1  # e_2 -> e_2 + e_1
    gens.append(trans)
    cyc = np.zeros((d, d), dtype=np.int64)
    for i in range(d):
        cyc[(i + 1) % d, i] = 1
    if group == "SL" and d % 2 == 0:
        cyc[0, d - 1] = -1  # an even-length cycle has determinant -1
    gens.append(cyc)
    swap = eye.copy()
    swap[[0, 1]] = swap[[1, 0]]
    if group == "SL":
        swap[0, 1] = -1
    gens.append(swap)
    return [MatrixModP(q, g) for g in gens]


def closure_order(gens: list[MatrixModP], limit: int = 200_000) -> int:
    """Order of the generated group by breadth-first closure (small groups only)."""
    if not gens:
        return 1
    p = gens[0].p
    n = gens[0].shape[0]
    start = MatrixModP.identity(n, p)
    seen = {start.key()}
    frontier = [start]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = g @ a
                k = b.key()
                if k not in seen:
                    seen.add(k)
                    if len(seen) > limit:
                        raise ValueError(f"group order exceeds {limit}")
                    nxt.append(b)
        frontier = nxt
    return len(seen)


def gl_order(d: int, q: int) -> int:
    out = 1
    for i in range(d):
        out *= q**d - q**i
    return out


def sl_order(d: int, q: int) -> int:
    return gl_order(d, q) // (q - 1)
