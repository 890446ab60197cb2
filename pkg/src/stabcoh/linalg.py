"""Exact linear algebra over prime fields.

Dense matrices are numpy int64 arrays with entries in [0, p); products of two
residues must fit in int64, which limits p to below 3e9.  The sparse echelon
structure is for the very sparse systems produced by the symmetry-reduced
invariant computations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_CAP = 20000


class CapExceeded(ValueError):
    """A dense computation would exceed the configured dimension cap."""


def _check_prime_size(p: int) -> None:
    if p >= 3_000_000_000:
        raise ValueError("dense modular arithmetic needs p < 3e9")


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` mod p and its pivot columns."""
    _check_prime_size(p)
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r]) % p) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    # eliminate along the shorter side
    if a.shape[0] > a.shape[1]:
        a = a.T
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of {x : a x = 0} as the rows of the returned array."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, f]) % p
    return basis


def row_space(a: np.ndarray, p: int) -> np.ndarray:
    r, pivots = rref(a, p)
    return r[: len(pivots)]


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    aug = np.concatenate([np.asarray(a, dtype=np.int64) % p, np.eye(n, dtype=np.int64)], axis=1)
    r, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular mod p")
    return r[:, n:]


@dataclass(frozen=True)
class MatrixModP:
    """Dense matrix over F_p."""

    p: int
    data: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "data", np.asarray(self.data, dtype=np.int64) % self.p)

    @classmethod
    def identity(cls, n: int, p: int) -> MatrixModP:
        return cls(p, np.eye(n, dtype=np.int64))

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __matmul__(self, other: MatrixModP) -> MatrixModP:
        return MatrixModP(self.p, matmul(self.data, other.data, self.p))

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixModP) and self.p == other.p and np.array_equal(self.data, other.data)

    def __hash__(self):
        return hash((self.p, self.data.tobytes(), self.data.shape))

    def kron(self, other: MatrixModP) -> MatrixModP:
        return MatrixModP(self.p, np.kron(self.data, other.data))

    def inverse(self) -> MatrixModP:
        return MatrixModP(self.p, inverse(self.data, self.p))

    def transpose(self) -> MatrixModP:
        return MatrixModP(self.p, self.data.T)

    def rank(self) -> int:
        return rank(self.data, self.p)

    def kernel(self) -> np.ndarray:
        return nullspace(self.data, self.p)

    def key(self) -> bytes:
        return self.data.tobytes()


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product mod p without int64 overflow for long inner dimensions."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    k = a.shape[1]
    # each partial sum of `chunk` products stays below 2^63
    chunk = max(1, (2**62) // max(1, (p - 1) ** 2))
    if chunk >= k:
        return (a @ b) % p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, k, chunk):
        out = (out + a[:, s : s + chunk] @ b[s : s + chunk]) % p
    return out


class SparseEchelon:
    """Incremental echelon basis of sparse vectors ({index: value}) over F_p.

    Reduction is by leading (largest) index.  With ``track=True`` each basis
    vector remembers the combination of inserted vectors producing it, so that
    dependencies among inserted vectors can be recovered.
    """

    def __init__(self, p: int, track: bool = False):
        self.p = p
        self.track = track
        self.basis: dict[int, dict[int, int]] = {}
        self.combos: dict[int, dict[int, int]] = {}
        self.dependencies: list[dict[int, int]] = []

    def __len__(self) -> int:
        return len(self.basis)

    def reduce(self, vec: dict[int, int], combo: dict[int, int] | None = None):
        p = self.p
        v = {k: x % p for k, x in vec.items() if x % p}
        c = dict(combo) if combo is not None else None
        while v:
            lead = max(v)
            row = self.basis.get(lead)
            if row is None:
                break
            f = v[lead]
            for k, x in row.items():
                y = (v.get(k, 0) - f * x) % p
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
            if c is not None:
                for k, x in self.combos[lead].items():
                    y = (c.get(k, 0) - f * x) % p
                    if y:
                        c[k] = y
                    else:
                        c.pop(k, None)
        return v, c

    def add(self, vec: dict[int, int], tag: int | None = None) -> bool:
        """Insert a vector; returns True if it enlarged the span."""
        combo = {tag: 1} if self.track else None
        v, c = self.reduce(vec, combo)
        if not v:
            if self.track and c:
                self.dependencies.append(c)
            return False
        lead = max(v)
        inv = pow(v[lead], -1, self.p)
        self.basis[lead] = {k: (x * inv) % self.p for k, x in v.items()}
        if self.track:
            self.combos[lead] = {k: (x * inv) % self.p for k, x in c.items()}
        return True

    def contains(self, vec: dict[int, int]) -> bool:
        return not self.reduce(vec)[0]

    def normal_form(self, vec: dict[int, int]) -> dict[int, int]:
        """Fully reduced representative of vec modulo the span (linear in vec)."""
        p = self.p
        v = {k: x % p for k, x in vec.items() if x % p}
        cursor = None
        while True:
            piv = [k for k in v if k in self.basis and (cursor is None or k < cursor)]
            if not piv:
                return v
            lead = max(piv)
            f = v[lead]
            for k, x in self.basis[lead].items():
                y = (v.get(k, 0) - f * x) % p
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
            cursor = lead
