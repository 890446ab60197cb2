"""Invariants of GL_d(F_p) on V_{[n,m]} ⊗ X^{2r} without building the module.

The module P = V^{⊗n} ⊗ (V^∨)^{⊗m} ⊗ Sym^r(V⊗V^∨) has a monomial basis and
Q = P/K where K is spanned by coevaluation insertions and the ideal generated
by the trace invariants c_j = tr(X^j).  GL_d is generated by the diagonal
torus T, the symmetric group Σ_d and the transvection u = 1 + E_{01}.  We
split Σ_d as a Young subgroup H (blocks of size ≤ p−1) plus the boundary
transpositions joining consecutive blocks.  T·H has order prime to p, so
its invariants in Q lift exactly to P and are spanned by H-orbit sums of
torus weight zero monomials.  An orbit-sum combination w is G-invariant in Q
iff (g−1)w lies in K for each remaining generator g; each such condition is
tested inside the invariants of the centraliser of g in H, again a p'-group.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from math import factorial
from typing import Iterator

from ..linalg import SparseEchelon
from ..symcore import chi, cycle_type, partitions, permutations, specht_dim

Monomial = tuple[tuple[int, ...], tuple[int, ...], tuple[tuple[int, int], ...]]


def young_blocks(d: int, p: int, size: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Consecutive blocks of size p−1 or smaller (the last may be shorter)."""
    size = p - 1 if size is None else size
    if not 1 <= size <= p - 1:
        raise ValueError("block size must be between 1 and p - 1")
    return tuple(tuple(range(i, min(i + size, d))) for i in range(0, d, size))


class Canonicalizer:
    """Canonical orbit representatives for a product of symmetric groups on label blocks.

    Labels outside every block are fixed.  The representative is the
    lexicographically least relabelling of (upper slots, lower slots, sorted
    symmetric factors).
    """

    def __init__(self, blocks):
        self.blocks = tuple(tuple(b) for b in blocks if b)
        self.block_of = {x: i for i, b in enumerate(self.blocks) for x in b}
        self._cache: dict[Monomial, Monomial] = {}

    def __call__(self, z: Monomial) -> Monomial:
        hit = self._cache.get(z)
        if hit is not None:
            return hit
        up, dn, sym = z
        used = [0] * len(self.blocks)
        rel: dict[int, int] = {}
        for x in up + dn:
            if x not in rel:
                b = self.block_of.get(x)
                if b is None:
                    rel[x] = x
                else:
                    rel[x] = self.blocks[b][used[b]]
                    used[b] += 1
        free: dict[int, list[int]] = {}
        for pair in sym:
            for x in pair:
                if x in rel:
                    continue
                b = self.block_of.get(x)
                if b is None:
                    rel[x] = x
                elif x not in free.setdefault(b, []):
                    free[b].append(x)
        up2 = tuple(rel[x] for x in up)
        dn2 = tuple(rel[x] for x in dn)
        if not free:
            best = tuple(sorted((rel[a], rel[b]) for a, b in sym))
        else:
            groups = sorted(free.items())
            targets = [self.blocks[b][used[b]:used[b] + len(xs)] for b, xs in groups]
            best = None
            for choice in itertools.product(*(itertools.permutations(t) for t in targets)):
                full = dict(rel)
                for (_, xs), img in zip(groups, choice):
                    full.update(zip(xs, img))
                cand = tuple(sorted((full[a], full[b]) for a, b in sym))
                if best is None or cand < best:
                    best = cand
        out = (up2, dn2, best)
        self._cache[z] = out
        return out


def _distinct_perms(items: list[int]) -> Iterator[tuple[int, ...]]:
    counts = Counter(items)
    keys = sorted(counts)
    n = len(items)
    out: list[int] = []

    def rec():
        if len(out) == n:
            yield tuple(out)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                out.append(k)
                yield from rec()
                out.pop()
                counts[k] += 1

    yield from rec()


def orbit_reps(n: int, m: int, r: int, canon: Canonicalizer, fixed: tuple[int, ...],
               weight: dict[int, int] | None = None) -> list[Monomial]:
    """Canonical representatives of all orbits of monomials of the given torus weight.

    ``weight`` maps a fixed label to (#upper − #lower); every other label is balanced.
    """
    weight = weight or {}
    n_up = n + r
    if n_up - sum(weight.values()) != m + r:
        return []
    seen: set[Monomial] = set()
    seq: list[int] = []
    nblocks = len(canon.blocks)

    def uppers(used: list[int]) -> Iterator[tuple[int, ...]]:
        if len(seq) == n_up:
            yield tuple(seq)
            return
        options = [(x, None) for x in fixed]
        for b in range(nblocks):
            options.extend((x, None) for x in canon.blocks[b][:used[b]])
            if used[b] < len(canon.blocks[b]):
                options.append((canon.blocks[b][used[b]], b))
        for x, fresh in options:
            seq.append(x)
            if fresh is not None:
                used[fresh] += 1
            yield from uppers(used)
            if fresh is not None:
                used[fresh] -= 1
            seq.pop()

    for upper in uppers([0] * nblocks):
        cnt = Counter(upper)
        lower: list[int] = []
        ok = True
        for x in sorted(set(cnt) | set(weight)):
            k = cnt.get(x, 0) - weight.get(x, 0)
            if k < 0:
                ok = False
                break
            lower.extend([x] * k)
        if not ok:
            continue
        if len(lower) != m + r:
            continue
        up = upper[:n]
        firsts = upper[n:]
        for low in _distinct_perms(lower):
            sym = tuple(sorted(zip(firsts, low[m:])))
            seen.add(canon((up, low[:m], sym)))
    return sorted(seen)


_WALKS: dict[tuple[tuple[int, int], ...], int] = {}


def trace_coefficient(factors: tuple[tuple[int, int], ...]) -> int:
    """Coefficient of the monomial prod x_{ab} in tr(X^j), j = number of factors."""
    key = tuple(sorted(factors))
    hit = _WALKS.get(key)
    if hit is None:
        hit = 0
        for arr in _distinct_perms_pairs(list(key)):
            if all(arr[i][1] == arr[(i + 1) % len(arr)][0] for i in range(len(arr))):
                hit += 1
        _WALKS[key] = hit
    return hit


def _distinct_perms_pairs(items):
    idx = {x: i for i, x in enumerate(sorted(set(items)))}
    rev = {i: x for x, i in idx.items()}
    for perm in _distinct_perms([idx[x] for x in items]):
        yield tuple(rev[i] for i in perm)


def _sub_multisets(sym: tuple[tuple[int, int], ...], j: int):
    """Distinct sub-multisets of size j, with the complementary multiset."""
    cnt = Counter(sym)
    keys = sorted(cnt)

    def rec(i, left, chosen):
        if left == 0:
            yield tuple(chosen)
            return
        if i == len(keys):
            return
        k = keys[i]
        for t in range(min(cnt[k], left), -1, -1):
            yield from rec(i + 1, left - t, chosen + [k] * t)

    for sub in rec(0, j, []):
        rest = cnt.copy()
        rest.subtract(sub)
        yield sub, tuple(sorted(rest.elements()))


def preimage_entries(z: Monomial, canon: Canonicalizer, coev: bool, cquot: bool, p: int) -> dict:
    """Coefficient of z in the image of each relation generator (orbit sum of a preimage)."""
    up, dn, sym = z
    out: dict = {}
    if coev:
        for a, x in enumerate(up):
            for b, y in enumerate(dn):
                if x == y:
                    rest = (up[:a] + up[a + 1:], dn[:b] + dn[b + 1:], sym)
                    key = ("e", a, b, canon(rest))
                    out[key] = (out.get(key, 0) + 1) % p
    if cquot:
        for j in range(1, len(sym) + 1):
            for sub, rest in _sub_multisets(sym, j):
                c = trace_coefficient(sub) % p
                if c:
                    key = ("c", j, canon((up, dn, rest)))
                    out[key] = (out.get(key, 0) + c) % p
    return {k: v for k, v in out.items() if v}


def _factorial_weight(sym) -> int:
    w = 1
    for c in Counter(sym).values():
        w *= factorial(c)
    return w


def reverse_transvection(z: Monomial, k: int, p: int) -> dict[Monomial, int]:
    """Weight-zero y with their coefficient of z in u·y, u = 1 + E_{01}, k modifications."""
    up, dn, sym = z
    slots = []  # (kind, index, options)
    for i, x in enumerate(up):
        if x == 0:
            slots.append(("u", i))
    for i, x in enumerate(dn):
        if x == 1:
            slots.append(("d", i))
    sym_opts = []
    for a, b in sym:
        opts = [((a, b), 0, 0)]
        if a == 0:
            opts.append(((1, b), 1, 0))
        if b == 1:
            opts.append(((a, 0), 1, 1))
        if a == 0 and b == 1:
            opts.append(((1, 0), 2, 1))
        sym_opts.append(opts)
    out: dict[Monomial, int] = {}
    wz = _factorial_weight(sym)
    inv_wz = pow(wz, -1, p)
    for mask in range(1 << len(slots)):
        chosen = [slots[i] for i in range(len(slots)) if mask >> i & 1]
        if len(chosen) > k:
            continue
        need = k - len(chosen)
        up2 = list(up)
        dn2 = list(dn)
        sgn = 1
        for kind, i in chosen:
            if kind == "u":
                up2[i] = 1
            else:
                dn2[i] = 0
                sgn = -sgn
        for pick in itertools.product(*sym_opts):
            if sum(o[1] for o in pick) != need:
                continue
            s = sgn * (-1) ** sum(o[2] for o in pick)
            ysym = tuple(sorted(o[0] for o in pick))
            y = (tuple(up2), tuple(dn2), ysym)
            c = s * _factorial_weight(ysym) * inv_wz
            out[y] = (out.get(y, 0) + c) % p
    return {y: c for y, c in out.items() if c}


@dataclass
class SymmetricResult:
    """Invariant space of V_{[n,m]} ⊗ X^{2r} in H-orbit coordinates."""

    n: int
    m: int
    r: int
    d: int
    p: int
    group: str
    orbits: list[Monomial]
    invariant_lifts: list[dict[int, int]]
    relations: list[dict[int, int]]
    stats: dict = field(default_factory=dict)
    blocks: tuple = ()

    @property
    def dim(self) -> int:
        return len(self.invariant_lifts) - len(self.relations)

    def specht_multiplicity(self, lam, mu) -> int:
        """Multiplicity of S^λ ⊠ S^μ (slot permutations) in the invariants."""
        lam = tuple(lam)
        mu = tuple(mu)
        if sum(lam) != self.n or sum(mu) != self.m:
            raise ValueError("partition sizes must match the tensor shape")
        if self.dim == 0:
            return 0
        index = {o: i for i, o in enumerate(self.orbits)}
        canon = Canonicalizer(self.blocks)
        terms = []
        for s in permutations(self.n):
            cs = chi(lam, cycle_type(s)) if self.n else 1
            for t in permutations(self.m):
                ct = chi(mu, cycle_type(t)) if self.m else 1
                coef = cs * ct % self.p
                if coef:
                    terms.append((s, t, coef))
        images: dict[tuple, list[int]] = {}
        for s, t, _ in terms:
            img = []
            for up, dn, sym in self.orbits:
                nup = [0] * self.n
                ndn = [0] * self.m
                for i, x in enumerate(up):
                    nup[s[i]] = x
                for i, x in enumerate(dn):
                    ndn[t[i]] = x
                img.append(index[canon((tuple(nup), tuple(ndn), sym))])
            images[(s, t)] = img

        def project(vecs):
            ech = SparseEchelon(self.p)
            for v in vecs:
                out: dict[int, int] = {}
                for s, t, coef in terms:
                    img = images[(s, t)]
                    for i, x in v.items():
                        j = img[i]
                        out[j] = (out.get(j, 0) + coef * x) % self.p
                ech.add(out)
            return len(ech)

        top = project(self.invariant_lifts)
        bottom = project(self.relations)
        size = specht_dim(lam) * specht_dim(mu)
        if (top - bottom) % size:
            raise ArithmeticError("isotypic dimension not divisible by the Specht dimension")
        return (top - bottom) // size


def _check(n: int, m: int, r: int, d: int, p: int, group: str) -> None:
    if group not in ("GL", "SL"):
        raise ValueError("group must be GL or SL")
    if min(n, m, r) < 0 or d < 2:
        raise ValueError("need n, m, r >= 0 and d >= 2")
    if group == "SL" and d <= n + m + 2 * r:
        raise ValueError("SL reduction needs d > n + m + 2r")
    if (n - m) % (p - 1):
        # weight coordinates sum to n - m, so no weight is trivial mod p - 1
        return
    if max(n, m) + r >= p - 1:
        raise ValueError("torus weights may wrap around: need max(n, m) + r < p - 1")
    if r >= p or n >= p or m >= p:
        raise ValueError("need n, m, r < p")


def symmetric_invariants(n: int, m: int, r: int, d: int, p: int, group: str = "GL",
                         coev: bool = True, cquot: bool = True,
                         block_size: int | None = None) -> SymmetricResult:
    """Invariants of GL_d(F_p) (or SL_d) on V^{⊗n}⊗(V^∨)^{⊗m}⊗Sym^r(V⊗V^∨) modulo relations.

    ``coev`` quotients by coevaluation insertions, ``cquot`` by the ideal (c_1, c_2, ...).
    ``block_size`` shrinks the Young subgroup; the answer must not depend on it.
    Under the checked bounds only balanced monomials carry torus invariants and
    signed permutation matrices act on them as plain permutations, so the SL
    computation coincides with the GL one.
    """
    _check(n, m, r, d, p, group)
    blocks = young_blocks(d, p, block_size)
    canon = Canonicalizer(blocks)
    if (n - m) % (p - 1):
        return SymmetricResult(n, m, r, d, p, group, [], [], [], {"reason": "torus weight"}, blocks)
    if cquot and r:
        validate_trace_ideal(r, d, p)
    orbits = orbit_reps(n, m, r, canon, ())
    index = {o: i for i, o in enumerate(orbits)}
    stats = {"orbits": len(orbits), "conditions": []}

    residual: list[dict[int, int]] = [dict() for _ in orbits]
    offset = 0

    def add_condition(rows: list[Monomial], a_entries, sub: Canonicalizer):
        nonlocal offset
        row_id = {z: i for i, z in enumerate(rows)}
        cols: dict = {}
        acols: dict[int, dict[int, int]] = {}
        for z in rows:
            i = row_id[z]
            for key, c in preimage_entries(z, sub, coev, cquot, p).items():
                cols.setdefault(key, {})[i] = c
            for o, c in a_entries(z).items():
                col = acols.setdefault(o, {})
                col[i] = (col.get(i, 0) + c) % p
        ech = SparseEchelon(p)
        for vec in cols.values():
            ech.add(vec)
        for o, vec in acols.items():
            nf = ech.normal_form(vec)
            for i, c in nf.items():
                residual[o][offset + i] = c
        stats["conditions"].append({"rows": len(rows), "relations": len(cols), "rank": len(ech)})
        offset += len(rows)

    for b in range(len(blocks) - 1):
        x, y = blocks[b][-1], blocks[b + 1][0]
        sub = Canonicalizer([[v for v in blk if v not in (x, y)] for blk in blocks])
        rows = orbit_reps(n, m, r, sub, (x, y))

        def swap_entries(z, x=x, y=y):
            sw = {x: y, y: x}
            up, dn, sym = z
            zs = (tuple(sw.get(v, v) for v in up), tuple(sw.get(v, v) for v in dn),
                  tuple(sorted((sw.get(a, a), sw.get(c, c)) for a, c in sym)))
            out: dict[int, int] = {}
            o1 = index[canon(zs)]
            o2 = index[canon(z)]
            out[o1] = out.get(o1, 0) + 1
            out[o2] = out.get(o2, 0) - 1
            return {k: v % p for k, v in out.items() if v % p}

        add_condition(rows, swap_entries, sub)

    sub = Canonicalizer([[v for v in blk if v not in (0, 1)] for blk in blocks])
    for k in range(1, n + r + 1):
        rows = orbit_reps(n, m, r, sub, (0, 1), {0: k, 1: -k})

        def trans_entries(z, k=k):
            out: dict[int, int] = {}
            for y, c in reverse_transvection(z, k, p).items():
                o = index[canon(y)]
                out[o] = (out.get(o, 0) + c) % p
            return {o: c for o, c in out.items() if c}

        add_condition(rows, trans_entries, sub)

    ker = SparseEchelon(p, track=True)
    for o, vec in enumerate(residual):
        ker.add(vec, tag=o)
    lifts = ker.dependencies

    relcols: dict = {}
    for o, z in enumerate(orbits):
        for key, c in preimage_entries(z, canon, coev, cquot, p).items():
            relcols.setdefault(key, {})[o] = c
    rel = SparseEchelon(p)
    relations = []
    for vec in relcols.values():
        if rel.add(vec):
            relations.append(vec)
    space = SparseEchelon(p)
    for v in lifts:
        space.add(v)
    for v in relations:
        if not space.contains(v):
            raise ArithmeticError("relation subspace is not contained in the invariant lifts")
    stats["lifts"] = len(lifts)
    stats["relations"] = len(relations)
    return SymmetricResult(n, m, r, d, p, group, orbits, lifts, relations, stats, blocks)


_TRACE_OK: set[tuple[int, int, int]] = set()


def _poly_mul(a: dict, b: dict, p: int) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            key = tuple(sorted(ma + mb))
            out[key] = (out.get(key, 0) + ca * cb) % p
    return {k: v for k, v in out.items() if v}


def _trace_poly(j: int, d: int, p: int) -> dict:
    out: dict = {}
    for walk in itertools.product(range(d), repeat=j):
        key = tuple(sorted((walk[i], walk[(i + 1) % j]) for i in range(j)))
        out[key] = (out.get(key, 0) + 1) % p
    return {k: v for k, v in out.items() if v}


def validate_trace_ideal(r: int, d: int, p: int) -> None:
    """Check that products of c_j span the invariants of Sym^j(V⊗V^∨) for j ≤ r.

    The invariant dimension is computed by the engine itself and the c-products
    must be linearly independent with the same count.
    """
    for j in range(1, r + 1):
        if (j, d, p) in _TRACE_OK:
            continue
        inv = symmetric_invariants(0, 0, j, d, p, coev=False, cquot=False).dim
        traces = {i: _trace_poly(i, d, p) for i in range(1, j + 1)}
        ech = SparseEchelon(p)
        ids: dict = {}
        for lam in partitions(j):
            poly = {(): 1}
            for part in lam:
                poly = _poly_mul(poly, traces[part], p)
            ech.add({ids.setdefault(k, len(ids)): v for k, v in poly.items()})
        if inv != len(ech) or inv != len(partitions(j)):
            raise ArithmeticError(
                f"trace invariants do not span Sym^{j} invariants at d={d}, p={p}: "
                f"{inv} invariants, {len(ech)} independent trace products")
        _TRACE_OK.add((j, d, p))


_RESULTS: dict[tuple, SymmetricResult] = {}


def specht_invariants(lam, mu, degree: int, d: int, p: int, group: str = "SL") -> int:
    """dim [S_{λ,μ}(V) ⊗ X^degree]^G via the orbit engine (results cached per shape)."""
    if degree % 2:
        raise ValueError("degree must be even")
    lam, mu = tuple(lam), tuple(mu)
    key = (sum(lam), sum(mu), degree // 2, d, p, group)
    res = _RESULTS.get(key)
    if res is None:
        res = symmetric_invariants(*key)
        _RESULTS[key] = res
    return res.specht_multiplicity(lam, mu)
