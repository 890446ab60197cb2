"""Partitions, permutations and symmetric group characters.

Everything here is exact integer arithmetic; reduction mod p happens at the
call sites that need it.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from functools import lru_cache
from typing import Iterator, Sequence

Partition = tuple[int, ...]
Permutation = tuple[int, ...]  # 0-based images: perm[i] is the image of i

CONSTRAINTS = ("all", "distinct_odd", "distinct_odd_min3", "parts_positive_count")


def as_partition(parts: Sequence[int]) -> Partition:
    """Validate and normalise a partition (weakly decreasing positive parts)."""
    parts = tuple(int(x) for x in parts)
    if any(x <= 0 for x in parts):
        raise ValueError(f"partition parts must be positive: {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"partition must be weakly decreasing: {parts}")
    return parts


def _gen(r: int, max_part: int, min_part: int, distinct: bool, odd: bool) -> Iterator[Partition]:
    if r == 0:
        yield ()
        return
    for first in range(min(r, max_part), min_part - 1, -1):
        if odd and first % 2 == 0:
            continue
        nxt = first - 1 if distinct else first
        for rest in _gen(r - first, nxt, min_part, distinct, odd):
            yield (first,) + rest


def partitions(r: int, constraint: str = "all", n: int | None = None) -> list[Partition]:
    """All partitions of ``r`` satisfying ``constraint``, lexicographically descending.

    ``parts_positive_count`` restricts to partitions with exactly ``n`` parts.
    """
    if r < 0:
        raise ValueError("r must be non-negative")
    if constraint == "all":
        return list(_gen(r, r, 1, False, False))
    if constraint == "distinct_odd":
        return list(_gen(r, r, 1, True, True))
    if constraint == "distinct_odd_min3":
        return list(_gen(r, r, 3, True, True))
    if constraint == "parts_positive_count":
        if n is None:
            raise ValueError("parts_positive_count needs n")
        return [lam for lam in _gen(r, r, 1, False, False) if len(lam) == n]
    raise ValueError(f"unknown constraint {constraint!r}")


def hook_lengths(lam: Partition) -> list[int]:
    conj = conjugate(lam)
    return [lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])]


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


def specht_dim(lam: Sequence[int]) -> int:
    """Dimension of the Specht module S^lam by the hook length formula."""
    lam = as_partition(lam)
    return math.factorial(sum(lam)) // math.prod(hook_lengths(lam))


def _remove_rim_hook(lam: Partition, k: int) -> Iterator[tuple[Partition, int]]:
    """Yield (lam minus a rim hook of size k, leg length) for every such hook."""
    # Beta-numbers: removing a k-rim hook <=> moving a bead from b to b-k.
    n = len(lam)
    beta = [lam[i] + (n - 1 - i) for i in range(n)]
    bset = set(beta)
    for i, b in enumerate(beta):
        if b - k < 0 or (b - k) in bset:
            continue
        leg = sum(1 for c in beta if b - k < c < b)
        new = sorted([c for c in beta if c != b] + [b - k], reverse=True)
        parts = tuple(new[j] - (n - 1 - j) for j in range(n))
        yield tuple(x for x in parts if x > 0), leg


@lru_cache(maxsize=None)
def _mn(lam: Partition, rho: Partition) -> int:
    if not rho:
        return 1 if not lam else 0
    k, rest = rho[0], rho[1:]
    total = 0
    for mu, leg in _remove_rim_hook(lam, k):
        total += (-1) ** leg * _mn(mu, rest)
    return total


def chi(lam: Sequence[int], rho: Sequence[int]) -> int:
    """Irreducible character chi_lam evaluated on the class of cycle type rho."""
    lam = as_partition(lam)
    rho = tuple(sorted((int(x) for x in rho), reverse=True))
    if sum(lam) != sum(rho):
        raise ValueError(f"weight mismatch: |{lam}| != |{rho}|")
    return _mn(lam, rho)


def class_size(rho: Sequence[int]) -> int:
    rho = as_partition(tuple(sorted(rho, reverse=True)))
    mult = Counter(rho)
    denom = math.prod(i ** a * math.factorial(a) for i, a in mult.items())
    return math.factorial(sum(rho)) // denom


# -- permutations -----------------------------------------------------------

def identity(n: int) -> Permutation:
    return tuple(range(n))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """(a o b)(i) = a(b(i))."""
    return tuple(a[b[i]] for i in range(len(b)))


def inverse(a: Permutation) -> Permutation:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def cycles(a: Permutation) -> list[tuple[int, ...]]:
    seen = [False] * len(a)
    out = []
    for i in range(len(a)):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = a[j]
        out.append(tuple(cyc))
    return out


def cycle_type(a: Permutation) -> Partition:
    return tuple(sorted((len(c) for c in cycles(a)), reverse=True))


def sign(a: Permutation) -> int:
    return (-1) ** sum(len(c) - 1 for c in cycles(a))


def permutations(n: int) -> Iterator[Permutation]:
    return itertools.permutations(range(n))


def class_representative(rho: Sequence[int]) -> Permutation:
    """The permutation (0 1 .. r1-1)(r1 .. r1+r2-1)... of cycle type rho."""
    images = []
    start = 0
    for k in rho:
        images.extend(start + (j + 1) % k for j in range(k))
        start += k
    return tuple(images)
