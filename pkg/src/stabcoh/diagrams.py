"""Walled Brauer diagrams and the labeled-diagram calculus.

An object of the walled Brauer category is a pair of finite sets (S, T); here
both are the ordinal sets {0, .., n-1}.  A morphism (S, T) -> (U, V) matches
every point of S, T, U, V exactly once by

* left through strands S -- U,
* right through strands T -- V,
* caps S -- T on the source side,
* cups U -- V on the target side.

A labeled basis element of shape (S, T) is a bijection sigma: T -> S together
with divided-power labels ell: S -> N.  Think of it as a collection of cups
from the empty object to (S, T), the strand from t to sigma(t) carrying the
label x^[ell(sigma(t))].
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Iterable

Pairs = tuple[tuple[int, int], ...]


def _pairs(items: Iterable[tuple[int, int]]) -> Pairs:
    return tuple(sorted((int(a), int(b)) for a, b in items))


@dataclass(frozen=True)
class WalledDiagram:
    """A morphism (S, T) -> (U, V) of the walled Brauer category."""

    source: tuple[int, int]
    target: tuple[int, int]
    through_left: Pairs = ()
    through_right: Pairs = ()
    cap: Pairs = ()
    cup: Pairs = ()

    def __post_init__(self):
        for name in ("through_left", "through_right", "cap", "cup"):
            object.__setattr__(self, name, _pairs(getattr(self, name)))
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "target", tuple(self.target))
        ns, nt = self.source
        nu, nv = self.target
        s_hits = [a for a, _ in self.through_left] + [a for a, _ in self.cap]
        t_hits = [a for a, _ in self.through_right] + [b for _, b in self.cap]
        u_hits = [b for _, b in self.through_left] + [a for a, _ in self.cup]
        v_hits = [b for _, b in self.through_right] + [b for _, b in self.cup]
        for hits, size, label in ((s_hits, ns, "S"), (t_hits, nt, "T"), (u_hits, nu, "U"), (v_hits, nv, "V")):
            if sorted(hits) != list(range(size)):
                raise ValueError(f"diagram does not match every point of {label} exactly once")

    @classmethod
    def identity(cls, n: int, m: int) -> WalledDiagram:
        return cls((n, m), (n, m), [(i, i) for i in range(n)], [(j, j) for j in range(m)])

    def to_dict(self) -> dict:
        return {
            "source": list(self.source),
            "target": list(self.target),
            "through_left": [list(x) for x in self.through_left],
            "through_right": [list(x) for x in self.through_right],
            "cap": [list(x) for x in self.cap],
            "cup": [list(x) for x in self.cup],
        }

    @classmethod
    def from_dict(cls, data: dict) -> WalledDiagram:
        return cls(
            tuple(data["source"]),
            tuple(data["target"]),
            [tuple(x) for x in data.get("through_left", [])],
            [tuple(x) for x in data.get("through_right", [])],
            [tuple(x) for x in data.get("cap", [])],
            [tuple(x) for x in data.get("cup", [])],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _trace(adj: dict, outer: Iterable, middle: Iterable):
    """Follow strands through a graph whose middle nodes have degree two.

    ``adj`` maps node -> list of (neighbour, edge).  Returns the open paths as
    (start, end, edges) and the closed loops (made of middle nodes) as edge
    lists.
    """
    used = set()

    def walk(node, edge, stop):
        edges = [edge]
        while True:
            used.add(node)
            if node == stop or node[0] != "mid":
                return node, edges
            (a, ea), (b, eb) = adj[node]
            node, edge = (b, eb) if ea is edge else (a, ea)
            edges.append(edge)

    paths = []
    for start in outer:
        if start in used:
            continue
        used.add(start)
        ((nxt, e),) = adj[start]
        end, edges = walk(nxt, e, None)
        paths.append((start, end, edges))
    loops = []
    for start in middle:
        if start in used:
            continue
        used.add(start)
        nxt, e = adj[start][0]
        _, edges = walk(nxt, e, start)
        loops.append(edges)
    return paths, loops


class _Edge:
    """Distinct object per edge so parallel edges can be told apart."""

    __slots__ = ("payload",)

    def __init__(self, payload=None):
        self.payload = payload


def _add(adj: dict, a, b, payload=None) -> None:
    e = _Edge(payload)
    adj.setdefault(a, []).append((b, e))
    adj.setdefault(b, []).append((a, e))


def compose_wbr(a: WalledDiagram, b: WalledDiagram, d: int = 1, p: int | None = None) -> tuple[int, WalledDiagram]:
    """Glue ``a`` followed by ``b``; each closed circle contributes a factor ``d``."""
    if a.target != b.source:
        raise ValueError(f"shape mismatch: {a.target} != {b.source}")
    adj: dict = {}
    for s, u in a.through_left:
        _add(adj, ("S", s), ("mid", "U", u))
    for t, v in a.through_right:
        _add(adj, ("T", t), ("mid", "V", v))
    for s, t in a.cap:
        _add(adj, ("S", s), ("T", t))
    for u, v in a.cup:
        _add(adj, ("mid", "U", u), ("mid", "V", v))
    for u, w in b.through_left:
        _add(adj, ("mid", "U", u), ("W", w))
    for v, x in b.through_right:
        _add(adj, ("mid", "V", v), ("X", x))
    for u, v in b.cap:
        _add(adj, ("mid", "U", u), ("mid", "V", v))
    for w, x in b.cup:
        _add(adj, ("W", w), ("X", x))
    ns, nt = a.source
    nw, nx = b.target
    outer = [("S", i) for i in range(ns)] + [("T", i) for i in range(nt)]
    outer += [("W", i) for i in range(nw)] + [("X", i) for i in range(nx)]
    middle = [("mid", "U", i) for i in range(a.target[0])] + [("mid", "V", i) for i in range(a.target[1])]
    paths, loops = _trace(adj, outer, middle)
    tl, tr, cap, cup = [], [], [], []
    for start, end, _ in paths:
        kinds = {start[0]: start[1], end[0]: end[1]}
        if set(kinds) == {"S", "W"}:
            tl.append((kinds["S"], kinds["W"]))
        elif set(kinds) == {"T", "X"}:
            tr.append((kinds["T"], kinds["X"]))
        elif set(kinds) == {"S", "T"}:
            cap.append((kinds["S"], kinds["T"]))
        elif set(kinds) == {"W", "X"}:
            cup.append((kinds["W"], kinds["X"]))
        else:  # pragma: no cover - excluded by the wall
            raise AssertionError(f"strand crosses the wall: {start} -> {end}")
    coeff = d ** len(loops)
    if p is not None:
        coeff %= p
    return coeff, WalledDiagram(a.source, b.target, tl, tr, cap, cup)


def all_diagrams(source: tuple[int, int], target: tuple[int, int]) -> list[WalledDiagram]:
    """Every walled Brauer diagram (S, T) -> (U, V), in a canonical order."""
    ns, nt = source
    nu, nv = target
    out = []
    for a in range(min(ns, nu) + 1):
        for b in range(min(nt, nv) + 1):
            if ns - a != nt - b or nu - a != nv - b:
                continue
            for sa in itertools.combinations(range(ns), a):
                for ua in itertools.permutations(range(nu), a):
                    for tb in itertools.combinations(range(nt), b):
                        for vb in itertools.permutations(range(nv), b):
                            s_rest = [i for i in range(ns) if i not in sa]
                            t_rest = [i for i in range(nt) if i not in tb]
                            u_rest = [i for i in range(nu) if i not in ua]
                            v_rest = [i for i in range(nv) if i not in vb]
                            for cap_img in itertools.permutations(t_rest):
                                for cup_img in itertools.permutations(v_rest):
                                    out.append(WalledDiagram(
                                        source, target,
                                        zip(sa, ua), zip(tb, vb),
                                        zip(s_rest, cap_img), zip(u_rest, cup_img),
                                    ))
    out.sort(key=lambda w: (w.through_left, w.through_right, w.cap, w.cup))
    return out


# -- labeled diagrams -------------------------------------------------------

@dataclass(frozen=True, order=True)
class LabeledBasisElement:
    """Basis element x_0^[l_0] ... x_{n-1}^[l_{n-1}] (x) sigma with sigma: T -> S."""

    labels: tuple[int, ...]
    sigma: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))
        object.__setattr__(self, "sigma", tuple(int(x) for x in self.sigma))
        if any(x < 0 for x in self.labels):
            raise ValueError("labels must be non-negative")
        if sorted(self.sigma) != list(range(len(self.labels))):
            raise ValueError("sigma must be a bijection T -> S with |T| = |S|")

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def degree(self) -> int:
        return 2 * sum(self.labels)

    def to_dict(self) -> dict:
        return {"labels": list(self.labels), "sigma": list(self.sigma)}


@dataclass(frozen=True)
class FpCombination:
    """Finite F_p-linear combination of labeled basis elements of one shape."""

    p: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, v in self.terms.items():
            v %= self.p
            if v:
                clean[k] = v
        object.__setattr__(self, "terms", clean)

    @classmethod
    def single(cls, x: LabeledBasisElement, p: int, coeff: int = 1) -> FpCombination:
        return cls(p, {x: coeff})

    def __add__(self, other: FpCombination) -> FpCombination:
        if other.p != self.p:
            raise ValueError("prime mismatch")
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return FpCombination(self.p, out)

    def scale(self, c: int) -> FpCombination:
        return FpCombination(self.p, {k: v * c for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, FpCombination) and self.p == other.p and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, frozenset(self.terms.items())))

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "terms": [dict(k.to_dict(), coeff=v) for k, v in sorted(self.terms.items())],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def dp_coeff(labels: Iterable[int]) -> tuple[int, int]:
    """Multinomial coefficient of x^[a1]...x^[ak] = c x^[a1+..+ak] as (c, total)."""
    labels = list(labels)
    total = sum(labels)
    c = math.factorial(total)
    for a in labels:
        c //= math.factorial(a)
    return c, total


def act_labeled(w: WalledDiagram, x: FpCombination, dim_v: int) -> FpCombination:
    """Act by a walled diagram on a combination of labeled basis elements.

    Strands are concatenated; labels that end up on one strand multiply in the
    divided power algebra; closed components evaluate to dim_v when labeled
    x^[0] and to zero otherwise.
    """
    p = x.p
    out: dict = {}
    for elt, coeff in x.terms.items():
        if w.source != (elt.size, elt.size):
            raise ValueError(f"shape mismatch: {w.source} vs {(elt.size, elt.size)}")
        res = _act_one(w, elt, dim_v, p)
        if res is None:
            continue
        c, new = res
        out[new] = out.get(new, 0) + c * coeff
    return FpCombination(p, out)


def _act_one(w: WalledDiagram, elt: LabeledBasisElement, dim_v: int, p: int):
    adj: dict = {}
    for t, s in enumerate(elt.sigma):
        _add(adj, ("mid", "S", s), ("mid", "T", t), elt.labels[s])
    for s, u in w.through_left:
        _add(adj, ("mid", "S", s), ("U", u), None)
    for t, v in w.through_right:
        _add(adj, ("mid", "T", t), ("V", v), None)
    for s, t in w.cap:
        _add(adj, ("mid", "S", s), ("mid", "T", t), None)
    for u, v in w.cup:
        _add(adj, ("U", u), ("V", v), None)
    nu, nv = w.target
    outer = [("V", i) for i in range(nv)] + [("U", i) for i in range(nu)]
    middle = [("mid", "S", i) for i in range(elt.size)] + [("mid", "T", i) for i in range(elt.size)]
    paths, loops = _trace(adj, outer, middle)
    coeff = 1
    for payloads in loops:
        labs = [e.payload for e in payloads if e.payload is not None]
        if sum(labs) > 0:
            return None
        coeff = coeff * dim_v % p
    labels = [0] * nu
    sigma = [0] * nv
    for start, end, payloads in paths:
        if start[0] == "U":
            start, end = end, start
        assert start[0] == "V" and end[0] == "U"
        c, total = dp_coeff(e.payload for e in payloads if e.payload is not None)
        coeff = coeff * c % p
        labels[end[1]] = total
        sigma[start[1]] = end[1]
    if coeff == 0:
        return None
    return coeff, LabeledBasisElement(tuple(labels), tuple(sigma))


def evaluation_diagram(n: int, s: int, t: int) -> WalledDiagram:
    """The diagram (n, n) -> (n-1, n-1) capping s with t, identity elsewhere (order preserving)."""
    if not (0 <= s < n and 0 <= t < n):
        raise ValueError("s or t not in shape")
    left = [(i, i - (i > s)) for i in range(n) if i != s]
    right = [(j, j - (j > t)) for j in range(n) if j != t]
    return WalledDiagram((n, n), (n - 1, n - 1), left, right, [(s, t)], [])


def delta(s: int, t: int, x: LabeledBasisElement, dim_v: int, p: int) -> FpCombination:
    """Closed form of capping point s of S with point t of T."""
    n = x.size
    if not (0 <= s < n and 0 <= t < n):
        raise ValueError("s or t not in shape")
    labels, sigma = list(x.labels), list(x.sigma)
    coeff = 1
    if sigma[t] == s:
        if labels[s] > 0:
            return FpCombination(p)
        coeff = dim_v
    else:
        s2 = sigma[t]
        t2 = sigma.index(s)
        coeff = math.comb(labels[s] + labels[s2], labels[s])
        labels[s2] += labels[s]
        sigma[t2] = s2
    new_labels = [labels[i] for i in range(n) if i != s]
    new_sigma = [sigma[j] - (sigma[j] > s) for j in range(n) if j != t]
    return FpCombination.single(LabeledBasisElement(tuple(new_labels), tuple(new_sigma)), p, coeff)


def uwbr_action(f: dict[int, int], g: dict[int, int], m: dict[int, int], nu: int, x: LabeledBasisElement) -> LabeledBasisElement:
    """Upward walled Brauer action: injections f: S -> U, g: T -> V and m: U - f(S) -> V - g(T).

    Labels extend by zero; the new matching is f o sigma o g^-1 on g(T) and
    m^-1 on the complement.
    """
    labels = [0] * nu
    for s, u in f.items():
        labels[u] = x.labels[s]
    sigma = [0] * nu
    for t, v in g.items():
        sigma[v] = f[x.sigma[t]]
    for u, v in m.items():
        sigma[v] = u
    return LabeledBasisElement(tuple(labels), tuple(sigma))


def uwbr_diagram(f: dict[int, int], g: dict[int, int], m: dict[int, int], n: int, nu: int) -> WalledDiagram:
    """The walled diagram (n, n) -> (nu, nu) with through strands f, g and cups m."""
    return WalledDiagram((n, n), (nu, nu), f.items(), g.items(), [], m.items())


def labeled_basis(n: int, total: int) -> list[LabeledBasisElement]:
    """All (ell, sigma) on n points with sum(ell) = total, canonical order."""
    out = []
    for labels in compositions(total, n):
        for sigma in itertools.permutations(range(n)):
            out.append(LabeledBasisElement(labels, sigma))
    out.sort()
    return out


def compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` non-negative parts, lexicographic."""
    if parts == 0:
        return [()] if total == 0 else []
    out = []
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        comp = []
        for b in bars:
            comp.append(b - prev - 1)
            prev = b
        comp.append(total + parts - 2 - prev)
        out.append(tuple(comp))
    out.sort()
    return out
