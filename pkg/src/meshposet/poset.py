"""Intervals of the mesh pattern poset and their combinatorial topology.

Intervals are enumerated from the top down: every pattern below ``p`` is a
flattened subsequence of ``p`` carrying a subset of its maximal induced
shading. Order tests inside an interval are membership tests in cached
down-sets.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .containment import contains, max_induced_shading, mesh_occurrences, boxes_used, merges_shadings
from .errors import BudgetExceeded, NotACover, NotComparable, PreconditionFailed
from .pattern import MeshPattern, all_boxes, delete_point, direct_sum, flatten, is_indecomposable

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 2_000_000
DEFAULT_MAX_LEN = 7
DEFAULT_SHELLING_CAP = 8


# -- enumeration ------------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def _downset(p: MeshPattern, budget: int, min_len: int = 0) -> frozenset[MeshPattern]:
    found: set[MeshPattern] = set()
    emitted = 0
    n = len(p)
    for k in range(min_len, n + 1):
        for eta in combinations(range(1, n + 1), k):
            sigma = flatten([p.perm[q - 1] for q in eta])
            allowed = sorted(max_induced_shading(eta, p))
            emitted += 1 << len(allowed)
            if emitted > budget:
                raise BudgetExceeded(f"more than {budget} candidate patterns below {p}")
            for r in range(len(allowed) + 1):
                for shading in combinations(allowed, r):
                    found.add(MeshPattern(sigma, frozenset(shading)))
    return frozenset(found)


def patterns_below(
    p: MeshPattern, min_len: int = 0, budget: int = DEFAULT_BUDGET, max_len: int = DEFAULT_MAX_LEN
) -> frozenset[MeshPattern]:
    """All q with ``len(q) >= min_len`` and ``q <= p``."""
    if len(p) > max_len:
        raise BudgetExceeded(f"{p} is longer than the configured maximum {max_len}")
    return _downset(p, budget, min_len)


@dataclass(frozen=True)
class Interval:
    bottom: MeshPattern
    top: MeshPattern
    elements: tuple[MeshPattern, ...]
    covers: frozenset[tuple[MeshPattern, MeshPattern]]
    below: dict = field(repr=False, compare=False)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, q):
        return q in self.below

    def leq(self, a: MeshPattern, b: MeshPattern) -> bool:
        return a in self.below[b]

    def lt(self, a: MeshPattern, b: MeshPattern) -> bool:
        return a != b and a in self.below[b]

    @property
    def interior(self) -> tuple[MeshPattern, ...]:
        return tuple(e for e in self.elements if e != self.bottom and e != self.top)

    def upper_covers(self, a):
        return sorted((b for x, b in self.covers if x == a), key=MeshPattern.sort_key)

    def lower_covers(self, b):
        return sorted((a for a, y in self.covers if y == b), key=MeshPattern.sort_key)


def _build(elements: Iterable[MeshPattern], below_of) -> tuple[tuple, frozenset, dict]:
    elements = tuple(sorted(set(elements), key=MeshPattern.sort_key))
    members = set(elements)
    below = {e: frozenset(q for q in below_of(e) if q in members) for e in elements}
    covers = set()
    for b in elements:
        lower = [a for a in below[b] if a != b]
        for a in lower:
            if not any(c != a and a in below[c] for c in lower):
                covers.add((a, b))
    return elements, frozenset(covers), below


def interval(
    m: MeshPattern, p: MeshPattern, budget: int = DEFAULT_BUDGET, max_len: int = DEFAULT_MAX_LEN
) -> Interval:
    if not contains(m, p):
        raise NotComparable(f"{m} does not occur in {p}")
    if len(m) == len(p):
        return _same_length_interval(m, p)
    candidates = [q for q in patterns_below(p, len(m), budget, max_len) if contains(m, q)]
    elements, covers, below = _build(candidates, lambda e: patterns_below(e, len(m), budget, max_len))
    return Interval(m, p, elements, covers, below)


def _same_length_interval(m: MeshPattern, p: MeshPattern) -> Interval:
    # equal lengths force equal permutations, so only shadings between the two vary
    free = sorted(p.shading - m.shading)
    elements = [
        MeshPattern(p.perm, m.shading | frozenset(extra))
        for r in range(len(free) + 1)
        for extra in combinations(free, r)
    ]
    elements, covers, below = _build(
        elements, lambda e: [q for q in elements if q.shading <= e.shading]
    )
    return Interval(m, p, elements, covers, below)


def subinterval(I: Interval, a: MeshPattern, b: MeshPattern) -> Interval:
    if not I.leq(a, b):
        raise NotComparable(f"{a} is not below {b} in this interval")
    elements = [e for e in I.below[b] if I.leq(a, e)]
    elements, covers, below = _build(elements, lambda e: I.below[e])
    return Interval(a, b, elements, covers, below)


# -- Möbius function --------------------------------------------------------

def interval_mobius(I: Interval) -> dict[MeshPattern, int]:
    """μ(bottom, x) for every x in the interval."""
    mu: dict[MeshPattern, int] = {}
    for x in I.elements:  # sorted by dimension, so every c < x comes first
        if x == I.bottom:
            mu[x] = 1
        else:
            mu[x] = -sum(mu[c] for c in I.below[x] if c != x)
    return mu


def mobius(m: MeshPattern, p: MeshPattern, budget: int = DEFAULT_BUDGET, max_len: int = DEFAULT_MAX_LEN) -> int:
    if not contains(m, p):
        return 0
    return interval_mobius(interval(m, p, budget, max_len))[p]


def mobius_via_chains(
    m: MeshPattern, p: MeshPattern, budget: int = DEFAULT_BUDGET, max_len: int = DEFAULT_MAX_LEN
) -> int:
    """Signed count of chains m = c0 < ... < ck = p (Philip Hall).

    Comparabilities come from fresh occurrence searches, not from the
    interval's cached down-sets.
    """
    elements = interval(m, p, budget, max_len).elements
    # chains[x][k] = number of chains of length k from m to x
    chains: dict[MeshPattern, Counter] = {}
    for x in elements:
        if x == m:
            chains[x] = Counter({0: 1})
            continue
        acc: Counter = Counter()
        for c in elements:
            if c == x:
                break
            if mesh_occurrences(c, x):
                for k, count in chains[c].items():
                    acc[k + 1] += count
        chains[x] = acc
    return sum((-1) ** k * count for k, count in chains[p].items())


# -- chains and purity ------------------------------------------------------

@dataclass(frozen=True)
class ChainStats:
    lengths: dict[int, int]
    dimension: int
    is_pure: bool


def chain_stats(I: Interval) -> ChainStats:
    """Histogram of maximal-chain lengths (edges from bottom to top)."""
    hist: dict[MeshPattern, Counter] = {}
    for x in I.elements:
        if x == I.bottom:
            hist[x] = Counter({0: 1})
            continue
        acc: Counter = Counter()
        for a in I.lower_covers(x):
            for k, c in hist[a].items():
                acc[k + 1] += c
        hist[x] = acc
    lengths = dict(sorted(hist[I.top].items()))
    return ChainStats(lengths, max(lengths), len(lengths) == 1)


def formula_dimension(m: MeshPattern) -> int:
    """Longest-chain value stated for [1^∅, m]: |perm| + |shading|."""
    return m.dim


def interval_dimension_bottom(m: MeshPattern, budget: int = DEFAULT_BUDGET) -> dict:
    """The formula value next to the computed longest chain of [1^∅, m].

    The formula counts points plus shaded boxes; the chain has one edge per
    step, and the walk from m down to 1^∅ deletes all but one point, so the
    computed value is one less. Both are reported, neither is adjusted.
    """
    if len(m) < 1:
        raise PreconditionFailed("need a pattern with at least one point")
    computed = chain_stats(interval(MeshPattern((1,)), m, budget)).dimension
    return {
        "formula": formula_dimension(m),
        "computed": computed,
        "offset": computed - formula_dimension(m),
        "note": "formula counts |perm|+|shading|; computed value counts cover edges from 1^∅",
    }


def is_impure_edge(a: MeshPattern, b: MeshPattern, I: Interval) -> bool:
    if (a, b) not in I.covers:
        raise NotACover(f"{a} is not covered by {b} in this interval")
    return b.dim - a.dim > 1


def _merge_deletions(p: MeshPattern):
    """(x, p∖x, occ, used boxes) for every point x whose deletion merges shadings."""
    for x in range(1, len(p) + 1):
        if merges_shadings(p, x):
            small, occ = delete_point(p, x)
            yield x, small, occ, boxes_used(occ, small, p)


def _no_rival(small: MeshPattern, occ, used, p: MeshPattern) -> bool:
    # a rival uses strictly fewer boxes; equal use still yields the impure edge
    for eta in mesh_occurrences(small, p):
        if eta != occ and boxes_used(eta, small, p) < used:
            return False
    return True


def classify_impure_edge(a: MeshPattern, b: MeshPattern) -> bool:
    """Impure-edge test from occurrences alone.

    Every occurrence of ``a`` in ``b`` must use all shaded boxes of ``b`` and
    skip a point whose deletion merges shadings.
    """
    if len(b) != len(a) + 1:
        return False
    occurrences = mesh_occurrences(a, b)
    if not occurrences:
        return False
    for eta in occurrences:
        if boxes_used(eta, a, b) != b.shading:
            return False
        (x,) = set(range(1, len(b) + 1)) - set(eta)
        if not merges_shadings(b, x):
            return False
    return True


def nonpurity_witnesses(m: MeshPattern) -> list[dict]:
    """Points of ``m`` whose deletion merges shadings with no rival occurrence."""
    found = []
    for x, small, occ, used in _merge_deletions(m):
        if _no_rival(small, occ, used, m):
            found.append({"point": x, "deleted": small, "occurrence": occ, "used": used})
    return found


def is_nonpure_from_singleton(m: MeshPattern) -> bool:
    if len(m) < 1:
        raise PreconditionFailed("need a pattern with at least one point")
    return bool(nonpurity_witnesses(m))


def has_impure_edge(m: MeshPattern, p: MeshPattern) -> bool:
    for x, small, occ, used in _merge_deletions(p):
        if _no_rival(small, occ, used, p) and contains(m, small):
            return True
    return False


def impure_edges(I: Interval) -> list[tuple[MeshPattern, MeshPattern]]:
    return sorted(
        ((a, b) for a, b in I.covers if b.dim - a.dim > 1),
        key=lambda e: (e[1].sort_key(), e[0].sort_key()),
    )


# -- connectivity -----------------------------------------------------------

def components(I: Interval) -> list[frozenset[MeshPattern]]:
    """Connected components of the comparability graph of the open interval."""
    inner = I.interior
    seen: set[MeshPattern] = set()
    parts = []
    for start in inner:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in inner:
                if y not in comp and (I.leq(x, y) or I.leq(y, x)):
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        parts.append(frozenset(comp))
    return parts


def is_disconnected(I: Interval) -> bool:
    return len(components(I)) >= 2


def is_strongly_disconnected(I: Interval) -> bool:
    return sum(1 for c in components(I) if len(c) >= 2) >= 2


def is_chain(I: Interval) -> bool:
    return all(I.leq(a, b) or I.leq(b, a) for a, b in combinations(I.elements, 2))


def strongly_disconnected_subintervals(I: Interval) -> list[Interval]:
    """Every strongly disconnected [a, b] inside ``I``, smallest first."""
    found = []
    for b in I.elements:
        for a in I.below[b]:
            if b.dim - a.dim < 3:
                continue
            sub = subinterval(I, a, b)
            if is_strongly_disconnected(sub):
                found.append(sub)
    found.sort(key=lambda s: (len(s), s.bottom.sort_key(), s.top.sort_key()))
    return found


def strongly_disconnected_sum(m: MeshPattern, budget: int = DEFAULT_BUDGET) -> Interval:
    if not is_indecomposable(m):
        raise PreconditionFailed(f"{m} is decomposable")
    if m.dim <= 1:
        raise PreconditionFailed(f"{m} has dimension {m.dim}")
    if (0, 0) in m.shading or (len(m), len(m)) in m.shading:
        raise PreconditionFailed(f"{m} has a shaded corner")
    I = interval(m, direct_sum(m, m), budget)
    if not is_strongly_disconnected(I):
        log.warning("[%s, %s] is not strongly disconnected", m, direct_sum(m, m))
    return I


# -- order complex and shellings --------------------------------------------

@dataclass(frozen=True)
class OrderComplex:
    vertices: tuple[MeshPattern, ...]
    facets: tuple[frozenset[MeshPattern], ...]


def maximal_chains(I: Interval, limit: int | None = None) -> list[tuple[MeshPattern, ...]]:
    chains = []
    up = {e: I.upper_covers(e) for e in I.elements}

    def walk(path):
        if limit is not None and len(chains) > limit:
            raise BudgetExceeded(f"more than {limit} maximal chains")
        x = path[-1]
        if x == I.top:
            chains.append(tuple(path))
            return
        for y in up[x]:
            walk(path + [y])

    walk([I.bottom])
    return chains


def order_complex(I: Interval, limit: int | None = 100_000) -> OrderComplex:
    if I.bottom == I.top:
        return OrderComplex((), ())
    facets = [frozenset(c[1:-1]) for c in maximal_chains(I, limit)]
    facets = tuple(f for f in facets if f)
    return OrderComplex(I.interior, facets)


def complex_components(C: OrderComplex) -> list[frozenset]:
    parent = {v: v for v in C.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for f in C.facets:
        f = list(f)
        for v in f[1:]:
            parent[find(v)] = find(f[0])
    groups: dict = {}
    for v in C.vertices:
        groups.setdefault(find(v), set()).add(v)
    return [frozenset(g) for g in groups.values()]


def complex_strongly_disconnected(C: OrderComplex) -> bool:
    return sum(1 for g in complex_components(C) if len(g) >= 2) >= 2


def _shell_step_ok(previous: list[frozenset], facet: frozenset, full_overlap: bool) -> bool:
    target = len(facet) if full_overlap else len(facet) - 1
    pieces = [facet & f for f in previous]
    maximal = [g for g in pieces if not any(g < h for h in pieces)]
    return all(len(g) == target for g in maximal)


def find_shelling(
    C: OrderComplex, cap: int = DEFAULT_SHELLING_CAP, full_overlap: bool = False
) -> list[frozenset] | None:
    """A shelling order of the facets, or None when none exists.

    Backtracking search; each new facet must meet the union of the earlier
    ones in a pure subcomplex of codimension one. With ``full_overlap`` the
    intersection must instead have the full dimension of the facet.
    """
    facets = sorted(C.facets, key=lambda f: (-len(f), sorted(v.sort_key() for v in f)))
    if len(facets) <= 1:
        return list(facets)
    if complex_strongly_disconnected(C):
        return None
    if len(facets) > cap:
        raise BudgetExceeded(f"{len(facets)} facets exceed the shelling cap {cap}")

    order: list[frozenset] = []
    used = [False] * len(facets)

    def extend() -> bool:
        if len(order) == len(facets):
            return True
        for i, f in enumerate(facets):
            if used[i]:
                continue
            if order and not _shell_step_ok(order, f, full_overlap):
                continue
            used[i] = True
            order.append(f)
            if extend():
                return True
            order.pop()
            used[i] = False
        return False

    return list(order) if extend() else None


# -- export -----------------------------------------------------------------

def interval_report(I: Interval) -> dict:
    stats = chain_stats(I)
    mu = interval_mobius(I)
    comps = components(I)
    return {
        "bottom": str(I.bottom),
        "top": str(I.top),
        "elements": [str(e) for e in I.elements],
        "covers": sorted([str(a), str(b)] for a, b in I.covers),
        "mobius": {str(e): mu[e] for e in I.elements},
        "stats": {
            "dimension": stats.dimension,
            "pure": stats.is_pure,
            "chain_lengths": {str(k): v for k, v in stats.lengths.items()},
            "components": len(comps),
            "nontrivial_components": sum(1 for c in comps if len(c) >= 2),
            "strongly_disconnected": sum(1 for c in comps if len(c) >= 2) >= 2,
        },
    }


def to_dot(I: Interval) -> str:
    lines = ["digraph interval {", "  rankdir=BT;"]
    ids = {e: f"n{i}" for i, e in enumerate(I.elements)}
    ranks: dict = {}
    for e in I.elements:
        lines.append(f'  {ids[e]} [label="{e}"];')
        ranks.setdefault((len(e), len(e.shading)), []).append(ids[e])
    for key in sorted(ranks):
        lines.append("  { rank=same; " + " ".join(ranks[key]) + "; }")
    for a, b in sorted(I.covers, key=lambda c: (c[0].sort_key(), c[1].sort_key())):
        lines.append(f"  {ids[a]} -> {ids[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- bulk Möbius values over every shading of one permutation ---------------

@lru_cache(maxsize=None)
def _shading_table(perm: tuple[int, ...]) -> tuple[int, ...]:
    """μ(1^∅, perm^S) for every S, indexed by the bitmask of S over `all_boxes`.

    Fixing the permutation, the patterns below perm^S are the perm^T with
    T ⊆ S plus shorter patterns, and each shorter one lies below some
    perm^S∖x. Summing μ over the shorter part gives h(S); the defining
    recursion then reads Σ_{T⊆S} μ(perm^T) = -h(S), inverted over subsets.
    """
    n = len(perm)
    boxes = all_boxes(n)
    size = 1 << len(boxes)
    if n == 1:
        return tuple((-1) ** bin(s).count("1") for s in range(size))
    h = [0] * size
    for s in range(size):
        p = MeshPattern(perm, frozenset(b for i, b in enumerate(boxes) if s >> i & 1))
        shorter: set[MeshPattern] = set()
        for x in range(1, n + 1):
            shorter |= patterns_below(delete_point(p, x)[0], 1)
        h[s] = sum(_singleton_mu(c) for c in shorter)
    g = [-v for v in h]
    for i in range(len(boxes)):
        bit = 1 << i
        for s in range(size):
            if s & bit:
                g[s] -= g[s ^ bit]
    return tuple(g)


def _mask(m: MeshPattern) -> int:
    index = {b: i for i, b in enumerate(all_boxes(len(m)))}
    return sum(1 << index[b] for b in m.shading)


def _singleton_mu(c: MeshPattern) -> int:
    return _shading_table(c.perm)[_mask(c)]


def mobius_from_singleton(p: MeshPattern) -> int:
    """μ(1^∅, p) through the per-permutation shading table (lengths up to 3)."""
    if len(p) == 0:
        return 0
    if len(p) > 3:
        raise BudgetExceeded("the shading table is only built for patterns of length <= 3")
    return _singleton_mu(p)


def zero_mobius_hypothesis(s: tuple[int, ...], p: MeshPattern) -> bool:
    """No s^B with B nonempty strictly between s^∅ and p, and p has shading.

    Checking single boxes suffices: any s^B in the open interval sits
    above the s^{b} for b in B.
    """
    bottom = MeshPattern(tuple(s))
    if not p.shading or not contains(bottom, p) or p == bottom:
        return False
    for b in all_boxes(len(s)):
        q = MeshPattern(tuple(s), frozenset({b}))
        if q != p and contains(q, p):
            return False
    return True
