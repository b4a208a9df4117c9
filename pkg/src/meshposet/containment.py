"""Occurrences of permutations and mesh patterns, and the region calculus.

Positions are 1-based throughout. Occurrences are enumerated in
lexicographic order of their position tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

from .errors import InvalidOccurrence, NotAnOccurrence
from .pattern import Box, MeshPattern, delete_point, flatten

Occurrence = tuple[int, ...]


@dataclass(frozen=True)
class Region:
    boxes: frozenset[Box]
    interior_points: frozenset[int]


def _iter_classical(small: Sequence[int], host: Sequence[int]) -> Iterator[Occurrence]:
    k = len(small)
    small = tuple(small)
    for positions in combinations(range(1, len(host) + 1), k):
        if flatten([host[p - 1] for p in positions]) == small:
            yield positions


def classical_occurrences(small: Sequence[int], host: Sequence[int]) -> list[Occurrence]:
    return list(_iter_classical(small, host))


def _bounds(eta: Occurrence, host: Sequence[int]) -> tuple[list[int], list[int]]:
    n = len(host)
    cols = [0, *eta, n + 1]
    rows = [0, *sorted(host[p - 1] for p in eta), n + 1]
    return cols, rows


def _region(cols, rows, host, box) -> Region:
    i, j = box
    c0, c1 = cols[i], cols[i + 1]
    r0, r1 = rows[j], rows[j + 1]
    boxes = frozenset((a, c) for a in range(c0, c1) for c in range(r0, r1))
    inside = frozenset(a for a in range(c0 + 1, c1) if r0 < host[a - 1] < r1)
    return Region(boxes, inside)


def _check_occurrence(eta: Occurrence, host: Sequence[int]) -> None:
    n = len(host)
    if any(not 1 <= p <= n for p in eta) or any(a >= b for a, b in zip(eta, eta[1:])):
        raise InvalidOccurrence(f"{eta} is not a strictly increasing position sequence in 1..{n}")


def region(eta: Occurrence, host: MeshPattern, box: Box) -> Region:
    """The block of host boxes standing for small box ``box`` under ``eta``."""
    eta = tuple(eta)
    _check_occurrence(eta, host.perm)
    k = len(eta)
    i, j = box
    if not (0 <= i <= k and 0 <= j <= k):
        raise InvalidOccurrence(f"box {box} lies outside the grid of a length-{k} pattern")
    cols, rows = _bounds(eta, host.perm)
    return _region(cols, rows, host.perm, box)


def _region_ok(cols, rows, host_perm, host_shading, box) -> bool:
    i, j = box
    c0, c1 = cols[i], cols[i + 1]
    r0, r1 = rows[j], rows[j + 1]
    for a in range(c0 + 1, c1):
        if r0 < host_perm[a - 1] < r1:
            return False
    if host_shading is None:
        return True
    for a in range(c0, c1):
        for c in range(r0, r1):
            if (a, c) not in host_shading:
                return False
    return True


def mesh_in_perm_occurrences(m: MeshPattern, host: Sequence[int]) -> list[Occurrence]:
    host = tuple(host)
    found = []
    for eta in _iter_classical(m.perm, host):
        cols, rows = _bounds(eta, host)
        if all(_region_ok(cols, rows, host, None, b) for b in m.shading):
            found.append(eta)
    return found


def _iter_mesh(m: MeshPattern, p: MeshPattern) -> Iterator[Occurrence]:
    for eta in _iter_classical(m.perm, p.perm):
        cols, rows = _bounds(eta, p.perm)
        if all(_region_ok(cols, rows, p.perm, p.shading, b) for b in m.shading):
            yield eta


def mesh_occurrences(m: MeshPattern, p: MeshPattern) -> list[Occurrence]:
    return list(_iter_mesh(m, p))


def occurs(m: MeshPattern, p: MeshPattern) -> bool:
    """True when ``m`` occurs in ``p``, i.e. ``m <= p`` in the mesh pattern poset."""
    if len(m) > len(p) or len(m.shading) > len(p.shading):
        return False
    if len(m) == len(p):
        return m.perm == p.perm and m.shading <= p.shading
    return next(_iter_mesh(m, p), None) is not None


# Interval work asks the same questions many times; sampling code should call
# `occurs` directly so random hosts do not churn this cache.
contains = lru_cache(maxsize=1 << 20)(occurs)


def is_mesh_occurrence(eta: Occurrence, m: MeshPattern, p: MeshPattern) -> bool:
    eta = tuple(eta)
    if len(eta) != len(m):
        return False
    _check_occurrence(eta, p.perm)
    if flatten([p.perm[q - 1] for q in eta]) != m.perm:
        return False
    cols, rows = _bounds(eta, p.perm)
    return all(_region_ok(cols, rows, p.perm, p.shading, b) for b in m.shading)


def boxes_used(eta: Occurrence, m: MeshPattern, p: MeshPattern) -> frozenset[Box]:
    """Shaded boxes of ``p`` lying in the region of some shaded box of ``m``."""
    eta = tuple(eta)
    if not is_mesh_occurrence(eta, m, p):
        raise NotAnOccurrence(f"{eta} is not an occurrence of {m} in {p}")
    cols, rows = _bounds(eta, p.perm)
    used = set()
    for b in m.shading:
        used |= _region(cols, rows, p.perm, b).boxes
    return frozenset(used & p.shading)


def occurrence_uses_box(eta: Occurrence, m: MeshPattern, p: MeshPattern, box: Box) -> bool:
    return tuple(box) in boxes_used(eta, m, p)


def max_induced_shading(eta: Occurrence, p: MeshPattern) -> frozenset[Box]:
    """Small boxes whose region under ``eta`` is point-free and fully shaded in ``p``.

    The pattern ``(flatten(eta), S)`` occurs in ``p`` via ``eta`` exactly for
    the subsets ``S`` of this set.
    """
    eta = tuple(eta)
    _check_occurrence(eta, p.perm)
    k = len(eta)
    cols, rows = _bounds(eta, p.perm)
    return frozenset(
        (i, j)
        for i in range(k + 1)
        for j in range(k + 1)
        if _region_ok(cols, rows, p.perm, p.shading, (i, j))
    )


def merges_shadings(m: MeshPattern, x: int) -> bool:
    """Whether deleting point ``x`` folds two or more shaded boxes of ``m`` into one."""
    small, occ = delete_point(m, x)
    for b in small.shading:
        if len(region(occ, m, b).boxes & m.shading) >= 2:
            return True
    return False


def merged_boxes(m: MeshPattern, x: int) -> dict[Box, frozenset[Box]]:
    small, occ = delete_point(m, x)
    merged = {}
    for b in sorted(small.shading):
        hit = region(occ, m, b).boxes & m.shading
        if len(hit) >= 2:
            merged[b] = hit
    return merged
