"""Mesh patterns: representation, text format and structural operations.

A mesh pattern is a permutation in one-line notation together with a set of
shaded boxes of its (n+1) x (n+1) grid. Box ``(x, y)`` is indexed by its
south-west corner, so column ``x`` lies between the points at positions ``x``
and ``x + 1`` and row ``y`` between the values ``y`` and ``y + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations, permutations
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BoxNotShaded,
    BoxOutOfGrid,
    CornerShaded,
    EmptyPattern,
    NotAPermutation,
    ParseError,
)

Box = tuple[int, int]
Perm = tuple[int, ...]

MAX_LENGTH = 64


def check_permutation(values: Iterable[int]) -> Perm:
    perm = tuple(int(v) for v in values)
    n = len(perm)
    if n > MAX_LENGTH:
        raise NotAPermutation(f"length {n} exceeds the supported maximum {MAX_LENGTH}")
    if sorted(perm) != list(range(1, n + 1)):
        raise NotAPermutation(f"{perm} is not a permutation of 1..{n}")
    return perm


@dataclass(frozen=True)
class MeshPattern:
    perm: Perm
    shading: frozenset[Box] = frozenset()

    def __post_init__(self):
        perm = check_permutation(self.perm)
        n = len(perm)
        shading = frozenset((int(x), int(y)) for x, y in self.shading)
        for x, y in shading:
            if not (0 <= x <= n and 0 <= y <= n):
                raise BoxOutOfGrid(f"box ({x},{y}) lies outside the {n + 1}x{n + 1} grid")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "shading", shading)

    def __len__(self) -> int:
        return len(self.perm)

    @property
    def dim(self) -> int:
        return len(self.perm) + len(self.shading)

    def is_shaded(self, box: Box) -> bool:
        return box in self.shading

    def sort_key(self):
        return (len(self.perm), len(self.shading), self.perm, tuple(sorted(self.shading)))

    def __str__(self) -> str:
        return canonical_key(self)

    def __repr__(self) -> str:
        return f"MeshPattern({canonical_key(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "MeshPattern":
        return parse_pattern(text)


def new_mesh_pattern(perm: Iterable[int], shading: Iterable[Box] = ()) -> MeshPattern:
    return MeshPattern(tuple(perm), frozenset(shading))


def all_boxes(n: int) -> list[Box]:
    return [(x, y) for x in range(n + 1) for y in range(n + 1)]


def is_fully_shaded(m: MeshPattern) -> bool:
    n = len(m)
    return len(m.shading) == (n + 1) ** 2


def deshade(m: MeshPattern, box: Box) -> MeshPattern:
    box = (int(box[0]), int(box[1]))
    if box not in m.shading:
        raise BoxNotShaded(f"box {box} is not shaded in {m}")
    return MeshPattern(m.perm, m.shading - {box})


def flatten(values: Sequence[int]) -> Perm:
    """Standardise distinct integers to the permutation with the same relative order."""
    ranks = {v: r for r, v in enumerate(sorted(values), start=1)}
    return tuple(ranks[v] for v in values)


def _merged_index(i: int, gap: int) -> tuple[int, ...]:
    # Grid lines of the larger pattern covered by line i once line `gap` is removed.
    if i < gap - 1:
        return (i,)
    if i == gap - 1:
        return (i, i + 1)
    return (i + 1,)


def delete_point(m: MeshPattern, x: int) -> tuple[MeshPattern, tuple[int, ...]]:
    """Delete the point at position ``x`` (1-based).

    The smaller pattern gets the largest shading for which the remaining
    positions still form a mesh occurrence in ``m``: a box is shaded when every
    box of ``m`` it stands for is shaded and the deleted point does not sit
    inside it. Returns the pattern and that occurrence.
    """
    n = len(m)
    if n == 0:
        raise EmptyPattern("cannot delete a point from the empty pattern")
    if not 1 <= x <= n:
        raise IndexError(f"position {x} outside 1..{n}")
    value = m.perm[x - 1]
    rest = m.perm[: x - 1] + m.perm[x:]
    small = tuple(v - (v > value) for v in rest)
    shading = set()
    for i in range(n):
        cols = _merged_index(i, x)
        for j in range(n):
            rows = _merged_index(j, value)
            if len(cols) == 2 and len(rows) == 2:
                # the deleted point lies strictly inside this region
                continue
            if all((a, c) in m.shading for a in cols for c in rows):
                shading.add((i, j))
    occurrence = tuple(k for k in range(1, n + 1) if k != x)
    return MeshPattern(small, frozenset(shading)), occurrence


def _corner_check(s: MeshPattern, t: MeshPattern) -> None:
    if (len(s), len(s)) in s.shading:
        raise CornerShaded(f"top right corner of {s} is shaded")
    if (0, 0) in t.shading:
        raise CornerShaded(f"bottom left corner of {t} is shaded")


def direct_sum(s: MeshPattern, t: MeshPattern) -> MeshPattern:
    """Place ``t`` north-east of ``s``, stretching seam boxes to the new boundary."""
    _corner_check(s, t)
    k = len(s)
    size = k + len(t)
    perm = s.perm + tuple(v + k for v in t.perm)
    shading = set(s.shading)
    shading.update((i + k, j + k) for i, j in t.shading)
    for i in range(k):
        if (i, k) in shading:
            shading.update((i, c) for c in range(k + 1, size + 1))
        if (k, i) in shading:
            shading.update((a, i) for a in range(k + 1, size + 1))
    for j in range(k + 1, size + 1):
        if (j, k) in shading:
            shading.update((j, c) for c in range(k))
        if (k, j) in shading:
            shading.update((a, j) for a in range(k))
    return MeshPattern(perm, frozenset(shading))


def flip(m: MeshPattern) -> MeshPattern:
    """Reflect vertically: complement values and mirror shaded rows."""
    n = len(m)
    return MeshPattern(tuple(n + 1 - v for v in m.perm), frozenset((x, n - y) for x, y in m.shading))


def skew_sum(s: MeshPattern, t: MeshPattern) -> MeshPattern:
    if (len(s), 0) in s.shading:
        raise CornerShaded(f"bottom right corner of {s} is shaded")
    if (0, len(t)) in t.shading:
        raise CornerShaded(f"top left corner of {t} is shaded")
    return flip(direct_sum(flip(s), flip(t)))


def _split(m: MeshPattern, k: int) -> tuple[MeshPattern, MeshPattern] | None:
    n = len(m)
    if max(m.perm[:k]) != k:
        return None
    a = MeshPattern(m.perm[:k], frozenset((x, y) for x, y in m.shading if x <= k and y <= k))
    b = MeshPattern(
        tuple(v - k for v in m.perm[k:]),
        frozenset((x - k, y - k) for x, y in m.shading if x >= k and y >= k),
    )
    if (k, k) in a.shading or (0, 0) in b.shading:
        return None
    if direct_sum(a, b) != m:
        return None
    assert len(a) + len(b) == n
    return a, b


def decompose(m: MeshPattern) -> list[MeshPattern]:
    """Split ``m`` into ⊕-indecomposable parts, leftmost part first.

    A split point is admitted only when re-summing the two halves reproduces
    ``m`` exactly, seam extensions included.
    """
    for k in range(1, len(m)):
        halves = _split(m, k)
        if halves is not None:
            return [halves[0], *decompose(halves[1])]
    return [m]


def refold(parts: Sequence[MeshPattern]) -> MeshPattern:
    return reduce(lambda acc, part: direct_sum(part, acc), reversed(parts[:-1]), parts[-1])


def is_indecomposable(m: MeshPattern) -> bool:
    return len(decompose(m)) == 1


def skew_decompose(m: MeshPattern) -> list[MeshPattern]:
    return [flip(part) for part in decompose(flip(m))]


def is_skew_indecomposable(m: MeshPattern) -> bool:
    return len(decompose(flip(m))) == 1


def descents(perm: Sequence[int]) -> set[int]:
    """Positions i (1-based) with perm[i] > perm[i+1]."""
    return {i for i in range(1, len(perm)) if perm[i - 1] > perm[i]}


def adjacency_tail_positions(perm: Sequence[int]) -> list[int]:
    return [i for i in range(2, len(perm) + 1) if abs(perm[i - 1] - perm[i - 2]) == 1]


def adjacency_tails(perm: Sequence[int]) -> int:
    return len(adjacency_tail_positions(perm))


def gamma_shading(perm: Sequence[int]) -> frozenset[Box]:
    return frozenset((a, 0) for a in range(list(perm).index(1) + 1))


def in_gamma(m: MeshPattern) -> bool:
    """One descent, whose bottom is 1, with the row below 1 shaded up to the point 1."""
    d = descents(m.perm)
    if len(d) != 1:
        return False
    (i,) = d
    return m.perm[i] == 1 and m.shading == gamma_shading(m.perm)


def random_mesh_pattern(n: int, q: float = 0.5, seed=None) -> MeshPattern:
    """Uniform permutation of length n; every box shaded independently with probability q.

    ``seed`` may be an int, a ``numpy.random.Generator`` or None.
    """
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"shading probability {q} outside [0, 1]")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    perm = tuple(int(v) + 1 for v in rng.permutation(n))
    mask = rng.random((n + 1, n + 1)) < q
    xs, ys = np.nonzero(mask)
    return MeshPattern(perm, frozenset(zip(xs.tolist(), ys.tolist())))


def canonical_key(m: MeshPattern) -> str:
    n = len(m)
    if n == 0:
        perm = "e"
    elif n <= 9:
        perm = "".join(str(v) for v in m.perm)
    else:
        perm = ",".join(str(v) for v in m.perm)
    return perm + "|" + ";".join(f"{x},{y}" for x, y in sorted(m.shading))


def parse_pattern(text: str) -> MeshPattern:
    text = text.strip()
    if text.count("|") != 1:
        raise ParseError(f"expected exactly one '|' in {text!r}")
    perm_part, shading_part = text.split("|")
    if perm_part == "e":
        perm: list[int] = []
    elif "," in perm_part:
        perm = []
        for token in perm_part.split(","):
            if not token.isdigit():
                raise ParseError(f"bad permutation entry {token!r}")
            perm.append(int(token))
    else:
        if not perm_part.isdigit():
            raise ParseError(f"bad permutation {perm_part!r}")
        perm = [int(c) for c in perm_part]
    boxes = []
    if shading_part:
        for token in shading_part.split(";"):
            parts = token.split(",")
            if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
                raise ParseError(f"bad box {token!r}")
            boxes.append((int(parts[0]), int(parts[1])))
    return MeshPattern(tuple(perm), frozenset(boxes))


def all_patterns(n: int, max_shaded: int | None = None):
    """Every mesh pattern of length n, optionally capping the number of shaded boxes."""
    boxes = all_boxes(n)
    top = len(boxes) if max_shaded is None else min(max_shaded, len(boxes))
    for perm in permutations(range(1, n + 1)):
        for k in range(top + 1):
            for shading in combinations(boxes, k):
                yield MeshPattern(perm, frozenset(shading))


__all__ = [
    "Box",
    "MeshPattern",
    "new_mesh_pattern",
    "all_boxes",
    "is_fully_shaded",
    "deshade",
    "flatten",
    "delete_point",
    "direct_sum",
    "skew_sum",
    "flip",
    "decompose",
    "skew_decompose",
    "refold",
    "is_indecomposable",
    "is_skew_indecomposable",
    "descents",
    "adjacency_tails",
    "adjacency_tail_positions",
    "gamma_shading",
    "in_gamma",
    "random_mesh_pattern",
    "canonical_key",
    "parse_pattern",
    "all_patterns",
]
