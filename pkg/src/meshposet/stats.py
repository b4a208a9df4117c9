"""Exact and sampled containment probabilities for random mesh patterns.

Random model: a uniform permutation of length n, each of the (n+1)^2 boxes
shaded independently with probability q (default 1/2). Samples are drawn in
fixed-size blocks, block ``b`` seeded from ``(seed, b)``, so results do not
depend on how blocks are spread over workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from statistics import NormalDist

import numpy as np

from .containment import occurs
from .errors import PreconditionFailed, TooLarge
from .pattern import MeshPattern, all_boxes

MODEL = "uniform permutation, i.i.d. Bernoulli(q) box shading"
BLOCK = 1024
Z95 = NormalDist().inv_cdf(0.975)

FORBIDDEN_SINGLETONS = tuple(MeshPattern((1,), frozenset({b})) for b in [(0, 0), (1, 0), (0, 1), (1, 1)])


@dataclass(frozen=True)
class Estimate:
    value: float
    half_width: float
    samples: int
    seed: int
    low: float
    high: float
    hits: int
    model: str = MODEL


def wilson(hits: int, samples: int, z: float = Z95) -> tuple[float, float]:
    """Wilson score interval (low, high)."""
    p = hits / samples
    denom = 1 + z * z / samples
    centre = (p + z * z / (2 * samples)) / denom
    half = z * math.sqrt(p * (1 - p) / samples + z * z / (4 * samples * samples)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


def _estimate(hits: int, samples: int, seed: int) -> Estimate:
    low, high = wilson(hits, samples)
    return Estimate(hits / samples, (high - low) / 2, samples, seed, low, high, hits)


def random_arrays(n: int, q: float, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Permutation values (1-based) and an (n+1, n+1) shading mask indexed [x, y]."""
    perm = rng.permutation(n) + 1
    mask = rng.random((n + 1, n + 1)) < q
    return perm, mask


def _corner_hits(perm: np.ndarray, mask: np.ndarray) -> bool:
    """Does some point have a point-free, fully shaded quadrant?"""
    n = len(perm)
    if n == 0:
        return False
    grid = np.zeros((n + 2, n + 2), dtype=np.int32)
    grid[1:, 1:] = mask.cumsum(0).cumsum(1)

    def rect(x0, x1, y0, y1):
        # shaded boxes with x0 <= x < x1 and y0 <= y < y1
        return grid[x1, y1] - grid[x0, y1] - grid[x1, y0] + grid[x0, y0]

    k = np.arange(1, n + 1)
    v = perm
    inf = n + 1
    before_min = np.minimum.accumulate(np.concatenate(([inf], v[:-1])))
    before_max = np.maximum.accumulate(np.concatenate(([0], v[:-1])))
    after_min = np.minimum.accumulate(np.concatenate((v[1:], [inf]))[::-1])[::-1]
    after_max = np.maximum.accumulate(np.concatenate((v[1:], [0]))[::-1])[::-1]
    top = n + 1
    quadrants = [
        (before_min > v, rect(0, k, 0, v), k * v),
        (after_min > v, rect(k, top, 0, v), (top - k) * v),
        (before_max < v, rect(0, k, v, top), k * (top - v)),
        (after_max < v, rect(k, top, v, top), (top - k) * (top - v)),
    ]
    return any(bool(np.any(free & (count == area))) for free, count, area in quadrants)


def contains_forbidden_singleton(p: MeshPattern) -> bool:
    """Does p contain one of the four singletons with one shaded corner box?"""
    if len(p) < 1:
        raise PreconditionFailed("need a pattern with at least one point")
    n = len(p)
    mask = np.zeros((n + 1, n + 1), dtype=bool)
    for x, y in p.shading:
        mask[x, y] = True
    return _corner_hits(np.array(p.perm), mask)


def exact_proportion(n: int) -> Fraction:
    """Share of all n! 2^((n+1)^2) patterns that contain a forbidden singleton."""
    if n not in (1, 2, 3):
        raise TooLarge(f"exact enumeration is limited to n <= 3, got {n}")
    boxes = all_boxes(n)
    index = {b: i for i, b in enumerate(boxes)}
    masks = np.arange(1 << len(boxes), dtype=np.int64)
    hits = 0
    for perm in permutations(range(1, n + 1)):
        need = []
        for k, v in enumerate(perm, start=1):
            for (cx, cy) in [(0, 0), (1, 0), (0, 1), (1, 1)]:
                xs = range(0, k) if cx == 0 else range(k, n + 1)
                ys = range(0, v) if cy == 0 else range(v, n + 1)
                # the quadrant must not hold another point
                if any(
                    a != k and (a < k) == (cx == 0) and (w < v) == (cy == 0)
                    for a, w in enumerate(perm, start=1)
                ):
                    continue
                need.append(sum(1 << index[(x, y)] for x in xs for y in ys))
        covered = np.zeros(len(masks), dtype=bool)
        for r in need:
            covered |= (masks & r) == r
        hits += int(covered.sum())
    total = math.factorial(n) * (1 << len(boxes))
    return Fraction(hits, total)


def _block_hits(args) -> int:
    kind, n, q, seed, block, count, pattern = args
    rng = np.random.default_rng([seed, block])
    hits = 0
    for _ in range(count):
        perm, mask = random_arrays(n, q, rng)
        if kind == "forbidden":
            hit = _corner_hits(perm, mask)
        else:
            xs, ys = np.nonzero(mask)
            host = MeshPattern(tuple(perm.tolist()), frozenset(zip(xs.tolist(), ys.tolist())))
            if kind == "pattern":
                hit = occurs(pattern, host)
            else:  # zero-Möbius hypothesis for s = 1
                hit = n >= 2 and bool(host.shading) and not _corner_hits(perm, mask)
        hits += bool(hit)
    return hits


def _run(kind, n, samples, seed, q=0.5, pattern=None, workers=1) -> Estimate:
    if samples < 1:
        raise ValueError("need at least one sample")
    jobs = []
    for block in range(math.ceil(samples / BLOCK)):
        count = min(BLOCK, samples - block * BLOCK)
        jobs.append((kind, n, q, seed, block, count, pattern))
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            hits = sum(pool.map(_block_hits, jobs))
    else:
        hits = sum(map(_block_hits, jobs))
    return _estimate(hits, samples, seed)


def estimate_proportion(n: int, samples: int = 10_000, seed: int = 0, q: float = 0.5, workers: int = 1) -> Estimate:
    """Monte-Carlo share of random length-n patterns holding a forbidden singleton."""
    return _run("forbidden", n, samples, seed, q, workers=workers)


def estimate_pattern_containment(
    m: MeshPattern, n: int, samples: int = 10_000, seed: int = 0, q: float = 0.5, workers: int = 1
) -> Estimate:
    return _run("pattern", n, samples, seed, q, pattern=m, workers=workers)


def estimate_zero_mobius_fraction(n: int, samples: int = 10_000, seed: int = 0, q: float = 0.5) -> Estimate:
    """Share of random patterns to which the zero-Möbius criterion (s = 1) applies."""
    return _run("zero", n, samples, seed, q)


def bound(n: int) -> float:
    return 8 / n


def report_rows(ns, samples: int = 10_000, seed: int = 0, q: float = 0.5) -> list[dict]:
    rows = []
    for n in ns:
        est = estimate_proportion(n, samples, seed, q)
        rows.append(
            {"n": n, "samples": samples, "value": est.value, "half_width": est.half_width, "bound_8_over_n": bound(n)}
        )
    return rows


def to_tsv(rows: list[dict]) -> str:
    header = ["n", "samples", "value", "half_width", "bound_8_over_n"]
    lines = [f"# model: {MODEL}", "\t".join(header)]
    for row in rows:
        lines.append("\t".join(f"{row[h]:.6f}" if isinstance(row[h], float) else str(row[h]) for h in header))
    return "\n".join(lines) + "\n"
