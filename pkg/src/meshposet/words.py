"""Binary words under subword order, and the bijection with the class Γ.

Words are plain strings over ``"01"``.
"""

from __future__ import annotations

from .errors import NoZero, NotContained, NotInGamma
from .pattern import MeshPattern, adjacency_tail_positions, descents, gamma_shading, in_gamma

BOTTOM_GAMMA = MeshPattern((2, 1), frozenset({(0, 0), (1, 0)}))


def _word(w) -> str:
    w = "".join(str(c) for c in w)
    if set(w) - {"0", "1"}:
        raise ValueError(f"{w!r} is not a binary word")
    return w


def subword_contains(u, w) -> bool:
    u, w = _word(u), _word(w)
    it = iter(w)
    return all(c in it for c in u)


def normal_embeddings(u, w) -> int:
    """Embeddings of u into w whose image holds every non-initial letter of each run of w."""
    u, w = _word(u), _word(w)
    k = len(u)
    ways = [1] + [0] * k  # ways[j]: embeddings of u[:j] into the prefix read so far
    for i, letter in enumerate(w):
        forced = i > 0 and w[i - 1] == letter
        nxt = [0] * (k + 1) if forced else list(ways)
        for j in range(k):
            if u[j] == letter:
                nxt[j + 1] += ways[j]
        ways = nxt
    return ways[k]


def mobius_word(u, w) -> int:
    u, w = _word(u), _word(w)
    if not subword_contains(u, w):
        raise NotContained(f"{u!r} is not a subword of {w!r}")
    return (-1) ** (len(w) - len(u)) * normal_embeddings(u, w)


def gamma_to_word(m: MeshPattern) -> str:
    if not in_gamma(m):
        raise NotInGamma(f"{m} is not in Γ")
    before = set(m.perm[: m.perm.index(1)])
    full = "".join("0" if v in before else "1" for v in range(1, len(m) + 1))
    return full[1:]


def word_to_gamma(w) -> MeshPattern:
    w = _word(w)
    if "0" not in w:
        raise NoZero(f"{w!r} has no 0")
    full = "1" + w
    zeros = [i for i, c in enumerate(full, start=1) if c == "0"]
    ones = [i for i, c in enumerate(full, start=1) if c == "1"]
    perm = tuple(zeros + ones)
    return MeshPattern(perm, gamma_shading(perm))


def mu_gamma_closed_form(m: MeshPattern) -> int:
    """Case formula for μ(21^{(0,0),(1,0)}, m) over Γ, in terms of adjacency tails.

    A lone tail counts as lying before the descent when its position does
    not exceed that of the descent bottom (the point 1).
    """
    if not in_gamma(m):
        raise NotInGamma(f"{m} is not in Γ")
    if m == BOTTOM_GAMMA:
        return 1
    n = len(m)
    tails = adjacency_tail_positions(m.perm)
    if not tails:
        return (-1) ** n * (n // 2)
    if len(tails) == 1:
        (top,) = descents(m.perm)
        if tails[0] <= top + 1:
            return (-1) ** n
    return 0
