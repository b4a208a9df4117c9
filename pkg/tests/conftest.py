from itertools import combinations

from hypothesis import strategies as st

from meshposet.pattern import MeshPattern, all_boxes, parse_pattern


def P(text: str) -> MeshPattern:
    return parse_pattern(text)


@st.composite
def mesh_patterns(draw, min_len=0, max_len=4, max_shaded=None):
    n = draw(st.integers(min_len, max_len))
    perm = draw(st.permutations(range(1, n + 1)))
    boxes = all_boxes(n)
    shading = draw(st.sets(st.sampled_from(boxes), max_size=max_shaded if max_shaded is not None else len(boxes)))
    return MeshPattern(tuple(perm), frozenset(shading))


def subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from (frozenset(c) for c in combinations(items, r))
