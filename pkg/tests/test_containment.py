from itertools import combinations

import pytest
from hypothesis import given, settings

from conftest import P, mesh_patterns
from meshposet.containment import (
    boxes_used,
    classical_occurrences,
    contains,
    is_mesh_occurrence,
    max_induced_shading,
    merged_boxes,
    merges_shadings,
    mesh_in_perm_occurrences,
    mesh_occurrences,
    occurrence_uses_box,
    occurs,
    region,
)
from meshposet.errors import InvalidOccurrence, NotAnOccurrence
from meshposet.pattern import MeshPattern, all_boxes, all_patterns, delete_point, flatten

OCC_SMALL = P("12|0,1;0,2;2,2")
OCC_HOST = P("123|0,0;0,2;0,3;1,1;1,2;1,3;2,1;2,2;3,3")


def by_deletion(m: MeshPattern, p: MeshPattern) -> bool:
    """Oracle: delete points one at a time and compare shadings."""
    k = len(p) - len(m)
    if k < 0:
        return False
    for gone in combinations(range(1, len(p) + 1), k):
        q = p
        for x in sorted(gone, reverse=True):
            q = delete_point(q, x)[0]
        if q.perm == m.perm and m.shading <= q.shading:
            return True
    return False


def test_figure_occurrence():
    assert mesh_occurrences(OCC_SMALL, OCC_HOST) == [(2, 3)]
    r = region((2, 3), OCC_HOST, (0, 0))
    assert r.boxes == frozenset({(0, 0), (1, 0), (0, 1), (1, 1)})
    assert len(r.interior_points) == 1


def test_region_sentinels():
    host = P("2413|")
    r = region((1, 4), host, (1, 1))
    assert r.boxes == frozenset((a, c) for a in range(1, 4) for c in range(2, 3))
    assert r.interior_points == frozenset()
    assert region((2,), host, (0, 0)).interior_points == frozenset({1})
    with pytest.raises(InvalidOccurrence):
        region((3, 1), host, (0, 0))
    with pytest.raises(InvalidOccurrence):
        region((1, 5), host, (0, 0))
    with pytest.raises(InvalidOccurrence):
        region((1, 2), host, (3, 0))


def test_classical():
    assert classical_occurrences((1, 2), (1, 3, 2)) == [(1, 2), (1, 3)]
    assert classical_occurrences((2, 1), (1, 2, 3)) == []
    assert classical_occurrences((), (2, 1)) == [()]


def test_mesh_in_permutation():
    assert mesh_in_perm_occurrences(P("1|0,0"), (2, 1)) == [(1,), (2,)]
    assert mesh_in_perm_occurrences(P("1|0,0"), (1, 2)) == [(1,)]
    assert mesh_in_perm_occurrences(P("12|1,1"), (1, 2, 3)) == [(1, 2), (2, 3)]


@settings(max_examples=300, deadline=None)
@given(mesh_patterns(max_len=3), mesh_patterns(max_len=4, max_shaded=0))
def test_mesh_in_permutation_equals_fully_shaded_host(m, p):
    full = MeshPattern(p.perm, frozenset(all_boxes(len(p))))
    assert mesh_in_perm_occurrences(m, p.perm) == mesh_occurrences(m, full)


@settings(max_examples=300, deadline=None)
@given(mesh_patterns(max_len=3), mesh_patterns(max_len=3, max_shaded=0))
def test_unshaded_host_holds_only_unshaded_patterns(m, p):
    expected = not m.shading and bool(classical_occurrences(m.perm, p.perm))
    assert occurs(m, p) == expected


def test_contains_matches_deletion_oracle_exhaustively():
    small = [m for n in range(3) for m in all_patterns(n, 2)]
    hosts = [p for n in range(3) for p in all_patterns(n, 3)]
    for m in small:
        for p in hosts:
            assert contains(m, p) == by_deletion(m, p), (m, p)


@settings(max_examples=400, deadline=None)
@given(mesh_patterns(max_len=3), mesh_patterns(max_len=4))
def test_contains_matches_deletion_oracle_random(m, p):
    assert occurs(m, p) == by_deletion(m, p)


def test_empty_pattern_containment():
    assert contains(P("e|"), P("21|"))
    assert contains(P("e|0,0"), P("e|0,0"))
    for p in all_patterns(1):
        assert not contains(P("e|0,0"), p)


def test_is_mesh_occurrence():
    assert is_mesh_occurrence((2, 3), OCC_SMALL, OCC_HOST)
    assert not is_mesh_occurrence((1, 2), OCC_SMALL, OCC_HOST)
    assert not is_mesh_occurrence((1,), OCC_SMALL, OCC_HOST)


def test_boxes_used():
    a = P("12|0,2;1,2")
    assert boxes_used((2,), P("1|0,1"), a) == frozenset({(0, 2), (1, 2)})
    assert occurrence_uses_box((2,), P("1|0,1"), a, (1, 2))
    assert boxes_used((1,), P("1|"), a) == frozenset()
    with pytest.raises(NotAnOccurrence):
        boxes_used((1,), P("1|0,1"), a)


@settings(max_examples=300, deadline=None)
@given(mesh_patterns(max_len=4))
def test_max_induced_shading_is_the_exact_set(p):
    for k in range(len(p) + 1):
        for eta in combinations(range(1, len(p) + 1), k):
            allowed = max_induced_shading(eta, p)
            for box in all_boxes(k):
                q = MeshPattern(flatten([p.perm[i - 1] for i in eta]), {box})
                assert is_mesh_occurrence(eta, q, p) == (box in allowed)


def test_merges_shadings():
    a = P("12|0,2;1,2")
    assert merges_shadings(a, 1)
    assert not merges_shadings(a, 2)
    assert merged_boxes(a, 1) == {(0, 1): frozenset({(0, 2), (1, 2)})}
    assert not merges_shadings(P("12|"), 1)


def test_contains_cache_agrees_with_uncached():
    for m in all_patterns(1):
        for p in all_patterns(2, 2):
            assert contains(m, p) == occurs(m, p)
