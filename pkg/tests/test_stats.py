from fractions import Fraction

import pytest

from conftest import P
from meshposet.containment import contains
from meshposet.errors import PreconditionFailed, TooLarge
from meshposet.pattern import all_patterns, random_mesh_pattern
from meshposet.stats import (
    FORBIDDEN_SINGLETONS,
    MODEL,
    bound,
    contains_forbidden_singleton,
    estimate_pattern_containment,
    estimate_proportion,
    estimate_zero_mobius_fraction,
    exact_proportion,
    report_rows,
    to_tsv,
    wilson,
)

# full enumeration with `occurs` against the four singletons, frozen
EXACT = {1: Fraction(15, 16), 2: Fraction(231, 256), 3: Fraction(41911, 49152)}


def slow_forbidden(p):
    return any(contains(s, p) for s in FORBIDDEN_SINGLETONS)


def test_forbidden_singleton_examples():
    assert contains_forbidden_singleton(P("1|0,0"))
    assert not contains_forbidden_singleton(P("2413|"))
    assert contains_forbidden_singleton(P("21|0,1;1,1;0,2"))
    with pytest.raises(PreconditionFailed):
        contains_forbidden_singleton(P("e|0,0"))


def test_forbidden_singleton_exhaustive():
    for n in (1, 2):
        for p in all_patterns(n):
            assert contains_forbidden_singleton(p) == slow_forbidden(p), p


def test_forbidden_singleton_random():
    for seed in range(2000):
        p = random_mesh_pattern(1 + seed % 7, 0.3 + 0.5 * (seed % 3) / 2, seed=seed)
        assert contains_forbidden_singleton(p) == slow_forbidden(p), p


def test_exact_proportion():
    for n, value in EXACT.items():
        assert exact_proportion(n) == value
    assert EXACT[3] < EXACT[2] < EXACT[1]
    with pytest.raises(TooLarge):
        exact_proportion(4)


def test_exact_n2_by_enumeration():
    hits = sum(slow_forbidden(p) for p in all_patterns(2))
    assert Fraction(hits, 1024) == EXACT[2]


def test_wilson():
    low, high = wilson(0, 100)
    assert low == 0.0 and 0 < high < 0.05
    low, high = wilson(50, 100)
    assert low < 0.5 < high


def test_estimate_deterministic():
    a = estimate_proportion(16, 3000, seed=4)
    assert a == estimate_proportion(16, 3000, seed=4)
    assert a != estimate_proportion(16, 3000, seed=5)
    assert 0 <= a.value <= 1 and a.half_width >= 0
    assert a.low <= a.value <= a.high
    assert a.model == MODEL


def test_estimate_independent_of_workers():
    assert estimate_proportion(8, 2500, seed=3, workers=1) == estimate_proportion(8, 2500, seed=3, workers=3)


def test_estimate_rejects_zero_samples():
    with pytest.raises(ValueError):
        estimate_proportion(4, 0)


def test_sampled_matches_exact():
    for n in (1, 2, 3):
        for seed in range(5):
            est = estimate_proportion(n, 4000, seed=seed)
            assert abs(est.value - float(EXACT[n])) <= 3 * est.half_width, (n, seed)


def test_pattern_containment_extremes():
    assert estimate_pattern_containment(P("1|"), 6, 300, seed=1).value == 1.0
    assert estimate_pattern_containment(P("e|0,0"), 3, 300, seed=1).value == 0.0


def test_pattern_containment_trend():
    values = [estimate_pattern_containment(P("1|0,0"), n, 1000, seed=2).value for n in (8, 16, 32)]
    assert values[0] > values[1] > values[2]


def test_zero_mobius_fraction_tracks_complement():
    for n in (8, 16):
        zero = estimate_zero_mobius_fraction(n, 3000, seed=9)
        forbidden = estimate_proportion(n, 3000, seed=9)
        assert zero.value >= 1 - forbidden.value - forbidden.half_width - zero.half_width


def test_report_tsv():
    rows = report_rows([8, 16], samples=500, seed=1)
    text = to_tsv(rows)
    lines = text.splitlines()
    assert lines[0].startswith("# model:")
    assert lines[1].split("\t") == ["n", "samples", "value", "half_width", "bound_8_over_n"]
    assert lines[2].split("\t")[0] == "8" and lines[2].split("\t")[4] == "1.000000"
    assert bound(32) == 0.25
