from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from hassett.chambers import type_of
from hassett.git import (
    AtypicalWeightError,
    CollisionPattern,
    GITWeight,
    Stability,
    classify_configuration,
    git_d_set,
    is_typical,
    match_chamber,
    strictly_semistable_points,
)

F = Fraction
WALL = GITWeight((F(2, 3),) + (F(1, 3),) * 4)
EPS = F(1, 100)


def test_normalization():
    w = GITWeight((1, 1, 1, 1, 1))
    assert w.r == (F(2, 5),) * 5 and sum(w.r) == 2
    with pytest.raises(ValueError):
        GITWeight((1, 0, 1))


def test_classify_examples():
    assert classify_configuration(GITWeight((1,) * 5), CollisionPattern.singletons(5)) == Stability.STABLE
    assert classify_configuration(WALL, CollisionPattern(((1, 2), (3,), (4,), (5,)))) == Stability.STRICTLY_SEMISTABLE
    assert classify_configuration(WALL, CollisionPattern(((1, 2, 3), (4,), (5,)))) == Stability.UNSTABLE
    with pytest.raises(ValueError):
        classify_configuration(WALL, CollisionPattern.singletons(4))


def test_semistable_points():
    pairs = strictly_semistable_points(WALL)
    assert pairs == [((1, i), tuple(j for j in range(2, 6) if j != i)) for i in range(2, 6)]
    assert strictly_semistable_points(GITWeight((F(2, 5),) * 5)) == []
    assert ((1, 2), (3, 4, 5)) in strictly_semistable_points(GITWeight((F(1, 2),) * 3 + (F(1, 4),) * 2))


def test_typicality():
    assert is_typical(GITWeight((F(2, 5),) * 5))
    assert not is_typical(GITWeight((F(1, 2),) * 3 + (F(1, 4),) * 2))
    assert not is_typical(WALL)


def test_match_examples():
    assert type_of(match_chamber(GITWeight((F(2, 5),) * 5))) == "A"
    assert type_of(match_chamber(GITWeight((F(2, 3) + 4 * EPS,) + (F(1, 3) - EPS,) * 4))) == "F"
    assert type_of(match_chamber(GITWeight((F(2, 3) - 4 * EPS,) + (F(1, 3) + EPS,) * 4))) == "A"


def test_match_rejections():
    with pytest.raises(AtypicalWeightError):
        match_chamber(WALL)
    with pytest.raises(ValueError, match="below 1"):
        match_chamber(GITWeight((6, 1, 1, 1, 1)))
    with pytest.raises(ValueError):
        match_chamber(GITWeight((1,) * 6))


def all_patterns(n):
    def parts(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for p in parts(rest):
            yield [[first]] + p
            for i in range(len(p)):
                yield p[:i] + [[first] + p[i]] + p[i + 1 :]

    return [CollisionPattern(tuple(tuple(b) for b in p)) for p in parts(list(range(1, n + 1)))]


weights5 = st.lists(st.fractions(min_value=F(1, 20), max_value=3, max_denominator=20), min_size=5, max_size=5)


@given(weights5, st.integers(1, 9))
def test_scaling_invariance(raw, scale):
    a, b = GITWeight(tuple(raw)), GITWeight(tuple(scale * x for x in raw))
    assert a == b
    for p in all_patterns(5):
        assert classify_configuration(a, p) == classify_configuration(b, p)


@given(weights5)
def test_typical_has_no_semistable_pattern(raw):
    w = GITWeight(tuple(raw))
    # a single marking of weight exactly 1 is not covered by typicality
    assume(is_typical(w) and max(w.r) < 1)
    for p in all_patterns(5):
        assert classify_configuration(w, p) != Stability.STRICTLY_SEMISTABLE


def test_unit_marking_is_semistable_but_typical():
    w = GITWeight((1, F(1, 4), F(1, 4), F(1, 4), F(1, 4)))
    assert is_typical(w)
    assert classify_configuration(w, CollisionPattern(((1,), (2, 3, 4, 5)))) == Stability.STRICTLY_SEMISTABLE


@given(weights5, st.permutations(range(5)))
def test_permutation_equivariance(raw, perm):
    w = GITWeight(tuple(raw))
    moved = GITWeight(tuple(raw[perm[i]] for i in range(5)))
    inverse = {perm[i] + 1: i + 1 for i in range(5)}  # old label -> new label
    for p in all_patterns(5):
        q = CollisionPattern(tuple(tuple(inverse[i] for i in g) for g in p.groups))
        assert classify_configuration(w, p) == classify_configuration(moved, q)
    assert len(strictly_semistable_points(w)) == len(strictly_semistable_points(moved))


def min_wall_slack(w):
    return min(abs(w(s) - 1) for size in range(2, 4) for s in combinations(range(1, 6), size))


@given(weights5, st.lists(st.fractions(min_value=-1, max_value=1, max_denominator=10), min_size=5, max_size=5))
def test_match_is_locally_constant(raw, direction):
    w = GITWeight(tuple(raw))
    assume(is_typical(w) and max(w.r) < 1)
    base = match_chamber(w)
    slack = min_wall_slack(w)
    # shrink until every subset sum (including the renormalization) moves by less than the slack
    step = slack / 40
    nudged = GITWeight(tuple(x + step * d for x, d in zip(w.r, direction)))
    while max(abs(a - b) for a, b in zip(nudged.r, w.r)) * 5 >= slack:
        step /= 2
        nudged = GITWeight(tuple(x + step * d for x, d in zip(w.r, direction)))
    assert is_typical(nudged)
    assert match_chamber(nudged) is base


def test_git_d_set_counts_light_triples():
    w = GITWeight((F(2, 3) + 4 * EPS,) + (F(1, 3) - EPS,) * 4)
    assert git_d_set(w) == frozenset(frozenset({1, i}) for i in range(2, 6))
