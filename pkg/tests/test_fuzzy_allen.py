import pytest
from hypothesis import given, strategies as st

from fuzzytemporal.errors import DegenerateFuzzyPeriod
from fuzzytemporal.fuzzy_allen import ENDPOINT_ORDERS, fuzzy_allen, possible_relations
from fuzzytemporal.ite import fuzzify_about
from fuzzytemporal.temporal import AllenRelation, Duration, Granularity, Instant, relation_between

import oracles


def crisp(s, f):
    return ((s, s), (f, f))


def test_crisp_meets():
    v = fuzzy_allen(crisp(0, 5), crisp(5, 9), "meets")
    assert v.possible and v.necessary


def test_uncertain_before():
    a = ((0, 0), (4, 6))
    b = ((5, 7), (10, 10))
    v = fuzzy_allen(a, b, AllenRelation.BEFORE)
    assert v.possible and not v.necessary


def test_well_separated_before_is_necessary():
    a = ((0, 2), (3, 5))
    b = ((20, 22), (30, 35))
    v = fuzzy_allen(a, b, "before")
    assert v.possible and v.necessary


def test_degenerate_side():
    with pytest.raises(DegenerateFuzzyPeriod):
        possible_relations(((5, 6), (1, 5)), crisp(0, 1))


def test_every_relation_has_an_order():
    assert set(ENDPOINT_ORDERS) == set(AllenRelation)


def test_accepts_fuzzy_intervals():
    day = Granularity.DAYS
    t0 = Instant(0)
    start = fuzzify_about(Duration(10, day), 0.6, origin=t0)
    finish = fuzzify_about(Duration(20, day), 0.6, origin=t0)
    later_start = fuzzify_about(Duration(40, day), 0.6, origin=t0)
    later_finish = fuzzify_about(Duration(60, day), 0.6, origin=t0)
    v = fuzzy_allen((start, finish), (later_start, later_finish), "before")
    assert v.possible and v.necessary


def test_coarser_resolution():
    ms_per_day = 86_400_000
    a = ((0, 0), (4 * ms_per_day, 6 * ms_per_day))
    b = ((5 * ms_per_day, 7 * ms_per_day), (10 * ms_per_day, 10 * ms_per_day))
    assert fuzzy_allen(a, b, "before", resolution=ms_per_day) == fuzzy_allen(
        ((0, 0), (4, 6)), ((5, 7), (10, 10)), "before")


def _bounds(lo, hi):
    return st.tuples(st.integers(lo, hi), st.integers(0, 4)).map(lambda t: (t[0], t[0] + t[1]))


@st.composite
def fuzzy_period(draw):
    s = draw(_bounds(0, 12))
    f = draw(_bounds(s[0] + 1, 16))
    return s, f


@given(fuzzy_period(), fuzzy_period())
def test_matches_enumeration(a, b):
    expected = oracles.enumerate_fuzzy_allen(a, b)
    got = {rel.value for rel in possible_relations(a, b)}
    assert got == expected and got
    for rel in AllenRelation:
        v = fuzzy_allen(a, b, rel)
        assert v.possible == (rel.value in expected)
        assert v.necessary == (expected == {rel.value})
        assert v.possible or not v.necessary


@given(st.integers(0, 20), st.integers(1, 10), st.integers(0, 20), st.integers(1, 10))
def test_crisp_agrees_with_allen(s1, w1, s2, w2):
    a, b = crisp(s1, s1 + w1), crisp(s2, s2 + w2)
    rel = relation_between(s1, s1 + w1, s2, s2 + w2)
    assert possible_relations(a, b) == {rel}
    assert fuzzy_allen(a, b, rel).necessary


@given(fuzzy_period(), fuzzy_period())
def test_inverse_symmetry(a, b):
    assert possible_relations(b, a) == {rel.inverse for rel in possible_relations(a, b)}
