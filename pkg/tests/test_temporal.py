from datetime import datetime, timezone

import pytest
from hypothesis import given, strategies as st

from fuzzytemporal.errors import (
    InvalidPeriod,
    MalformedDuration,
    MalformedInstant,
    TemporalOverflow,
    UnknownGranularity,
)
from fuzzytemporal.temporal import (
    MAX_MILLIS,
    MIN_MILLIS,
    AllenRelation,
    Duration,
    Granularity,
    Instant,
    Ordering,
    Period,
    add_duration,
    allen_relation,
    compare_durations,
    duration_millis,
    format_instant,
    parse_duration,
    parse_instant,
)

from oracles import allen_names

DAYS = Granularity.DAYS


def test_epoch_parses_to_zero():
    assert parse_instant("1970-01-01T00:00:00Z").epoch_millis == 0


def test_year_only_instant():
    expected = int(datetime(2000, 1, 1, tzinfo=timezone.utc).timestamp() * 1000)
    assert parse_instant("2000-01-01").epoch_millis == expected
    assert parse_instant("2000").epoch_millis == expected


def test_offsets_are_normalised_to_utc():
    assert parse_instant("2000-01-01T02:00:00+02:00") == parse_instant("2000-01-01T00:00:00Z")


@pytest.mark.parametrize("bad", ["not-a-date", "", "2000-13-01", "12:00"])
def test_malformed_instant(bad):
    with pytest.raises(MalformedInstant):
        parse_instant(bad)


def test_instant_formatting():
    assert format_instant(Instant(0)) == "1970-01-01T00:00:00Z"
    assert str(Instant(1500)) == "1970-01-01T00:00:01.500Z"


def test_instant_range_checked():
    with pytest.raises(TemporalOverflow):
        Instant(MAX_MILLIS + 1)


@given(st.integers(MIN_MILLIS, MAX_MILLIS))
def test_instant_text_round_trip(ms):
    t = Instant(ms)
    assert parse_instant(str(t)) == t


@pytest.mark.parametrize("d, ms", [
    (Duration(1, DAYS), 86_400_000),
    (Duration(14, DAYS), 1_209_600_000),
    (Duration(0, Granularity.YEARS), 0),
    (Duration(1, Granularity.MONTHS), 30 * 86_400_000),
    (Duration(1, Granularity.YEARS), 365 * 86_400_000),
    (Duration(0.5, Granularity.SECONDS), 500),
])
def test_duration_millis(d, ms):
    assert duration_millis(d) == ms


def test_parse_duration_variants():
    assert parse_duration("10 days") == Duration(10, DAYS)
    assert parse_duration("2 temporal:Days") == Duration(2, DAYS)
    assert parse_duration("1 hour") == Duration(1, Granularity.HOURS)
    assert str(parse_duration("2.5 hours")) == "2.5 hours"


@pytest.mark.parametrize("bad", ["ten days", "10", "-1 days", "days 10"])
def test_malformed_duration(bad):
    with pytest.raises(MalformedDuration):
        parse_duration(bad)


def test_unknown_granularity():
    with pytest.raises(UnknownGranularity):
        parse_duration("10 parsecs")


def test_duration_overflow():
    with pytest.raises(TemporalOverflow):
        duration_millis(Duration(20000, Granularity.YEARS))


@pytest.mark.parametrize("a, b, rel", [
    ((0, 10), (0, 10), AllenRelation.EQUALS),
    ((0, 5), (5, 9), AllenRelation.MEETS),
    ((2, 4), (0, 10), AllenRelation.DURING),
    ((0, 2), (5, 9), AllenRelation.BEFORE),
    ((0, 6), (5, 9), AllenRelation.OVERLAPS),
    ((5, 7), (5, 9), AllenRelation.STARTS),
    ((7, 9), (5, 9), AllenRelation.FINISHES),
])
def test_allen_examples(a, b, rel):
    pa = Period(Instant(a[0]), Instant(a[1]))
    pb = Period(Instant(b[0]), Instant(b[1]))
    assert allen_relation(pa, pb) is rel
    assert allen_relation(pb, pa) is rel.inverse


def test_period_must_be_proper():
    with pytest.raises(InvalidPeriod):
        Period(Instant(5), Instant(5))


def test_period_is_half_open():
    p = Period(Instant(0), Instant(10))
    assert p.contains_instant(Instant(0))
    assert not p.contains_instant(Instant(10))


def test_inverse_is_an_involution():
    for rel in AllenRelation:
        assert rel.inverse.inverse is rel
    assert len(AllenRelation) == 13


periods = st.tuples(st.integers(-50, 50), st.integers(1, 30)).map(lambda p: (p[0], p[0] + p[1]))


@given(periods, periods)
def test_exactly_one_relation(a, b):
    names = allen_names(a[0], a[1], b[0], b[1])
    assert len(names) == 1
    pa = Period(Instant(a[0]), Instant(a[1]))
    pb = Period(Instant(b[0]), Instant(b[1]))
    assert allen_relation(pa, pb).value == names[0]
    assert allen_relation(pb, pa) is allen_relation(pa, pb).inverse


@pytest.mark.parametrize("a, b, order", [
    (Duration(1, DAYS), Duration(24, Granularity.HOURS), Ordering.EQUAL),
    (Duration(1, Granularity.MONTHS), Duration(4, Granularity.YEARS), Ordering.LESS),
    (Duration(14, DAYS), Duration(13, DAYS), Ordering.GREATER),
])
def test_compare_durations(a, b, order):
    assert compare_durations(a, b) is order


durations = st.builds(Duration, st.integers(0, 500), st.sampled_from(
    [g for g in Granularity if g is not Granularity.YEARS]))


@given(durations, durations, durations)
def test_compare_durations_is_a_total_preorder(a, b, c):
    assert compare_durations(a, b).value == -compare_durations(b, a).value
    assert (compare_durations(a, b).value < 0) == (duration_millis(a) < duration_millis(b))
    if compare_durations(a, b).value <= 0 and compare_durations(b, c).value <= 0:
        assert compare_durations(a, c).value <= 0


def test_add_duration_examples():
    assert add_duration(Instant(0), Duration(0, DAYS)) == Instant(0)
    assert add_duration(Instant(0), Duration(1, DAYS)) == Instant(86_400_000)
    assert add_duration(Instant(0), Duration(1, DAYS), -1) == Instant(-86_400_000)


@given(st.integers(-10**12, 10**12), durations)
def test_add_then_subtract_is_identity(ms, d):
    t = Instant(ms)
    assert add_duration(add_duration(t, d), d, -1) == t
