"""Crisp valid-time model: instants, periods, durations and granularities.

All arithmetic happens on integer milliseconds relative to the Unix epoch.
Months and years use a fixed table (30 and 365 days); there is no calendar
awareness and every instant is UTC.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from fractions import Fraction

from dateutil.parser import isoparse

from .errors import (
    InvalidPeriod,
    MalformedDuration,
    MalformedInstant,
    TemporalOverflow,
    UnknownGranularity,
)

_EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)
_ONE_MS = timedelta(milliseconds=1)

MIN_MILLIS = (datetime(1, 1, 1, tzinfo=timezone.utc) - _EPOCH) // _ONE_MS
MAX_MILLIS = (datetime(9999, 12, 31, 23, 59, 59, 999000, tzinfo=timezone.utc) - _EPOCH) // _ONE_MS
MAX_SPAN_MILLIS = MAX_MILLIS - MIN_MILLIS


class Granularity(enum.Enum):
    YEARS = "years"
    MONTHS = "months"
    DAYS = "days"
    HOURS = "hours"
    MINUTES = "minutes"
    SECONDS = "seconds"
    MILLISECONDS = "milliseconds"

    @property
    def millis(self) -> int:
        return _FACTORS[self]

    @classmethod
    def parse(cls, name: str) -> "Granularity":
        """Resolve ``days``, ``Day``, ``temporal:Days``, ``secs`` and similar."""
        key = name.rsplit(":", 1)[-1].strip().lower()
        try:
            return _ALIASES[key]
        except KeyError:
            raise UnknownGranularity(f"unknown granularity {name!r}") from None

    def __str__(self):
        return self.value


_FACTORS = {
    Granularity.MILLISECONDS: 1,
    Granularity.SECONDS: 1000,
    Granularity.MINUTES: 60 * 1000,
    Granularity.HOURS: 60 * 60 * 1000,
    Granularity.DAYS: 24 * 60 * 60 * 1000,
    Granularity.MONTHS: 30 * 24 * 60 * 60 * 1000,
    Granularity.YEARS: 365 * 24 * 60 * 60 * 1000,
}

_ALIASES = {}
for _g in Granularity:
    _ALIASES[_g.value] = _g
    _ALIASES[_g.value[:-1]] = _g
_ALIASES.update({"secs": Granularity.SECONDS, "sec": Granularity.SECONDS,
                 "mins": Granularity.MINUTES, "min": Granularity.MINUTES,
                 "ms": Granularity.MILLISECONDS})


def format_count(x) -> str:
    """Shortest text that parses back to the same number (``10``, ``9.8``)."""
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def _check_range(millis: int) -> int:
    if not MIN_MILLIS <= millis <= MAX_MILLIS:
        raise TemporalOverflow(f"timestamp {millis} ms outside representable range")
    return millis


@dataclass(frozen=True, order=True)
class Instant:
    epoch_millis: int

    def __post_init__(self):
        if isinstance(self.epoch_millis, bool) or not isinstance(self.epoch_millis, int):
            raise TypeError("epoch_millis must be an int")
        _check_range(self.epoch_millis)

    @classmethod
    def now(cls) -> "Instant":
        return cls((datetime.now(timezone.utc) - _EPOCH) // _ONE_MS)

    def to_datetime(self) -> datetime:
        return _EPOCH + timedelta(milliseconds=self.epoch_millis)

    def __str__(self):
        return format_instant(self)


def parse_instant(text: str) -> Instant:
    """Parse an ISO 8601 date or dateTime into a UTC millisecond instant.

    Date-only (and reduced-precision ``YYYY`` / ``YYYY-MM``) input means
    midnight UTC. Naive times are UTC; explicit offsets are folded into UTC.
    Sub-millisecond digits are truncated.
    """
    if not isinstance(text, str) or not text.strip():
        raise MalformedInstant(f"not an ISO 8601 instant: {text!r}")
    try:
        dt = isoparse(text.strip())
    except (ValueError, OverflowError) as exc:
        raise MalformedInstant(f"not an ISO 8601 instant: {text!r} ({exc})") from None
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    try:
        return Instant((dt - _EPOCH) // _ONE_MS)
    except TemporalOverflow:
        raise MalformedInstant(f"instant out of range: {text!r}") from None


def format_instant(t: Instant) -> str:
    dt = t.to_datetime()
    base = dt.strftime("%Y-%m-%dT%H:%M:%S")
    # strftime does not zero-pad years below 1000 on every platform
    base = f"{dt.year:04d}{base[base.index('-'):]}"
    ms = t.epoch_millis % 1000
    return f"{base}.{ms:03d}Z" if ms else f"{base}Z"


@dataclass(frozen=True)
class Duration:
    count: float
    granularity: Granularity

    def __post_init__(self):
        if isinstance(self.count, bool) or not isinstance(self.count, (int, float)):
            raise MalformedDuration(f"duration count must be numeric, got {self.count!r}")
        if not math.isfinite(self.count) or self.count < 0:
            raise MalformedDuration(f"duration count must be finite and >= 0, got {self.count!r}")
        if not isinstance(self.granularity, Granularity):
            object.__setattr__(self, "granularity", Granularity.parse(str(self.granularity)))

    @property
    def millis(self) -> int:
        return duration_millis(self)

    def __str__(self):
        return f"{format_count(self.count)} {self.granularity.value}"


_DURATION_RE = re.compile(r"^\s*([0-9]+(?:\.[0-9]*)?(?:[eE][+-]?[0-9]+)?)\s+([A-Za-z_:]+)\s*$")


def parse_duration(text: str) -> Duration:
    """Parse ``"<count> <granularity>"``, e.g. ``"30 days"`` or ``"0.5 hours"``."""
    m = _DURATION_RE.match(text) if isinstance(text, str) else None
    if not m:
        raise MalformedDuration(f"not a duration literal: {text!r}")
    raw, unit = m.groups()
    count = int(raw) if raw.isdigit() else float(raw)
    return Duration(count, Granularity.parse(unit))


def duration_millis(d: Duration) -> int:
    """Canonical milliseconds of ``d``, rounded half-to-even for fractional counts."""
    if isinstance(d.count, int):
        millis = d.count * d.granularity.millis
    else:
        millis = round(Fraction(d.count) * d.granularity.millis)
    if millis > MAX_SPAN_MILLIS:
        raise TemporalOverflow(f"duration {d} exceeds the representable range")
    return millis


@dataclass(frozen=True)
class Period:
    """Half-open valid period ``[start, finish)``."""

    start: Instant
    finish: Instant

    def __post_init__(self):
        if not self.start < self.finish:
            raise InvalidPeriod(f"period start {self.start} must precede finish {self.finish}")

    def contains_instant(self, t: Instant) -> bool:
        return self.start <= t < self.finish

    def __str__(self):
        return f"[{self.start}, {self.finish})"


class AllenRelation(enum.Enum):
    EQUALS = "equals"
    BEFORE = "before"
    AFTER = "after"
    MEETS = "meets"
    MET_BY = "metBy"
    OVERLAPS = "overlaps"
    OVERLAPPED_BY = "overlappedBy"
    CONTAINS = "contains"
    DURING = "during"
    STARTS = "starts"
    STARTED_BY = "startedBy"
    FINISHES = "finishes"
    FINISHED_BY = "finishedBy"

    @property
    def inverse(self) -> "AllenRelation":
        return _INVERSE[self]

    @classmethod
    def parse(cls, name: str) -> "AllenRelation":
        key = name.rsplit(":", 1)[-1].replace("_", "").lower()
        for rel in cls:
            if rel.value.lower() == key:
                return rel
        raise ValueError(f"unknown Allen relation {name!r}")


_INVERSE = {
    AllenRelation.EQUALS: AllenRelation.EQUALS,
    AllenRelation.BEFORE: AllenRelation.AFTER,
    AllenRelation.AFTER: AllenRelation.BEFORE,
    AllenRelation.MEETS: AllenRelation.MET_BY,
    AllenRelation.MET_BY: AllenRelation.MEETS,
    AllenRelation.OVERLAPS: AllenRelation.OVERLAPPED_BY,
    AllenRelation.OVERLAPPED_BY: AllenRelation.OVERLAPS,
    AllenRelation.CONTAINS: AllenRelation.DURING,
    AllenRelation.DURING: AllenRelation.CONTAINS,
    AllenRelation.STARTS: AllenRelation.STARTED_BY,
    AllenRelation.STARTED_BY: AllenRelation.STARTS,
    AllenRelation.FINISHES: AllenRelation.FINISHED_BY,
    AllenRelation.FINISHED_BY: AllenRelation.FINISHES,
}


def relation_between(s1, f1, s2, f2) -> AllenRelation:
    """Allen relation of ``[s1, f1)`` to ``[s2, f2)`` for any ordered endpoint type."""
    if f1 < s2:
        return AllenRelation.BEFORE
    if f2 < s1:
        return AllenRelation.AFTER
    if f1 == s2:
        return AllenRelation.MEETS
    if f2 == s1:
        return AllenRelation.MET_BY
    if s1 == s2:
        if f1 == f2:
            return AllenRelation.EQUALS
        return AllenRelation.STARTS if f1 < f2 else AllenRelation.STARTED_BY
    if f1 == f2:
        return AllenRelation.FINISHES if s1 > s2 else AllenRelation.FINISHED_BY
    if s1 < s2:
        return AllenRelation.CONTAINS if f1 > f2 else AllenRelation.OVERLAPS
    return AllenRelation.DURING if f1 < f2 else AllenRelation.OVERLAPPED_BY


def allen_relation(a: Period, b: Period) -> AllenRelation:
    return relation_between(a.start, a.finish, b.start, b.finish)


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def compare_durations(a: Duration, b: Duration) -> Ordering:
    ma, mb = duration_millis(a), duration_millis(b)
    return Ordering((ma > mb) - (ma < mb))


def add_duration(t: Instant, d: Duration, sign: int = 1) -> Instant:
    """Shift ``t`` forward (``sign=+1``) or backward (``sign=-1``) by ``d``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return Instant(_check_range(t.epoch_millis + sign * duration_millis(d)))
