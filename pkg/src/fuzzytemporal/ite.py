"""Fuzzification of imprecise temporal expressions (ITEs).

Each ITE turns a stated valid time ``T`` and a source weight ``w`` into a
decision interval ``[min_ft, max_ft]`` plus a membership function that peaks
at ``T`` and crosses 0.5 exactly on every finite border:

    about   T -/+ (1-w) T / 2          gaussmf
    within  T -/+ (1-w) T              trapmf, ramps centred on the borders
    few     T -/+ (1-w) 0.75 T         gbellmf with slope 2
    before  [T - (1-w) T / 2, T]       smf, flat at 1 from T onwards
    after   [T, T + (1-w) T / 2]       zmf, flat at 1 up to T

Values live on a millisecond axis. With ``origin`` unset the axis measures
durations; with an ``origin`` instant every value is an absolute epoch
timestamp ``origin + offset``.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Optional, Union

from .errors import (
    AxisMismatch,
    FutureSince,
    NonPositiveT,
    UnknownGranularity,
    UnknownITE,
    UnknownKeyword,
    WeightRangeWarning,
)
from .fuzzy import MembershipFunction, check_weight, evaluate, gaussmf, gbellmf, smf, trapmf, zmf
from .temporal import (
    Duration,
    Granularity,
    Instant,
    Period,
    add_duration,
    duration_millis,
    format_count,
)

DEFAULT_W = 0.5

# slack absorbing float noise when testing interval membership, in ms
BORDER_EPS_MS = 1e-6

_GAUSS_BORDER = math.sqrt(2.0 * math.log(2.0))


class ITEKind(enum.Enum):
    ABOUT = "about"
    WITHIN = "within"
    FEW = "few"
    BEFORE = "before"
    AFTER = "after"

    @classmethod
    def parse(cls, name: str) -> "ITEKind":
        key = _alias_key(name)
        try:
            return _ITE_ALIASES[key]
        except KeyError:
            raise UnknownITE(f"unknown imprecise temporal expression {name!r}") from None


def _alias_key(name: str) -> str:
    name = name.rsplit(":", 1)[-1]
    return "".join(ch for ch in name.lower() if ch.isalnum())


_ITE_ALIASES = {
    _alias_key(alias): kind
    for kind, aliases in {
        ITEKind.ABOUT: ["about", "around", "approximately", "approx", "nearly"],
        ITEKind.WITHIN: ["within", "in less than", "in under", "at most", "in no more than"],
        ITEKind.FEW: ["few", "a few", "a little", "more or less"],
        ITEKind.BEFORE: ["before", "until", "earlier than", "previously", "prior to"],
        ITEKind.AFTER: ["after", "later than", "afterwards", "subsequent to"],
    }.items()
    for alias in aliases
}

ITE_ALIASES = MappingProxyType(dict(_ITE_ALIASES))

# weight ranges the ITE tables require; outside them we warn only
REQUIRED_W = {ITEKind.BEFORE: (0.6, 1.0), ITEKind.AFTER: (0.6, 1.0)}


@dataclass(frozen=True)
class FuzzyInterval:
    kind: ITEKind
    min_ft: float
    peak: float
    max_ft: float
    w: float
    mf: MembershipFunction
    unit: Granularity = Granularity.MILLISECONDS
    origin: Optional[Instant] = None

    @property
    def axis(self) -> str:
        return "duration" if self.origin is None else "instant"

    @property
    def width(self) -> float:
        return self.max_ft - self.min_ft

    def bounds(self, unit: Optional[Granularity] = None):
        """``(min_ft, max_ft)`` in counts of ``unit`` (default: the interval's unit).

        Only meaningful on the duration axis; instant axes report offsets
        from the origin.
        """
        unit = unit or self.unit
        base = 0 if self.origin is None else self.origin.epoch_millis
        return ((self.min_ft - base) / unit.millis, (self.max_ft - base) / unit.millis)

    def mf_in(self, unit: Optional[Granularity] = None) -> MembershipFunction:
        """The membership function re-expressed in counts of ``unit``.

        On the instant axis the result is measured from the origin.
        """
        unit = unit or self.unit
        base = 0.0 if self.origin is None else float(self.origin.epoch_millis)
        u = float(unit.millis)
        p = self.mf.params
        if self.mf.family == "gaussmf":
            params = ((p[0] - base) / u, p[1] / u)
        elif self.mf.family == "gbellmf":
            params = ((p[0] - base) / u, p[1] / u, p[2])
        else:
            params = tuple((x - base) / u for x in p)
        return MembershipFunction(self.mf.family, params)

    def contains(self, t) -> bool:
        return satisfies(self, t)[0]

    def degree(self, t) -> float:
        return satisfies(self, t)[1]


def _axis_value(iv: FuzzyInterval, t) -> float:
    if isinstance(t, Duration):
        if iv.origin is not None:
            raise AxisMismatch("cannot compare a duration against an instant-axis fuzzy interval")
        return float(duration_millis(t))
    if isinstance(t, Instant):
        if iv.origin is None:
            raise AxisMismatch("cannot compare an instant against a duration-axis fuzzy interval")
        return float(t.epoch_millis)
    if isinstance(t, (int, float)) and not isinstance(t, bool):
        return float(t)
    raise AxisMismatch(f"cannot place {t!r} on a fuzzy time axis")


def satisfies(iv: FuzzyInterval, t):
    """``(holds, degree)``: closed-interval membership and the MF degree at ``t``."""
    x = _axis_value(iv, t)
    holds = iv.min_ft - BORDER_EPS_MS <= x <= iv.max_ft + BORDER_EPS_MS
    return holds, evaluate(iv.mf, x)


class Timing(enum.Enum):
    EARLY = "early"
    ON_TIME = "onTime"
    LATE = "late"
    OUT_OF_RANGE = "outOfRange"


def classify_early_late(iv: FuzzyInterval, t) -> Timing:
    x = _axis_value(iv, t)
    if abs(x - iv.peak) <= BORDER_EPS_MS:
        return Timing.ON_TIME
    if iv.min_ft - BORDER_EPS_MS <= x < iv.peak:
        return Timing.EARLY
    if iv.peak < x <= iv.max_ft + BORDER_EPS_MS:
        return Timing.LATE
    return Timing.OUT_OF_RANGE


def _spread(kind: ITEKind, T: float, w: float) -> float:
    if kind is ITEKind.WITHIN:
        return (1.0 - w) * T
    if kind is ITEKind.FEW:
        return (1.0 - w) * 0.75 * T
    return (1.0 - w) * T / 2.0


def fuzzify(kind, T: Duration, w: Optional[float] = None, origin: Optional[Instant] = None,
            default_w: float = DEFAULT_W) -> FuzzyInterval:
    """Fuzzy interval of ``kind`` around the valid time ``T``.

    ``w`` falls back to ``default_w`` when omitted. ``origin`` moves the
    result onto the instant axis (``T`` is then an offset from it).
    """
    kind = kind if isinstance(kind, ITEKind) else ITEKind.parse(kind)
    w = check_weight(default_w if w is None else w)
    lo_w, hi_w = REQUIRED_W.get(kind, (0.0, 1.0))
    if not lo_w <= w <= hi_w:
        warnings.warn(f"{kind.value} expects w in [{lo_w}, {hi_w}], got {w}",
                      WeightRangeWarning, stacklevel=2)

    T_ms = float(duration_millis(T))
    if T_ms <= 0:
        raise NonPositiveT(f"{kind.value} needs a positive valid time, got {T}")
    base = 0.0 if origin is None else float(origin.epoch_millis)
    peak = base + T_ms
    delta = _spread(kind, T_ms, w)

    if kind is ITEKind.ABOUT:
        lo, hi = peak - delta, peak + delta
        mf = gaussmf(peak, delta / _GAUSS_BORDER)
    elif kind is ITEKind.WITHIN:
        lo, hi = peak - delta, peak + delta
        h = delta / 2.0
        mf = trapmf(lo - h, lo + h, hi - h, hi + h)
    elif kind is ITEKind.FEW:
        lo, hi = peak - delta, peak + delta
        mf = gbellmf(peak, delta, 2.0)
    elif kind is ITEKind.BEFORE:
        lo, hi = peak - delta, peak
        mf = smf(peak - 2.0 * delta, peak)
    else:
        lo, hi = peak, peak + delta
        mf = zmf(peak, peak + 2.0 * delta)
    return FuzzyInterval(kind, lo, peak, hi, w, mf, T.granularity, origin)


def fuzzify_about(T, w=None, origin=None):
    return fuzzify(ITEKind.ABOUT, T, w, origin)


def fuzzify_within(T, w=None, origin=None):
    return fuzzify(ITEKind.WITHIN, T, w, origin)


def fuzzify_before(T, w=None, origin=None):
    return fuzzify(ITEKind.BEFORE, T, w, origin)


def fuzzify_after(T, w=None, origin=None):
    return fuzzify(ITEKind.AFTER, T, w, origin)


# -- fuzzy counts and granularities ---------------------------------------

@dataclass(frozen=True)
class FuzzyCountSpec:
    """Multiplier range of a base granularity; ``offset`` marks this/next/last."""

    keyword: str
    lo: float
    hi: float
    offset: Optional[int] = None

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi:
            raise ValueError(f"fuzzy count {self.keyword!r} needs 0 <= lo <= hi")

    @property
    def midpoint(self) -> float:
        return (self.lo + self.hi) / 2


@dataclass(frozen=True)
class FuzzyGranularitySpec:
    """A coarse or clock granularity expressed as a crisp duration.

    ``clock`` marks time-of-day keywords (noon): ``expansion`` is then the
    offset from midnight rather than a span.
    """

    keyword: str
    expansion: Duration
    clock: bool = False


DEFAULT_FUZZY_COUNTS = MappingProxyType({
    "few": FuzzyCountSpec("few", 2, 4),
    "several": FuzzyCountSpec("several", 3, 7),
    "many": FuzzyCountSpec("many", 7, 20),
    "twice": FuzzyCountSpec("twice", 2, 2),
    "this": FuzzyCountSpec("this", 0, 0, offset=0),
    "next": FuzzyCountSpec("next", 1, 1, offset=1),
    "last": FuzzyCountSpec("last", 1, 1, offset=-1),
})

DEFAULT_FUZZY_GRANULARITIES = MappingProxyType({
    "weeks": FuzzyGranularitySpec("weeks", Duration(7, Granularity.DAYS)),
    "weekend": FuzzyGranularitySpec("weekend", Duration(2, Granularity.DAYS)),
    "fortnight": FuzzyGranularitySpec("fortnight", Duration(14, Granularity.DAYS)),
    "quarter": FuzzyGranularitySpec("quarter", Duration(90, Granularity.DAYS)),
    "noon": FuzzyGranularitySpec("noon", Duration(12, Granularity.HOURS), clock=True),
})

# singular and plural spellings accepted for the span keywords
_GRANULARITY_SPELLINGS = {"week": "weeks", "fortnights": "fortnight",
                          "quarters": "quarter", "weekends": "weekend"}


def _keyword(name: str) -> str:
    return name.rsplit(":", 1)[-1].strip().lower()


def resolve_fuzzy_count(keyword: str, table: Optional[Mapping] = None) -> FuzzyCountSpec:
    table = DEFAULT_FUZZY_COUNTS if table is None else table
    key = _keyword(keyword)
    try:
        return table[key]
    except KeyError:
        raise UnknownKeyword(f"unknown fuzzy count {keyword!r}") from None


def resolve_fuzzy_granularity(keyword: str, table: Optional[Mapping] = None) -> FuzzyGranularitySpec:
    table = DEFAULT_FUZZY_GRANULARITIES if table is None else table
    key = _keyword(keyword)
    key = _GRANULARITY_SPELLINGS.get(key, key)
    try:
        return table[key]
    except KeyError:
        raise UnknownKeyword(f"unknown fuzzy granularity {keyword!r}") from None


def resolve_unit(name, table: Optional[Mapping] = None) -> Duration:
    """One unit of a crisp or span-like fuzzy granularity, as a duration."""
    if isinstance(name, Granularity):
        return Duration(1, name)
    if isinstance(name, FuzzyGranularitySpec):
        spec = name
    else:
        try:
            return Duration(1, Granularity.parse(name))
        except UnknownGranularity:
            pass
        try:
            spec = resolve_fuzzy_granularity(name, table)
        except UnknownKeyword:
            raise UnknownGranularity(f"unknown granularity {name!r}") from None
    if spec.clock:
        raise UnknownGranularity(f"{spec.keyword!r} is a clock time, not a span granularity")
    return spec.expansion


def scale(unit: Duration, count: float) -> Duration:
    """``count`` units expressed in the unit's base granularity."""
    total = unit.count * count
    if isinstance(total, float) and total.is_integer():
        total = int(total)
    return Duration(total, unit.granularity)


def few_duration(granularity, count=None, counts: Optional[Mapping] = None,
                 granularities: Optional[Mapping] = None) -> Duration:
    """Valid time for "few <granularity>": the fuzzy-count midpoint unless given."""
    if count is None:
        count = resolve_fuzzy_count("few", counts).midpoint
    return scale(resolve_unit(granularity, granularities), count)


def fuzzify_few(granularity, w=None, count=None, counts=None, granularities=None, origin=None):
    T = few_duration(granularity, count, counts, granularities)
    return fuzzify(ITEKind.FEW, T, w, origin)


# -- date and set granularities ------------------------------------------

DEICTIC_KEYWORDS = frozenset(
    {"recently", "currently", "nowadays", "lately", "earlier", "present"})
DATE_KEYWORDS = frozenset({"ago", "since", "past"}) | DEICTIC_KEYWORDS
DEFAULT_DEICTIC_WINDOW = Duration(7, Granularity.DAYS)


def eval_date_granularity(keyword: str, arg, now: Instant,
                          window: Duration = DEFAULT_DEICTIC_WINDOW) -> Union[Instant, Period]:
    """Resolve a date granularity relative to ``now``.

    ``ago`` yields an instant; ``since``, ``past`` and the deictic keywords
    yield a half-open period ending at ``now``.
    """
    key = _keyword(keyword)
    if key == "thepast":
        key = "past"
    if key not in DATE_KEYWORDS:
        raise UnknownKeyword(f"unknown date granularity {keyword!r}")
    if key in DEICTIC_KEYWORDS:
        return Period(add_duration(now, window, -1), now)
    if key == "since":
        if not isinstance(arg, Instant):
            raise AxisMismatch(f"since needs an instant, got {arg!r}")
        if arg >= now:
            raise FutureSince(f"since {arg} is not before now ({now})")
        return Period(arg, now)
    if not isinstance(arg, Duration):
        raise AxisMismatch(f"{key} needs a duration, got {arg!r}")
    if key == "ago":
        return add_duration(now, arg, -1)
    return Period(add_duration(now, arg, -1), now)


SET_STRIDES = MappingProxyType({
    "yearly": Duration(365, Granularity.DAYS),
    "peryear": Duration(365, Granularity.DAYS),
    "monthly": Duration(30, Granularity.DAYS),
    "weekly": Duration(7, Granularity.DAYS),
    "perweek": Duration(7, Granularity.DAYS),
    "daily": Duration(1, Granularity.DAYS),
    "hourly": Duration(1, Granularity.HOURS),
    "perhour": Duration(1, Granularity.HOURS),
    "perminute": Duration(1, Granularity.MINUTES),
    "persecond": Duration(1, Granularity.SECONDS),
    "perseconds": Duration(1, Granularity.SECONDS),
})


def set_stride(keyword: str) -> Duration:
    try:
        return SET_STRIDES[_keyword(keyword)]
    except KeyError:
        raise UnknownKeyword(f"unknown set granularity {keyword!r}") from None


def expand_set_granularity(keyword: str, anchor: Instant, horizon: Period) -> list:
    """Occurrences ``anchor + k * stride`` (k >= 0) that fall inside ``horizon``."""
    stride = duration_millis(set_stride(keyword))
    start, finish = horizon.start.epoch_millis, horizon.finish.epoch_millis
    k = max(0, -(-(start - anchor.epoch_millis) // stride))
    out = []
    t = anchor.epoch_millis + k * stride
    while t < finish:
        out.append(Instant(t))
        t += stride
    return out


def format_axis_value(iv: FuzzyInterval, value: float, unit: Optional[Granularity] = None) -> str:
    """Human text for an axis value: ``"21 days"`` or an ISO instant."""
    if iv.origin is not None:
        return str(Instant(int(round(value))))
    unit = unit or iv.unit
    count = float(f"{value / unit.millis:.12g}")
    return f"{format_count(count)} {unit.value}"
