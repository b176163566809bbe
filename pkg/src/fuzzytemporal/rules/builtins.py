"""Built-in predicates of the ``temporal`` and ``fuzzytemporal`` namespaces.

A built-in receives its arguments after the current binding has been
applied and returns a list of outcomes ``(value, degree)``. An empty list
means the atom fails. ``value`` is the term bound to an unbound first
argument (only for built-ins registered with ``binds_first``) and is
``None`` for plain filters. ``degree`` is ``None`` for crisp success.

Fuzzy ITE built-ins take ``(subject, [count], [granularity], [w], [origin])``;
the optional arguments are recognised in that order by their kind.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..config import Config
from ..errors import ArityError, AxisMismatch, LiteralTypeError, MalformedDuration
from ..errors import MalformedInstant, UnknownGranularity, UnknownKeyword
from ..ite import (
    DEICTIC_KEYWORDS,
    ITE_ALIASES,
    ITEKind,
    eval_date_granularity,
    fuzzify,
    resolve_fuzzy_count,
    resolve_fuzzy_granularity,
    resolve_unit,
    satisfies,
    scale,
    set_stride,
    SET_STRIDES,
)
from ..temporal import (
    AllenRelation,
    Duration,
    Granularity,
    Instant,
    Period,
    add_duration,
    allen_relation,
    duration_millis,
    parse_duration,
    parse_instant,
)
from ..terms import Var
from .syntax import Constant

_DAY_MS = 24 * 60 * 60 * 1000


@dataclass(frozen=True)
class Builtin:
    namespace: str
    name: str
    fn: Callable
    min_args: int
    max_args: int
    binds_first: bool = False

    def check_arity(self, n: int):
        if not self.min_args <= n <= self.max_args:
            expected = (str(self.min_args) if self.min_args == self.max_args
                        else f"{self.min_args}-{self.max_args}")
            raise ArityError(f"{self.namespace}:{self.name} takes {expected} arguments, got {n}")


def normalize(name: str) -> str:
    return "".join(ch for ch in name.lower() if ch.isalnum())


_REGISTRY = {}


def register(namespace, names, min_args, max_args, binds_first=False):
    def deco(fn):
        for name in names:
            _REGISTRY[(namespace, normalize(name))] = Builtin(
                namespace, name, fn, min_args, max_args, binds_first)
        return fn
    return deco


def lookup(namespace: str, name: str) -> Builtin:
    try:
        return _REGISTRY[(namespace, normalize(name))]
    except KeyError:
        raise UnknownKeyword(f"unknown built-in {namespace}:{name}") from None


def known_builtins():
    return sorted(f"{b.namespace}:{b.name}" for b in _REGISTRY.values())


# -- argument coercion ------------------------------------------------------

def _is_number(v) -> bool:
    if isinstance(v, bool):
        return False
    if isinstance(v, (int, float)):
        return True
    if isinstance(v, str):
        try:
            float(v)
        except ValueError:
            return False
        return True
    return False


def as_number(v):
    if not _is_number(v):
        raise LiteralTypeError(f"expected a number, got {v!r}")
    if isinstance(v, str):
        f = float(v)
        return int(f) if f.is_integer() and "." not in v and "e" not in v.lower() else f
    return v


def as_instant(v) -> Instant:
    if isinstance(v, Instant):
        return v
    if isinstance(v, str):
        try:
            return parse_instant(v)
        except MalformedInstant as exc:
            raise LiteralTypeError(str(exc)) from None
    raise AxisMismatch(f"expected an instant, got {v!r}")


def as_duration(v) -> Duration:
    if isinstance(v, Duration):
        return v
    if isinstance(v, str):
        try:
            return parse_duration(v)
        except (MalformedDuration, UnknownGranularity) as exc:
            raise LiteralTypeError(str(exc)) from None
    raise AxisMismatch(f"expected a duration, got {v!r}")


def _unit_name(v):
    if isinstance(v, Constant):
        return v.name
    if isinstance(v, Granularity):
        return v
    if isinstance(v, str):
        return v
    return None


def _is_unit(v, config) -> bool:
    name = _unit_name(v)
    if name is None:
        return False
    try:
        resolve_unit(name, config.fuzzy_granularities)
    except UnknownGranularity:
        return False
    return True


def as_unit(v, config) -> Duration:
    name = _unit_name(v)
    if name is None:
        raise LiteralTypeError(f"expected a granularity, got {v!r}")
    return resolve_unit(name, config.fuzzy_granularities)


def _is_instant(v) -> bool:
    if isinstance(v, Instant):
        return True
    if isinstance(v, str):
        try:
            parse_instant(v)
        except MalformedInstant:
            return False
        return True
    return False


def _temporal_value(v):
    """Instant, Duration or number for comparison built-ins."""
    if isinstance(v, (Instant, Duration)):
        return v
    if isinstance(v, str):
        try:
            return parse_duration(v)
        except (MalformedDuration, UnknownGranularity):
            return as_instant(v)
    if _is_number(v):
        return v
    raise AxisMismatch(f"not a temporal value: {v!r}")


def _ok(degree=None):
    return [(None, degree)]


# -- fuzzy ITE built-ins ----------------------------------------------------

def _ite(kind: ITEKind):
    def fn(args, config: Config, now):
        subject = args[0]
        rest = list(args[1:])
        count = unit = w = origin = None
        if rest and _is_number(rest[0]):
            count = as_number(rest.pop(0))
        if rest and _is_unit(rest[0], config):
            unit = as_unit(rest.pop(0), config)
        if rest and _is_number(rest[0]):
            w = as_number(rest.pop(0))
        if rest and _is_instant(rest[0]):
            origin = as_instant(rest.pop(0))
        if rest:
            raise ArityError(f"fuzzytemporal:{kind.value}: unexpected argument {rest[0]!r}")

        if isinstance(subject, str):
            subject = _temporal_value(subject)
        if isinstance(subject, Instant) and origin is None:
            raise AxisMismatch(
                f"fuzzytemporal:{kind.value} on an instant needs an origin instant argument")
        if not isinstance(subject, (Instant, Duration)):
            raise AxisMismatch(f"fuzzytemporal:{kind.value} cannot apply to {subject!r}")
        if unit is None:
            if not isinstance(subject, Duration):
                raise ArityError(f"fuzzytemporal:{kind.value} needs a granularity argument")
            unit = Duration(1, subject.granularity)
        if count is None:
            count = (resolve_fuzzy_count("few", config.fuzzy_counts).midpoint
                     if kind is ITEKind.FEW else 1)
        iv = fuzzify(kind, scale(unit, count), w, origin, default_w=config.default_w)
        holds, degree = satisfies(iv, subject)
        return _ok(degree) if holds else []
    return fn


for _kind in ITEKind:
    _aliases = sorted({a for a, k in ITE_ALIASES.items() if k is _kind})
    register("fuzzytemporal", _aliases, 1, 5)(_ite(_kind))


# -- fuzzy durations and counts ---------------------------------------------

def _count_window(keyword, gran, config):
    spec = resolve_fuzzy_count(keyword, config.fuzzy_counts)
    unit = as_unit(gran, config)
    return duration_millis(scale(unit, spec.lo)), duration_millis(scale(unit, spec.hi))


def _fuzzy_duration_cmp(op):
    def fn(args, config, now):
        d = duration_millis(as_duration(args[0]))
        keyword = args[1].name if isinstance(args[1], Constant) else str(args[1])
        lo, hi = _count_window(keyword, args[2], config)
        if op == "lt":
            return _ok() if d < lo else []
        if op == "gt":
            return _ok() if d > hi else []
        return _ok() if lo <= d <= hi else []
    return fn


register("fuzzytemporal", ["fuzzyDuration", "fuzzyDurationEqualTo", "fuzzyDurationEqualsTo"],
         3, 3)(_fuzzy_duration_cmp("eq"))
register("fuzzytemporal", ["fuzzyDurationLessThan"], 3, 3)(_fuzzy_duration_cmp("lt"))
register("fuzzytemporal", ["fuzzyDurationGreaterThan"], 3, 3)(_fuzzy_duration_cmp("gt"))


def _count_keyword(keyword):
    def fn(args, config, now):
        return _fuzzy_duration_cmp("eq")((args[0], keyword, args[1]), config, now)
    return fn


for _kw in ("several", "many", "twice"):
    register("fuzzytemporal", [_kw], 2, 2)(_count_keyword(_kw))


def _relative_window(keyword):
    def fn(args, config, now):
        t = as_instant(args[0])
        spec = resolve_fuzzy_count(keyword, config.fuzzy_counts)
        stride = duration_millis(as_unit(args[1], config))
        start = now.epoch_millis + spec.offset * stride
        return _ok() if start <= t.epoch_millis < start + stride else []
    return fn


for _kw in ("this", "next", "last"):
    register("fuzzytemporal", [_kw], 2, 2)(_relative_window(_kw))


@register("fuzzytemporal", ["noon"], 1, 2)
def _noon(args, config, now):
    t = as_instant(args[0])
    w = as_number(args[1]) if len(args) > 1 else None
    spec = resolve_fuzzy_granularity("noon", config.fuzzy_granularities)
    iv = fuzzify(ITEKind.ABOUT, spec.expansion, w, default_w=config.default_w)
    holds, degree = satisfies(iv, float(t.epoch_millis % _DAY_MS))
    return _ok(degree) if holds else []


@register("fuzzytemporal", ["weekend"], 1, 1)
def _weekend(args, config, now):
    t = as_instant(args[0])
    weekday = (t.epoch_millis // _DAY_MS + 3) % 7  # 1970-01-01 was a Thursday; Monday = 0
    return _ok() if weekday >= 5 else []


# -- set and date granularities ---------------------------------------------

def _set_member(keyword):
    def fn(args, config, now):
        t, anchor = as_instant(args[0]), as_instant(args[1])
        stride = duration_millis(set_stride(keyword))
        diff = t.epoch_millis - anchor.epoch_millis
        return _ok() if diff >= 0 and diff % stride == 0 else []
    return fn


_SET_SPELLINGS = {"yearly": "yearly", "peryear": "perYear", "monthly": "monthly",
                  "weekly": "weekly", "perweek": "perWeek", "daily": "daily",
                  "hourly": "hourly", "perhour": "perHour", "perminute": "perMinute",
                  "persecond": "perSecond", "perseconds": "perSeconds"}
for _key in SET_STRIDES:
    register("fuzzytemporal", [_SET_SPELLINGS[_key]], 2, 2)(_set_member(_key))


@register("fuzzytemporal", ["ago"], 2, 3, binds_first=True)
def _ago(args, config, now):
    d = as_duration(args[1]) if len(args) == 2 else scale(as_unit(args[2], config),
                                                          as_number(args[1]))
    when = eval_date_granularity("ago", d, now)
    if isinstance(args[0], Var):
        return [(when, None)]
    return _ok() if as_instant(args[0]) <= when else []


@register("fuzzytemporal", ["past", "thePast"], 2, 3)
def _past(args, config, now):
    d = as_duration(args[1]) if len(args) == 2 else scale(as_unit(args[2], config),
                                                          as_number(args[1]))
    period = eval_date_granularity("past", d, now)
    return _ok() if period.contains_instant(as_instant(args[0])) else []


@register("fuzzytemporal", ["since"], 2, 2)
def _since(args, config, now):
    period = eval_date_granularity("since", as_instant(args[1]), now)
    return _ok() if period.contains_instant(as_instant(args[0])) else []


def _deictic(keyword):
    def fn(args, config, now):
        period = eval_date_granularity(keyword, None, now, config.deictic_window)
        return _ok() if period.contains_instant(as_instant(args[0])) else []
    return fn


for _kw in sorted(DEICTIC_KEYWORDS):
    register("fuzzytemporal", [_kw], 1, 1)(_deictic(_kw))


# -- crisp temporal built-ins -----------------------------------------------

def _allen(rel: AllenRelation):
    def fn(args, config, now):
        if len(args) == 4:
            a = Period(as_instant(args[0]), as_instant(args[1]))
            b = Period(as_instant(args[2]), as_instant(args[3]))
            return _ok() if allen_relation(a, b) is rel else []
        if len(args) != 2:
            raise ArityError(f"temporal:{rel.value} takes 2 or 4 arguments")
        x, y = _temporal_value(args[0]), _temporal_value(args[1])
        if type(x) is not type(y) and not (_is_number(x) and _is_number(y)):
            raise AxisMismatch(f"temporal:{rel.value} cannot compare {args[0]!r} and {args[1]!r}")
        if isinstance(x, Instant):
            x, y = x.epoch_millis, y.epoch_millis
        elif isinstance(x, Duration):
            x, y = duration_millis(x), duration_millis(y)
        if rel is AllenRelation.BEFORE:
            return _ok() if x < y else []
        if rel is AllenRelation.AFTER:
            return _ok() if x > y else []
        if rel is AllenRelation.EQUALS:
            return _ok() if x == y else []
        return []
    return fn


for _rel in AllenRelation:
    register("temporal", [_rel.value], 2, 4)(_allen(_rel))


def _duration_cmp(op):
    def fn(args, config, now):
        a = duration_millis(as_duration(args[0]))
        if len(args) == 3:
            b = duration_millis(scale(as_unit(args[2], config), as_number(args[1])))
        else:
            b = duration_millis(as_duration(args[1]))
        ok = {"lt": a < b, "eq": a == b, "gt": a > b}[op]
        return _ok() if ok else []
    return fn


register("temporal", ["durationLessThan"], 2, 3)(_duration_cmp("lt"))
register("temporal", ["durationEqualTo"], 2, 3)(_duration_cmp("eq"))
register("temporal", ["durationGreaterThan"], 2, 3)(_duration_cmp("gt"))


def _bind_or_compare(first, value):
    if isinstance(first, Var):
        return [(value, None)]
    if isinstance(value, Instant):
        return _ok() if as_instant(first) == value else []
    return _ok() if as_number(first) == value else []


@register("temporal", ["duration"], 4, 4, binds_first=True)
def _duration(args, config, now):
    t1, t2 = as_instant(args[1]), as_instant(args[2])
    unit = duration_millis(as_unit(args[3], config))
    diff = t2.epoch_millis - t1.epoch_millis
    value = diff // unit if diff % unit == 0 else diff / unit
    return _bind_or_compare(args[0], value)


@register("temporal", ["add"], 4, 4, binds_first=True)
def _add(args, config, now):
    t = as_instant(args[1])
    count = as_number(args[2])
    shift = scale(as_unit(args[3], config), abs(count))
    value = add_duration(t, shift, -1 if count < 0 else 1)
    return _bind_or_compare(args[0], value)
