"""Possibility and necessity of Allen relations between fuzzy periods.

A fuzzy period has a start and a finish that are each only known to lie in a
closed range (typically the decision interval of an ITE). A relation is
*possible* when some crisp choice of all four endpoints, with start < finish
on both sides, realises it, and *necessary* when every such choice does.

Each of the 13 relations fixes a total preorder on the four endpoints, e.g.
``overlaps`` is ``s1 < s2 < f1 < f2`` and ``meets`` is ``s1 < f1 = s2 < f2``.
Equal endpoints are merged by intersecting their ranges; the resulting strict
chain is feasible on a discrete grid iff placing each group as early as its
range allows never overshoots that range. Endpoints live on an integer grid
(milliseconds by default), so strictness means "at least one grid step".
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateFuzzyPeriod
from .ite import FuzzyInterval
from .temporal import AllenRelation, Instant

_BASE_ORDERS = {
    AllenRelation.BEFORE: (("s1",), ("f1",), ("s2",), ("f2",)),
    AllenRelation.MEETS: (("s1",), ("f1", "s2"), ("f2",)),
    AllenRelation.OVERLAPS: (("s1",), ("s2",), ("f1",), ("f2",)),
    AllenRelation.STARTS: (("s1", "s2"), ("f1",), ("f2",)),
    AllenRelation.DURING: (("s2",), ("s1",), ("f1",), ("f2",)),
    AllenRelation.FINISHES: (("s2",), ("s1",), ("f1", "f2")),
    AllenRelation.EQUALS: (("s1", "s2"), ("f1", "f2")),
}

_SWAP = {"s1": "s2", "s2": "s1", "f1": "f2", "f2": "f1"}

ENDPOINT_ORDERS = dict(_BASE_ORDERS)
for _rel, _order in _BASE_ORDERS.items():
    ENDPOINT_ORDERS.setdefault(
        _rel.inverse, tuple(tuple(_SWAP[e] for e in group) for group in _order))


@dataclass(frozen=True)
class FuzzyAllenVerdict:
    possible: bool
    necessary: bool


def _range(x, resolution):
    if isinstance(x, FuzzyInterval):
        lo, hi = x.min_ft, x.max_ft
    elif isinstance(x, Instant):
        lo = hi = x.epoch_millis
    elif isinstance(x, (int, float)):
        lo = hi = x
    else:
        lo, hi = x
    # snap inwards onto the grid, forgiving float noise at exact grid points
    lo_k = math.ceil(lo / resolution - 1e-9)
    hi_k = math.floor(hi / resolution + 1e-9)
    return lo_k, hi_k


def _endpoint_ranges(a, b, resolution):
    ranges = {
        "s1": _range(a[0], resolution), "f1": _range(a[1], resolution),
        "s2": _range(b[0], resolution), "f2": _range(b[1], resolution),
    }
    for side, (s, f) in (("first", ("s1", "f1")), ("second", ("s2", "f2"))):
        (s_lo, s_hi), (f_lo, f_hi) = ranges[s], ranges[f]
        if s_lo > s_hi or f_lo > f_hi or s_lo + 1 > f_hi:
            raise DegenerateFuzzyPeriod(
                f"{side} fuzzy period admits no instantiation with start < finish")
    return ranges


def _chain_feasible(order, ranges) -> bool:
    prev = None
    for group in order:
        lo = max(ranges[e][0] for e in group)
        hi = min(ranges[e][1] for e in group)
        x = lo if prev is None else max(lo, prev + 1)
        if x > hi:
            return False
        prev = x
    return True


def possible_relations(a, b, resolution=1) -> frozenset:
    """All Allen relations that some crisp instantiation of ``a`` and ``b`` realises.

    ``a`` and ``b`` are ``(start, finish)`` pairs whose members are
    :class:`FuzzyInterval` objects, ``(lo, hi)`` bounds, instants or numbers.
    """
    ranges = _endpoint_ranges(a, b, resolution)
    return frozenset(rel for rel, order in ENDPOINT_ORDERS.items()
                     if _chain_feasible(order, ranges))


def fuzzy_allen(a, b, rel, resolution=1) -> FuzzyAllenVerdict:
    rel = rel if isinstance(rel, AllenRelation) else AllenRelation.parse(rel)
    options = possible_relations(a, b, resolution)
    return FuzzyAllenVerdict(rel in options, options == {rel})
