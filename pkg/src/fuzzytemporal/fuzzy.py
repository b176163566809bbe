"""Membership functions and min/max fuzzy set operations.

Five parametric families are supported, with parameters stored in the order
given by ``PARAM_NAMES``:

    gaussmf  (c, sigma)       exp(-(x - c)^2 / (2 sigma^2))
    trapmf   (a, b, c, d)     trapezoid with feet a, d and shoulders b, c
    gbellmf  (c, a, b)        1 / (1 + |(x - c) / a|^(2b))
    smf      (a, b)           spline S-curve rising from a to b
    zmf      (a, b)           spline Z-curve falling from a to b

A zero width (``sigma == 0``, ``a == 0`` for gbellmf, ``a == b`` for the
ramps) is accepted and collapses the curve to its crisp limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidDegree, InvalidParams, InvalidRange

PARAM_NAMES = {
    "gaussmf": ("c", "sigma"),
    "trapmf": ("a", "b", "c", "d"),
    "gbellmf": ("c", "a", "b"),
    "smf": ("a", "b"),
    "zmf": ("a", "b"),
}


@dataclass(frozen=True)
class MembershipFunction:
    family: str
    params: tuple

    def __post_init__(self):
        if self.family not in PARAM_NAMES:
            raise InvalidParams(f"unknown membership family {self.family!r}")
        params = tuple(float(p) for p in self.params)
        object.__setattr__(self, "params", params)
        if len(params) != len(PARAM_NAMES[self.family]):
            raise InvalidParams(
                f"{self.family} takes {len(PARAM_NAMES[self.family])} params, got {len(params)}")
        if not all(math.isfinite(p) for p in params):
            raise InvalidParams(f"{self.family} params must be finite: {params}")
        _validate(self.family, params)

    def named_params(self) -> dict:
        return dict(zip(PARAM_NAMES[self.family], self.params))

    def __call__(self, x):
        return evaluate(self, x)


def _validate(family, p):
    if family == "gaussmf" and p[1] < 0:
        raise InvalidParams("gaussmf sigma must be >= 0")
    if family == "trapmf" and not p[0] <= p[1] <= p[2] <= p[3]:
        raise InvalidParams(f"trapmf needs a <= b <= c <= d, got {p}")
    if family == "gbellmf" and (p[1] < 0 or p[2] <= 0):
        raise InvalidParams("gbellmf needs half-width a >= 0 and slope b > 0")
    if family in ("smf", "zmf") and not p[0] <= p[1]:
        raise InvalidParams(f"{family} needs a <= b, got {p}")


def gaussmf(c, sigma):
    return MembershipFunction("gaussmf", (c, sigma))


def trapmf(a, b, c, d):
    return MembershipFunction("trapmf", (a, b, c, d))


def gbellmf(c, a, b=2.0):
    return MembershipFunction("gbellmf", (c, a, b))


def smf(a, b):
    return MembershipFunction("smf", (a, b))


def zmf(a, b):
    return MembershipFunction("zmf", (a, b))


def _gauss(x, c, sigma):
    if sigma == 0:
        return np.where(x == c, 1.0, 0.0)
    return np.exp(-((x - c) ** 2) / (2.0 * sigma ** 2))


def _gbell(x, c, a, b):
    if a == 0:
        return np.where(x == c, 1.0, 0.0)
    return 1.0 / (1.0 + np.abs((x - c) / a) ** (2.0 * b))


def _ramp_up(x, a, b):
    if a == b:
        return np.where(x >= b, 1.0, 0.0)
    return np.clip((x - a) / (b - a), 0.0, 1.0)


def _ramp_down(x, c, d):
    if c == d:
        return np.where(x <= c, 1.0, 0.0)
    return np.clip((d - x) / (d - c), 0.0, 1.0)


def _trap(x, a, b, c, d):
    return np.minimum(_ramp_up(x, a, b), _ramp_down(x, c, d))


def _s(x, a, b):
    if a == b:
        return np.where(x >= b, 1.0, 0.0)
    mid = (a + b) / 2.0
    span = b - a
    low = 2.0 * ((x - a) / span) ** 2
    high = 1.0 - 2.0 * ((x - b) / span) ** 2
    return np.where(x <= a, 0.0, np.where(x <= mid, low, np.where(x < b, high, 1.0)))


def _z(x, a, b):
    if a == b:
        return np.where(x <= a, 1.0, 0.0)
    mid = (a + b) / 2.0
    span = b - a
    high = 1.0 - 2.0 * ((x - a) / span) ** 2
    low = 2.0 * ((x - b) / span) ** 2
    return np.where(x <= a, 1.0, np.where(x <= mid, high, np.where(x < b, low, 0.0)))


_KERNELS = {"gaussmf": _gauss, "trapmf": _trap, "gbellmf": _gbell, "smf": _s, "zmf": _z}


def evaluate(mf: MembershipFunction, x):
    """Membership degree of ``x`` (scalar or array) under ``mf``."""
    arr = np.asarray(x, dtype=float)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        mu = _KERNELS[mf.family](arr, *mf.params)
    mu = np.clip(mu, 0.0, 1.0)
    return float(mu) if mu.ndim == 0 else mu


def _check_degree(d):
    if not 0.0 <= d <= 1.0:
        raise InvalidDegree(f"degree must lie in [0, 1], got {d!r}")
    return d


def complement(d):
    return 1.0 - _check_degree(d)


def intersect(d1, d2):
    return min(_check_degree(d1), _check_degree(d2))


def union(d1, d2):
    return max(_check_degree(d1), _check_degree(d2))


def check_weight(w) -> float:
    """Validate a weight degree: ``0 < w <= 1`` (``w == 1`` is the crisp limit)."""
    if isinstance(w, bool) or not isinstance(w, (int, float)) or not 0.0 < w <= 1.0:
        raise InvalidDegree(f"weight degree must satisfy 0 < w <= 1, got {w!r}")
    return float(w)


def sample_curve(mf: MembershipFunction, lo: float, hi: float, n: int):
    """``n`` evenly spaced ``(x, mu)`` pairs over ``[lo, hi]``, endpoints included."""
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
        raise InvalidRange(f"need lo < hi, got [{lo}, {hi}]")
    if int(n) != n or n < 2:
        raise InvalidRange(f"need at least 2 samples, got {n}")
    xs = np.linspace(lo, hi, int(n))
    mus = evaluate(mf, xs)
    return [(float(x), float(m)) for x, m in zip(xs, mus)]
