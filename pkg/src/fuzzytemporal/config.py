"""Engine configuration, optionally loaded from a JSON file.

Example file (every key optional; tables merge over the defaults)::

    {
      "default_w": 0.4,
      "fuzzy_counts": {"few": [2, 4], "next": {"lo": 1, "hi": 1, "offset": 1}},
      "fuzzy_granularities": {"weeks": "7 days",
                              "noon": {"expansion": "12 hours", "clock": true}},
      "deictic_window": "7 days",
      "max_iterations": 1000,
      "now": "2020-01-15T00:00:00Z"
    }
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Mapping, Optional

from .errors import SchemaError
from .fuzzy import check_weight
from .ite import (
    DEFAULT_DEICTIC_WINDOW,
    DEFAULT_FUZZY_COUNTS,
    DEFAULT_FUZZY_GRANULARITIES,
    DEFAULT_W,
    FuzzyCountSpec,
    FuzzyGranularitySpec,
)
from .temporal import Duration, Instant, parse_duration, parse_instant

_KEYS = {"default_w", "fuzzy_counts", "fuzzy_granularities", "deictic_window",
         "max_iterations", "now"}


@dataclass(frozen=True)
class Config:
    default_w: float = DEFAULT_W
    fuzzy_counts: Mapping[str, FuzzyCountSpec] = field(default=DEFAULT_FUZZY_COUNTS)
    fuzzy_granularities: Mapping[str, FuzzyGranularitySpec] = field(
        default=DEFAULT_FUZZY_GRANULARITIES)
    deictic_window: Duration = DEFAULT_DEICTIC_WINDOW
    max_iterations: int = 1000
    now: Optional[Instant] = None

    def __post_init__(self):
        check_weight(self.default_w)
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")

    def replace(self, **changes) -> "Config":
        return dataclasses.replace(self, **changes)

    def current_time(self) -> Instant:
        return self.now if self.now is not None else Instant.now()

    @classmethod
    def from_dict(cls, data: dict) -> "Config":
        if not isinstance(data, dict):
            raise SchemaError("configuration must be a JSON object")
        unknown = set(data) - _KEYS
        if unknown:
            raise SchemaError(f"unknown configuration keys: {sorted(unknown)}")
        kwargs = {}
        try:
            if "default_w" in data:
                kwargs["default_w"] = data["default_w"]
            if "max_iterations" in data:
                kwargs["max_iterations"] = int(data["max_iterations"])
            if "deictic_window" in data:
                kwargs["deictic_window"] = parse_duration(data["deictic_window"])
            if data.get("now") is not None:
                kwargs["now"] = parse_instant(data["now"])
            if "fuzzy_counts" in data:
                counts = dict(DEFAULT_FUZZY_COUNTS)
                for key, value in data["fuzzy_counts"].items():
                    counts[key.lower()] = _count_spec(key.lower(), value)
                kwargs["fuzzy_counts"] = MappingProxyType(counts)
            if "fuzzy_granularities" in data:
                grans = dict(DEFAULT_FUZZY_GRANULARITIES)
                for key, value in data["fuzzy_granularities"].items():
                    grans[key.lower()] = _granularity_spec(key.lower(), value)
                kwargs["fuzzy_granularities"] = MappingProxyType(grans)
            return cls(**kwargs)
        except SchemaError:
            raise
        except (ValueError, TypeError, AttributeError) as exc:
            raise SchemaError(f"invalid configuration: {exc}") from None

    @classmethod
    def load(cls, path) -> "Config":
        text = Path(path).read_text(encoding="utf-8")
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(exc.msg, line=exc.lineno, column=exc.colno) from None
        return cls.from_dict(data)


def _count_spec(key, value):
    if isinstance(value, (list, tuple)):
        lo, hi = value
        return FuzzyCountSpec(key, lo, hi)
    return FuzzyCountSpec(key, value["lo"], value["hi"], value.get("offset"))


def _granularity_spec(key, value):
    if isinstance(value, str):
        return FuzzyGranularitySpec(key, parse_duration(value))
    return FuzzyGranularitySpec(key, parse_duration(value["expansion"]),
                                bool(value.get("clock", False)))
