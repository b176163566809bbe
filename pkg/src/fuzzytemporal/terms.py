"""Ground and variable terms shared by the fact store and the rule engine."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .temporal import Duration, Granularity, Instant, format_count

NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_-]*$")
# class names may carry a namespace prefix, e.g. ex:Person
CLASS_RE = re.compile(r"^(?:[A-Za-z_][A-Za-z0-9_-]*:)?[A-Za-z_][A-Za-z0-9_-]*$")


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return f"?{self.name}"


@dataclass(frozen=True)
class Entity:
    """A named individual, as opposed to a string literal."""

    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not NAME_RE.match(self.name):
            raise ValueError(f"invalid entity name {self.name!r}")

    def __str__(self):
        return self.name


# order matters: bool is an int subclass
_TAGS = (
    (Entity, "entity"),
    (bool, "boolean"),
    (int, "integer"),
    (float, "decimal"),
    (str, "string"),
    (Instant, "instant"),
    (Duration, "duration"),
    (Granularity, "granularity"),
)

LITERAL_TYPES = tuple(tag for _, tag in _TAGS)


def type_tag(value) -> str:
    for cls, tag in _TAGS:
        if isinstance(value, cls):
            return tag
    raise TypeError(f"not a ground term: {value!r}")


def is_ground(value) -> bool:
    try:
        type_tag(value)
    except TypeError:
        return False
    return True


def term_key(value):
    """Hashable identity that keeps ``True``, ``1`` and ``1.0`` apart."""
    return (type_tag(value), value)


def sort_key(value):
    tag = type_tag(value)
    if tag in ("integer", "decimal"):
        return ("number", value, tag)
    if tag == "instant":
        return (tag, value.epoch_millis, "")
    if tag == "duration":
        return (tag, value.millis, str(value))
    if tag == "boolean":
        return (tag, int(value), "")
    return (tag, str(value), "")


def render(value) -> str:
    """Compact text form used in query tables and reports."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        return format_count(value)
    return str(value)
