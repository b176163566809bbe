"""Rule and query syntax trees."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..temporal import Duration, Granularity, Instant
from ..terms import Var, render

BUILTIN_NAMESPACES = ("temporal", "fuzzytemporal")


@dataclass(frozen=True)
class Constant:
    """A namespaced constant such as ``temporal:weeks``."""

    namespace: str
    name: str

    def __str__(self):
        return f"{self.namespace}:{self.name}"


def term_text(term) -> str:
    if isinstance(term, str):
        return "'" + term.replace("\\", "\\\\").replace("'", "\\'") + "'"
    if isinstance(term, (Var, Constant)):
        return str(term)
    if isinstance(term, (Instant, Duration, Granularity)):
        return f"'{term}'"
    return render(term)


@dataclass(frozen=True)
class ClassAtom:
    cls: str
    arg: object

    @property
    def args(self):
        return (self.arg,)

    def __str__(self):
        return f"{self.cls}({term_text(self.arg)})"


@dataclass(frozen=True)
class PropertyAtom:
    predicate: str
    subject: object
    object: object

    @property
    def args(self):
        return (self.subject, self.object)

    def __str__(self):
        return f"{self.predicate}({term_text(self.subject)}, {term_text(self.object)})"


@dataclass(frozen=True)
class BuiltinAtom:
    namespace: str
    name: str
    args: tuple

    def __str__(self):
        return f"{self.namespace}:{self.name}({', '.join(term_text(a) for a in self.args)})"


def atom_vars(atom) -> list:
    return [a for a in atom.args if isinstance(a, Var)]


@dataclass(frozen=True)
class Rule:
    name: str
    body: tuple
    head: tuple
    line: int = 0
    plan: tuple = field(default=(), compare=False, repr=False)

    def __str__(self):
        body = ", ".join(str(a) for a in self.body)
        head = ", ".join(str(a) for a in self.head)
        return f"rule {self.name}: {body} -> {head}"


@dataclass(frozen=True)
class Query:
    body: tuple
    select: tuple
    plan: tuple = field(default=(), compare=False, repr=False)
