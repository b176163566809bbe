"""Forward chaining to a fixpoint, and select queries.

Every pass evaluates all rules against the fact base as it stood at the
start of the pass, then asserts the new head instances in a canonical order.
This keeps the final fact base, degrees included, independent of rule order.

A derived fact's degree is the minimum over the degrees of its body: the
fuzzy built-ins that succeeded and any graded facts it matched. When one
fact is derivable several ways within a pass, the strongest derivation wins
(max degree; crisp counts as 1); ties go to the alphabetically first rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..config import Config
from ..errors import IterationCapExceeded, LiteralTypeError, UnboundVariable, UnknownGranularity
from ..kb import ClassAssertion, Fact, KnowledgeBase
from ..temporal import Granularity
from ..terms import Entity, Var, render, sort_key
from . import builtins
from .syntax import BuiltinAtom, ClassAtom, Constant, PropertyAtom, Query


def _combine(a: Optional[float], b: Optional[float]) -> Optional[float]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _strength(degree):
    return 1.0 if degree is None else degree


def _resolve(term, binding):
    if isinstance(term, Var):
        return binding.get(term, term)
    return term


def _eval_builtin(atom: BuiltinAtom, binding, config: Config, now):
    spec = builtins.lookup(atom.namespace, atom.name)
    spec.check_arity(len(atom.args))
    args = [_resolve(a, binding) for a in atom.args]
    for i, a in enumerate(args):
        if isinstance(a, Var) and not (i == 0 and spec.binds_first):
            raise UnboundVariable(f"{atom}: variable {a} is unbound")
    out = []
    for value, degree in spec.fn(tuple(args), config, now):
        new = binding
        if value is not None:
            new = dict(binding)
            new[args[0]] = value
        out.append((new, degree))
    return out


def solve(kb: KnowledgeBase, plan, config: Config, now=None) -> list:
    """All ``(binding, degree)`` solutions of a planned body against ``kb``."""
    now = now if now is not None else config.current_time()
    partial = [({}, None)]
    for atom in plan:
        step = []
        for binding, degree in partial:
            if isinstance(atom, BuiltinAtom):
                for new, d in _eval_builtin(atom, binding, config, now):
                    step.append((new, _combine(degree, d)))
            elif isinstance(atom, ClassAtom):
                for new, found in kb.match_class(atom.cls, atom.arg, binding):
                    step.append((new, _combine(degree, found.degree)))
            else:
                for new, found in kb.match(atom.subject, atom.predicate, atom.object, binding):
                    step.append((new, _combine(degree, found.degree)))
        partial = step
        if not partial:
            break
    return partial


def _ground_object(term):
    if isinstance(term, Constant):
        try:
            return Granularity.parse(term.name)
        except UnknownGranularity:
            raise LiteralTypeError(f"cannot assert constant {term} as a value") from None
    return term


def _instantiate(atom, binding, rule_name, degree):
    if isinstance(atom, ClassAtom):
        entity = _resolve(atom.arg, binding)
        if not isinstance(entity, Entity):
            raise LiteralTypeError(f"{atom}: class member must be an individual, got {entity!r}")
        return ClassAssertion(entity.name, atom.cls, rule_name, degree)
    subject = _resolve(atom.subject, binding)
    if not isinstance(subject, Entity):
        raise LiteralTypeError(f"{atom}: subject must be an individual, got {subject!r}")
    return Fact(subject.name, atom.predicate, _ground_object(_resolve(atom.object, binding)),
                rule_name, degree)


def _item_sort_key(item):
    if isinstance(item, ClassAssertion):
        return (0, item.entity, item.cls, ("", "", ""))
    return (1, item.subject, item.predicate, sort_key(item.object))


def describe(item) -> str:
    if isinstance(item, ClassAssertion):
        text = f"{item.cls}({item.entity})"
    else:
        text = f"{item.predicate}({item.subject}, {render(item.object)})"
    if item.degree is not None:
        text += f" [{item.degree:.6g}]"
    return text


@dataclass
class DerivationReport:
    iterations: int = 0
    derived: list = field(default_factory=list)
    fired: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "iterations": self.iterations,
            "derived": [{"iteration": i, "rule": item.rule, "fact": describe(item),
                         "degree": item.degree} for i, item in self.derived],
            "fired": [{"iteration": i, "rule": r, "fact": text} for i, r, text in self.fired],
        }


def forward_chain(kb: KnowledgeBase, rules, config: Optional[Config] = None,
                  in_place: bool = False):
    """Run ``rules`` to a fixpoint; return ``(kb', report)``.

    ``kb`` is copied unless ``in_place`` is set. Raises
    :class:`IterationCapExceeded` when ``config.max_iterations`` passes still
    produce new facts.
    """
    config = config or Config()
    now = config.current_time()
    kb = kb if in_place else kb.copy()
    report = DerivationReport()
    if not rules:
        return kb, report

    for iteration in range(1, config.max_iterations + 1):
        report.iterations = iteration
        best = {}
        for rule in rules:
            for binding, degree in solve(kb, rule.plan, config, now):
                for atom in rule.head:
                    item = _instantiate(atom, binding, rule.name, degree)
                    report.fired.append((iteration, rule.name, describe(item)))
                    if item in kb:
                        continue
                    current = best.get(item.key)
                    if current is None or (_strength(item.degree), current.rule) > \
                            (_strength(current.degree), item.rule):
                        best[item.key] = item
        if not best:
            return kb, report
        for item in sorted(best.values(), key=_item_sort_key):
            kb.add(item)
            report.derived.append((iteration, item))
    raise IterationCapExceeded(
        f"no fixpoint after {config.max_iterations} iterations")


@dataclass
class QueryResult:
    columns: tuple
    rows: list  # [(values, degree)]

    def to_tsv(self) -> str:
        lines = ["\t".join(list(self.columns) + ["degree"])]
        for values, degree in self.rows:
            cells = [render(v) for v in values]
            cells.append("" if degree is None else f"{degree:.6g}")
            lines.append("\t".join(cells))
        return "\n".join(lines) + "\n"


def run_query(kb: KnowledgeBase, query: Query, config: Optional[Config] = None) -> QueryResult:
    """Project every solution of the query body onto its select variables.

    Rows that coincide after projection keep the strongest degree; rows are
    sorted by their column values.
    """
    config = config or Config()
    rows = {}
    for binding, degree in solve(kb, query.plan, config):
        values = tuple(binding[v] for v in query.select)
        key = tuple(sort_key(v) for v in values)
        if key not in rows or _strength(degree) > _strength(rows[key][1]):
            rows[key] = (values, degree)
    ordered = [rows[k] for k in sorted(rows)]
    return QueryResult(tuple(v.name for v in query.select), ordered)
