"""In-memory fact store with JSON load/dump.

Domain facts and class assertions are kept apart from fuzzy temporal
propositions, so the temporal layer can be dropped without touching the
domain data. Facts have set semantics keyed on (subject, predicate, object);
re-asserting a fact that differs only in degree or provenance is a no-op.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Optional

import jsonschema

from .errors import LiteralTypeError, MalformedFact, MalformedDuration, MalformedInstant, SchemaError
from .errors import UnknownGranularity
from .ite import FuzzyInterval, ITEKind, fuzzify
from .temporal import Duration, Granularity, Instant, parse_duration, parse_instant
from .terms import CLASS_RE, NAME_RE, Entity, Var, is_ground, term_key, type_tag


def _check_degree(degree, rule):
    if degree is None:
        return
    if rule is None:
        raise MalformedFact("only derived facts may carry a degree")
    if isinstance(degree, bool) or not 0.0 <= degree <= 1.0:
        raise MalformedFact(f"degree must lie in [0, 1], got {degree!r}")


@dataclass(frozen=True)
class Fact:
    subject: str
    predicate: str
    object: object
    rule: Optional[str] = None
    degree: Optional[float] = None

    def __post_init__(self):
        if not isinstance(self.subject, str) or not NAME_RE.match(self.subject):
            raise MalformedFact(f"invalid subject {self.subject!r}")
        if not isinstance(self.predicate, str) or not self.predicate.strip() \
                or any(ch.isspace() for ch in self.predicate):
            raise MalformedFact(f"invalid predicate {self.predicate!r}")
        if isinstance(self.object, Var) or not is_ground(self.object):
            raise MalformedFact(f"object must be an entity or literal, got {self.object!r}")
        _check_degree(self.degree, self.rule)

    @property
    def key(self):
        return (self.subject, self.predicate, term_key(self.object))

    @property
    def provenance(self) -> str:
        return "asserted" if self.rule is None else f"derived({self.rule})"


@dataclass(frozen=True)
class ClassAssertion:
    entity: str
    cls: str
    rule: Optional[str] = None
    degree: Optional[float] = None

    def __post_init__(self):
        if not isinstance(self.entity, str) or not NAME_RE.match(self.entity):
            raise MalformedFact(f"invalid entity {self.entity!r}")
        if not isinstance(self.cls, str) or not CLASS_RE.match(self.cls):
            raise MalformedFact(f"invalid class name {self.cls!r}")
        _check_degree(self.degree, self.rule)

    @property
    def key(self):
        return (self.entity, self.cls)


@dataclass(frozen=True)
class ITESpec:
    """An ITE as stated in the source: kind, valid time, weight, optional origin."""

    kind: ITEKind
    t: Duration
    w: float
    origin: Optional[Instant] = None

    def interval(self) -> FuzzyInterval:
        return fuzzify(self.kind, self.t, self.w, self.origin)


@dataclass(frozen=True)
class FuzzyTemporalProposition:
    id: str
    fuzzy_time: Optional[ITESpec] = None
    fuzzy_duration: Optional[ITESpec] = None

    def __post_init__(self):
        if not NAME_RE.match(self.id):
            raise MalformedFact(f"invalid proposition id {self.id!r}")
        if self.fuzzy_time is None and self.fuzzy_duration is None:
            raise MalformedFact(f"proposition {self.id} needs a fuzzy time or fuzzy duration")
        if self.fuzzy_time is not None and self.fuzzy_time.origin is None:
            raise MalformedFact(f"fuzzy time of {self.id} needs an origin instant")
        if self.fuzzy_duration is not None and self.fuzzy_duration.origin is not None:
            raise MalformedFact(f"fuzzy duration of {self.id} cannot have an origin")

    @property
    def modifier(self):
        spec = self.fuzzy_time or self.fuzzy_duration
        return spec.kind, spec.w


class KnowledgeBase:
    def __init__(self):
        self._facts = {}
        self._by_predicate = {}
        self._by_subject = {}
        self._classes = {}
        self._by_class = {}
        self._propositions = {}

    # -- mutation ---------------------------------------------------------

    def assert_fact(self, fact: Fact) -> bool:
        """Insert ``fact``; return False when an equal fact is already present."""
        if not isinstance(fact, Fact):
            raise MalformedFact(f"not a Fact: {fact!r}")
        key = fact.key
        if key in self._facts:
            return False
        self._facts[key] = fact
        self._by_predicate.setdefault(fact.predicate, {})[key] = None
        self._by_subject.setdefault(fact.subject, {})[key] = None
        return True

    def assert_class(self, assertion: ClassAssertion) -> bool:
        key = assertion.key
        if key in self._classes:
            return False
        self._classes[key] = assertion
        self._by_class.setdefault(assertion.cls, {})[key] = None
        return True

    def add(self, item) -> bool:
        if isinstance(item, ClassAssertion):
            return self.assert_class(item)
        return self.assert_fact(item)

    def add_proposition(self, prop: FuzzyTemporalProposition) -> bool:
        if prop.id in self._propositions:
            return False
        self._propositions[prop.id] = prop
        return True

    def remove_propositions(self):
        self._propositions.clear()

    def copy(self) -> "KnowledgeBase":
        other = KnowledgeBase()
        for item in self.classes:
            other.assert_class(item)
        for item in self.facts:
            other.assert_fact(item)
        for prop in self.propositions:
            other.add_proposition(prop)
        return other

    # -- access -----------------------------------------------------------

    @property
    def facts(self) -> list:
        return list(self._facts.values())

    @property
    def classes(self) -> list:
        return list(self._classes.values())

    @property
    def propositions(self) -> list:
        return list(self._propositions.values())

    def get(self, key):
        """Stored fact or class assertion with the given identity key, if any."""
        if len(key) == 2:
            return self._classes.get(key)
        return self._facts.get(key)

    def __contains__(self, item):
        return item.key in (self._classes if isinstance(item, ClassAssertion) else self._facts)

    def __len__(self):
        return len(self._facts) + len(self._classes)

    def __eq__(self, other):
        if not isinstance(other, KnowledgeBase):
            return NotImplemented
        return (self.facts == other.facts and self.classes == other.classes
                and self.propositions == other.propositions)

    def snapshot(self) -> frozenset:
        """Order-free view of every assertion, degrees and provenance included."""
        return frozenset(self._facts.values()) | frozenset(self._classes.values())

    # -- matching ---------------------------------------------------------

    def match(self, subject, predicate: str, obj=None, binding=None) -> list:
        """Bindings for a property pattern; ``None`` or a :class:`Var` is a wildcard.

        Results are extensions of ``binding`` in fact insertion order, each
        paired with the matched fact: ``[(binding, fact), ...]``.
        """
        binding = binding or {}
        if isinstance(subject, str):
            # a bare name passed by the caller names an individual
            subject = Entity(subject)
        subject = _resolve(subject, binding)
        obj = _resolve(obj, binding)
        if not (subject is None or isinstance(subject, (Var, Entity))):
            return []
        if isinstance(subject, Entity):
            keys = self._by_subject.get(subject.name, {})
            candidates = (self._facts[k] for k in keys if k[1] == predicate)
        else:
            candidates = (self._facts[k] for k in self._by_predicate.get(predicate, {}))
        out = []
        for fact in candidates:
            new = _unify(subject, Entity(fact.subject), binding)
            if new is None:
                continue
            new = _unify(obj, fact.object, new)
            if new is not None:
                out.append((new, fact))
        return out

    def match_class(self, cls: str, term=None, binding=None) -> list:
        binding = binding or {}
        if isinstance(term, str):
            term = Entity(term)
        term = _resolve(term, binding)
        if not (term is None or isinstance(term, (Var, Entity))):
            return []
        if isinstance(term, Entity):
            found = self._classes.get((term.name, cls))
            return [(dict(binding), found)] if found else []
        out = []
        for key in self._by_class.get(cls, {}):
            assertion = self._classes[key]
            new = _unify(term, Entity(assertion.entity), binding)
            if new is not None:
                out.append((new, assertion))
        return out


def _resolve(term, binding):
    if isinstance(term, Var) and term in binding:
        return binding[term]
    return term


def _unify(pattern, value, binding):
    if pattern is None:
        return dict(binding)
    if isinstance(pattern, Var):
        new = dict(binding)
        new[pattern] = value
        return new
    return dict(binding) if term_key(pattern) == term_key(value) else None


# -- JSON -------------------------------------------------------------------

_SCHEMA = None


def fact_schema() -> dict:
    global _SCHEMA
    if _SCHEMA is None:
        text = resources.files(__package__).joinpath("facts.schema.json").read_text("utf-8")
        _SCHEMA = json.loads(text)
    return _SCHEMA


def decode_literal(tag: str, value):
    """Typed JSON literal to a term; raises :class:`LiteralTypeError` on mismatch."""
    try:
        if tag == "entity":
            return Entity(_expect(value, str, tag))
        if tag == "string":
            return _expect(value, str, tag)
        if tag == "integer":
            return _expect(value, int, tag)
        if tag == "decimal":
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise LiteralTypeError(f"decimal literal must be a number, got {value!r}")
            return float(value)
        if tag == "boolean":
            return _expect(value, bool, tag)
        if tag == "instant":
            return parse_instant(_expect(value, str, tag))
        if tag == "duration":
            return parse_duration(_expect(value, str, tag))
        if tag == "granularity":
            return Granularity.parse(_expect(value, str, tag))
    except (MalformedInstant, MalformedDuration, UnknownGranularity, ValueError) as exc:
        if isinstance(exc, LiteralTypeError):
            raise
        raise LiteralTypeError(f"bad {tag} literal {value!r}: {exc}") from None
    raise LiteralTypeError(f"unknown literal type {tag!r}")


def _expect(value, cls, tag):
    if not isinstance(value, cls) or (cls is int and isinstance(value, bool)):
        raise LiteralTypeError(f"{tag} literal has wrong JSON type: {value!r}")
    return value


def encode_literal(value) -> dict:
    tag = type_tag(value)
    if tag in ("entity", "instant", "duration", "granularity"):
        return {"type": tag, "value": str(value)}
    return {"type": tag, "value": value}


def _provenance(rule, degree):
    out = {}
    if rule is not None:
        out["provenance"] = {"rule": rule}
    if degree is not None:
        out["degree"] = degree
    return out


def _encode_ite(spec: ITESpec) -> dict:
    out = {"ite": spec.kind.value, "t": str(spec.t), "w": spec.w}
    if spec.origin is not None:
        out["origin"] = str(spec.origin)
    return out


def _decode_ite(data) -> ITESpec:
    origin = parse_instant(data["origin"]) if "origin" in data else None
    return ITESpec(ITEKind.parse(data["ite"]), parse_duration(data["t"]), data["w"], origin)


def to_document(kb: KnowledgeBase) -> dict:
    classes = []
    for c in kb.classes:
        if c.rule is None and c.degree is None:
            classes.append([c.entity, c.cls])
        else:
            classes.append({"entity": c.entity, "class": c.cls, **_provenance(c.rule, c.degree)})
    facts = [{"s": f.subject, "p": f.predicate, "o": encode_literal(f.object),
              **_provenance(f.rule, f.degree)} for f in kb.facts]
    doc = {"classes": classes, "facts": facts}
    props = []
    for p in kb.propositions:
        entry = {"id": p.id}
        if p.fuzzy_time is not None:
            entry["fuzzyTime"] = _encode_ite(p.fuzzy_time)
        if p.fuzzy_duration is not None:
            entry["fuzzyDuration"] = _encode_ite(p.fuzzy_duration)
        props.append(entry)
    doc["propositions"] = props
    return doc


def dump_facts(kb: KnowledgeBase) -> str:
    return json.dumps(to_document(kb), indent=2, ensure_ascii=False) + "\n"


def from_document(doc) -> KnowledgeBase:
    validator = jsonschema.Draft202012Validator(fact_schema())
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        path = "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}"
                             for p in err.absolute_path)
        raise SchemaError(err.message, path=path)

    kb = KnowledgeBase()
    for item in doc.get("classes", []):
        if isinstance(item, list):
            kb.assert_class(ClassAssertion(item[0], item[1]))
        else:
            kb.assert_class(ClassAssertion(item["entity"], item["class"],
                                           item.get("provenance", {}).get("rule"),
                                           item.get("degree")))
    for item in doc.get("facts", []):
        obj = decode_literal(item["o"]["type"], item["o"]["value"])
        kb.assert_fact(Fact(item["s"], item["p"], obj,
                            item.get("provenance", {}).get("rule"), item.get("degree")))
    for item in doc.get("propositions", []):
        try:
            kb.add_proposition(FuzzyTemporalProposition(
                item["id"],
                _decode_ite(item["fuzzyTime"]) if "fuzzyTime" in item else None,
                _decode_ite(item["fuzzyDuration"]) if "fuzzyDuration" in item else None))
        except (MalformedInstant, MalformedDuration, UnknownGranularity) as exc:
            raise LiteralTypeError(f"bad proposition {item['id']}: {exc}") from None
    return kb


def load_facts(text: str) -> KnowledgeBase:
    """Parse a JSON fact document into a :class:`KnowledgeBase`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(exc.msg, line=exc.lineno, column=exc.colno) from None
    return from_document(doc)


def build(classes: Iterable = (), facts: Iterable = ()) -> KnowledgeBase:
    """Convenience constructor from ``(entity, class)`` pairs and facts.

    Facts may be :class:`Fact` objects or ``(subject, predicate, object)`` tuples.
    """
    kb = KnowledgeBase()
    for entity, cls in classes:
        kb.assert_class(ClassAssertion(entity, cls))
    for fact in facts:
        kb.assert_fact(fact if isinstance(fact, Fact) else Fact(*fact))
    return kb
