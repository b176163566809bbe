"""Fuzzy-temporal rule engine.

Imprecise temporal expressions ("about 30 days", "within 2 weeks") become
fuzzy intervals with calibrated membership functions; SWRL-style rules use
them as built-ins over a small fact store.
"""

from .config import Config
from .fuzzy import MembershipFunction, complement, evaluate, intersect, sample_curve, union
from .fuzzy_allen import FuzzyAllenVerdict, fuzzy_allen, possible_relations
from .ite import FuzzyInterval, ITEKind, classify_early_late, fuzzify, satisfies
from .kb import ClassAssertion, Fact, KnowledgeBase, dump_facts, load_facts
from .rules import forward_chain, parse_query, parse_rules, run_query
from .temporal import (
    AllenRelation,
    Duration,
    Granularity,
    Instant,
    Period,
    add_duration,
    allen_relation,
    compare_durations,
    parse_duration,
    parse_instant,
)
from .terms import Entity, Var

__version__ = "0.1.0"
