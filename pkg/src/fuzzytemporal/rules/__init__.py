from .engine import DerivationReport, QueryResult, forward_chain, run_query, solve
from .parser import parse_query, parse_rules
from .syntax import BuiltinAtom, ClassAtom, Constant, PropertyAtom, Query, Rule

__all__ = [
    "BuiltinAtom", "ClassAtom", "Constant", "DerivationReport", "PropertyAtom", "Query",
    "QueryResult", "Rule", "forward_chain", "parse_query", "parse_rules", "run_query", "solve",
]
