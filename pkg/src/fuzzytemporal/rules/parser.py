"""Parser for the textual rule dialect.

    # comment
    rule r1: BambaraBeans(?bb), hasGerminationTime(?bb, ?gt),
             fuzzytemporal:around(?gt, '2', temporal:weeks) -> GerminationPeriod(?bb, true)

Atoms are separated by ``,`` or ``^``; ``->`` (also ``→`` / ``⟶``) separates
body from head. A statement ends at ``.`` or at a newline that is not inside
parentheses and does not follow a separator. ``rule <name>:`` is optional;
unnamed rules are called ``r1``, ``r2``, ... by position.

Terms: ``?var``, quoted strings, numbers, ``true``/``false``, bare names
(individuals) and namespaced constants such as ``temporal:days``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import (ArityError, ParseError, UnknownBuiltin, UnknownGranularity, UnknownKeyword,
                      UnsafeRule)
from ..temporal import Granularity
from ..terms import Entity, Var
from . import builtins
from .syntax import BUILTIN_NAMESPACES, BuiltinAtom, ClassAtom, Constant, PropertyAtom, Query, Rule
from .syntax import atom_vars

_NAME = r"[A-Za-z_](?:[A-Za-z0-9_]|-(?!>))*"

_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in [
    ("COMMENT", r"#[^\n]*"),
    ("NEWLINE", r"\n"),
    ("WS", r"[ \t\r\f]+"),
    ("ARROW", r"->|→|⟶"),
    ("VAR", r"\?" + _NAME),
    ("NUMBER", r"-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?"),
    ("STRING", r"'(?:[^'\\\n]|\\.)*'|\"(?:[^\"\\\n]|\\.)*\""),
    ("NAME", _NAME),
    ("LPAREN", r"\("),
    ("RPAREN", r"\)"),
    ("COMMA", r","),
    ("CARET", r"\^|∧"),
    ("DOT", r"\."),
    ("COLON", r":"),
    ("MISMATCH", r"."),
]))


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str, source=None) -> list:
    tokens = []
    line, line_start = 1, 0
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        col = m.start() - line_start + 1
        if kind == "NEWLINE":
            tokens.append(Token(kind, "\n", line, col))
            line += 1
            line_start = m.end()
        elif kind == "MISMATCH":
            raise ParseError(f"unexpected character {m.group()!r}", line, col, source)
        elif kind not in ("WS", "COMMENT"):
            tokens.append(Token(kind, m.group(), line, col))
    return tokens


def _statements(tokens):
    """Split tokens into statements on '.' and on newlines that end an atom list."""
    current, depth = [], 0
    joiners = ("COMMA", "CARET", "ARROW")
    for i, tok in enumerate(tokens):
        if tok.kind == "LPAREN":
            depth += 1
        elif tok.kind == "RPAREN":
            depth -= 1
        if tok.kind == "DOT" and depth == 0:
            if current:
                yield current
            current = []
        elif tok.kind == "NEWLINE":
            following = next((t for t in tokens[i + 1:] if t.kind != "NEWLINE"), None)
            continuing = current and (current[-1].kind in joiners + ("COLON",)
                                      or (following is not None and following.kind in joiners))
            if depth == 0 and current and not continuing:
                yield current
                current = []
        else:
            current.append(tok)
    if current:
        yield current


def _unescape(raw: str) -> str:
    return re.sub(r"\\(.)", r"\1", raw[1:-1])


class _StatementParser:
    def __init__(self, tokens, source):
        self.tokens = tokens
        self.pos = 0
        self.source = source

    def error(self, message, tok=None, cls=ParseError):
        tok = tok or (self.tokens[self.pos] if self.pos < len(self.tokens) else self.tokens[-1])
        return cls(message, tok.line, tok.col, self.source)

    def peek(self, offset=0):
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def take(self, kind):
        tok = self.peek()
        if tok is None or tok.kind != kind:
            found = "end of statement" if tok is None else repr(tok.text)
            raise self.error(f"expected {kind.lower()}, found {found}")
        self.pos += 1
        return tok

    def at(self, kind, offset=0):
        tok = self.peek(offset)
        return tok is not None and tok.kind == kind

    def done(self):
        return self.pos >= len(self.tokens)

    def qualified_name(self):
        first = self.take("NAME")
        if self.at("COLON") and self.at("NAME", 1):
            self.pos += 1
            return first.text, self.take("NAME").text, first
        return None, first.text, first

    def rule_label(self):
        if (self.at("NAME") and self.peek().text == "rule" and self.at("NAME", 1)
                and self.at("COLON", 2)):
            self.pos += 1
            name = self.take("NAME").text
            self.take("COLON")
            return name
        return None

    def term(self):
        tok = self.peek()
        if tok is None:
            raise self.error("expected a term, found end of statement")
        if tok.kind == "VAR":
            self.pos += 1
            return Var(tok.text[1:])
        if tok.kind == "NUMBER":
            self.pos += 1
            is_int = re.fullmatch(r"-?\d+", tok.text)
            return int(tok.text) if is_int else float(tok.text)
        if tok.kind == "STRING":
            self.pos += 1
            return _unescape(tok.text)
        if tok.kind == "NAME":
            ns, name, _ = self.qualified_name()
            if ns is not None:
                return Constant(ns, name)
            if name.lower() in ("true", "false"):
                return name.lower() == "true"
            return Entity(name)
        raise self.error(f"expected a term, found {tok.text!r}")

    def atom(self):
        ns, name, first = self.qualified_name()
        self.take("LPAREN")
        args = []
        if not self.at("RPAREN"):
            args.append(self.term())
            while self.at("COMMA"):
                self.pos += 1
                args.append(self.term())
        self.take("RPAREN")
        if ns in BUILTIN_NAMESPACES:
            try:
                spec = builtins.lookup(ns, name)
            except UnknownKeyword:
                raise self.error(f"unknown built-in {ns}:{name}", first, UnknownBuiltin) from None
            try:
                spec.check_arity(len(args))
            except ArityError as exc:
                raise self.error(str(exc), first) from None
            return BuiltinAtom(ns, name, tuple(args))
        label = name if ns is None else f"{ns}:{name}"
        if ns == "sqwrl":
            return ("select", label, tuple(args), first)
        if len(args) == 1:
            return ClassAtom(label, args[0])
        if len(args) == 2:
            obj = args[1]
            if isinstance(obj, Constant):
                try:
                    obj = Granularity.parse(obj.name)
                except UnknownGranularity:
                    pass
            return PropertyAtom(label, args[0], obj)
        raise self.error(f"{label} has {len(args)} arguments; class atoms take 1, "
                         f"property atoms 2", first)

    def atom_list(self, allow_empty):
        atoms = []
        if allow_empty and (self.done() or self.at("ARROW")):
            return atoms
        atoms.append(self.atom())
        while self.at("COMMA") or self.at("CARET"):
            self.pos += 1
            atoms.append(self.atom())
        return atoms


def _is_select(atom):
    return isinstance(atom, tuple) and atom[0] == "select"


def plan_body(body, source=None, line=None) -> tuple:
    """Evaluation order: source order, deferring built-ins until their inputs are bound."""
    bound, order, remaining = set(), [], list(body)
    while remaining:
        for i, atom in enumerate(remaining):
            if not isinstance(atom, BuiltinAtom):
                break
            spec = builtins.lookup(atom.namespace, atom.name)
            inputs = atom.args[1:] if spec.binds_first else atom.args
            if all(v in bound for v in inputs if isinstance(v, Var)):
                break
        else:
            atom = remaining[0]
            missing = sorted({str(v) for v in atom.args if isinstance(v, Var)} - {str(v) for v in bound})
            raise UnsafeRule(f"built-in {atom} uses unbound variable(s) {', '.join(missing)}",
                             line, 1, source)
        atom = remaining.pop(i)
        order.append(atom)
        bound.update(atom_vars(atom))
    return tuple(order)


def _check_head(name, body, head, tokens, source):
    body_vars = {v for atom in body for v in atom_vars(atom)}
    for atom in head:
        if isinstance(atom, BuiltinAtom) or _is_select(atom):
            raise ParseError(f"rule {name}: built-ins are not allowed in the head",
                             tokens[0].line, tokens[0].col, source)
        for v in atom_vars(atom):
            if v not in body_vars:
                raise UnsafeRule(f"rule {name}: head variable {v} does not occur in the body",
                                 tokens[0].line, tokens[0].col, source)


def parse_rules(text: str, source=None) -> list:
    """Parse a rule file into :class:`Rule` objects in source order."""
    rules, names = [], set()
    for tokens in _statements(tokenize(text, source)):
        p = _StatementParser(tokens, source)
        name = p.rule_label() or f"r{len(rules) + 1}"
        if name in names:
            raise p.error(f"duplicate rule name {name!r}", tokens[0])
        body = p.atom_list(allow_empty=True)
        p.take("ARROW")
        head = p.atom_list(allow_empty=False)
        if not p.done():
            raise p.error(f"unexpected {p.peek().text!r} after rule head")
        for atom in body:
            if _is_select(atom):
                raise p.error("sqwrl atoms are only allowed in queries", atom[3])
        _check_head(name, body, head, tokens, source)
        plan = plan_body(body, source, tokens[0].line)
        names.add(name)
        rules.append(Rule(name, tuple(body), tuple(head), tokens[0].line, plan))
    return rules


def parse_query(text: str) -> Query:
    """Parse ``body -> select(?x, ...)``; the arrow is optional."""
    statements = list(_statements(tokenize(text, "query")))
    if len(statements) != 1:
        raise ParseError("a query must be a single statement", source="query")
    tokens = statements[0]
    p = _StatementParser(tokens, "query")
    body, select = [], None
    while not p.done():
        if p.at("ARROW") or p.at("COMMA") or p.at("CARET"):
            p.pos += 1
            continue
        tok = p.peek()
        if tok.kind == "NAME" and tok.text in ("select", "sqwrl") and (
                p.at("LPAREN", 1) or (p.at("COLON", 1) and p.at("NAME", 2))):
            if tok.text == "sqwrl":
                p.pos += 2
                if p.peek().text != "select":
                    raise p.error(f"unsupported sqwrl operator {p.peek().text!r}")
            p.pos += 1
            if select is not None:
                raise p.error("only one select clause is allowed", tok)
            p.take("LPAREN")
            select = [p.take("VAR")]
            while p.at("COMMA"):
                p.pos += 1
                select.append(p.take("VAR"))
            p.take("RPAREN")
            continue
        atom = p.atom()
        if _is_select(atom):
            raise p.error(f"unsupported query operator {atom[1]}", atom[3])
        body.append(atom)
    if select is None:
        raise ParseError("query needs a select(?var, ...) clause", source="query")
    if not body:
        raise ParseError("query body is empty", source="query")
    variables = [Var(t.text[1:]) for t in select]
    body_vars = {v for atom in body for v in atom_vars(atom)}
    for tok, v in zip(select, variables):
        if v not in body_vars:
            raise ParseError(f"selected variable {v} does not occur in the query body",
                             tok.line, tok.col, "query")
    return Query(tuple(body), tuple(variables), plan_body(body, "query", 1))
