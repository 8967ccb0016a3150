"""ATL formulas: syntax tree, parser, canonical printer.

Concrete syntax::

    phi    := impl
    impl   := or ( "->" impl )?
    or     := and ( "|" and )*
    and    := unary ( "&" unary )*
    unary  := "!" unary | "true" | "false" | IDENT | "(" phi ")"
            | coal "X" unary | coal "G" unary | coal "F" unary
            | coal unary "U" unary
    coal   := "<<" ( INT ( "," INT )* )? ">>"

``X``, ``G``, ``F``, ``U``, ``true`` and ``false`` are keywords and cannot
name propositions.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from rcgs.errors import FormulaSyntaxError

KEYWORDS = frozenset({"X", "G", "F", "U", "true", "false"})


class Formula:
    """Base class of all formula nodes."""

    __slots__ = ()

    def children(self) -> tuple["Formula", ...]:
        return ()

    def __str__(self):
        return render_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class TrueConst(Formula):
    pass


@dataclass(frozen=True)
class FalseConst(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class CoalitionNext(Formula):
    coalition: frozenset
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class CoalitionGlobally(Formula):
    coalition: frozenset
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class CoalitionFinally(Formula):
    coalition: frozenset
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class CoalitionUntil(Formula):
    coalition: frozenset
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


MODAL = (CoalitionNext, CoalitionGlobally, CoalitionFinally, CoalitionUntil)
_UNARY_MODAL = {"X": CoalitionNext, "G": CoalitionGlobally, "F": CoalitionFinally}
_BINARY_SYMBOL = {And: "&", Or: "|", Implies: "->"}


def walk(phi: Formula) -> Iterator[Formula]:
    """Pre-order traversal."""
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def formula_length(phi: Formula) -> int:
    return sum(1 for _ in walk(phi))


def modal_depth(phi: Formula) -> int:
    below = max((modal_depth(c) for c in phi.children()), default=0)
    return below + 1 if isinstance(phi, MODAL) else below


# -- printing ---------------------------------------------------------------

def _coalition_text(coalition) -> str:
    return "<<" + ",".join(str(a) for a in sorted(coalition)) + ">>"


def render_formula(phi: Formula) -> str:
    """Canonical, fully parenthesised text that parses back to ``phi``."""
    if isinstance(phi, Atom):
        return phi.name
    if isinstance(phi, TrueConst):
        return "true"
    if isinstance(phi, FalseConst):
        return "false"
    if isinstance(phi, Not):
        return f"!({render_formula(phi.arg)})"
    if isinstance(phi, (And, Or, Implies)):
        sym = _BINARY_SYMBOL[type(phi)]
        return f"({render_formula(phi.left)}) {sym} ({render_formula(phi.right)})"
    if isinstance(phi, CoalitionUntil):
        return (
            f"{_coalition_text(phi.coalition)}({render_formula(phi.left)})"
            f" U ({render_formula(phi.right)})"
        )
    for op, cls in _UNARY_MODAL.items():
        if isinstance(phi, cls):
            return f"{_coalition_text(phi.coalition)}{op} ({render_formula(phi.arg)})"
    raise TypeError(f"not a formula: {phi!r}")


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<coal_open><<)|(?P<coal_close>>>)|(?P<arrow>->)"
    r"|(?P<int>[0-9]+)|(?P<ident>[a-zA-Z][a-zA-Z0-9_]*)|(?P<sym>[!&|(),]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise FormulaSyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        if kind == "ident" and value in KEYWORDS:
            kind = "kw"
        elif kind == "sym":
            kind = value
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str, value: str | None = None):
        tok = self.tokens[self.i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise FormulaSyntaxError(f"expected {want!r}, found {got!r}", tok[2])
        self.i += 1
        return tok

    def at(self, kind: str, value: str | None = None) -> bool:
        tok = self.tokens[self.i]
        return tok[0] == kind and (value is None or tok[1] == value)

    def formula(self) -> Formula:
        phi = self.impl()
        self.take("eof")
        return phi

    def impl(self) -> Formula:
        left = self.disj()
        if self.at("arrow"):
            self.i += 1
            return Implies(left, self.impl())
        return left

    def disj(self) -> Formula:
        phi = self.conj()
        while self.at("|"):
            self.i += 1
            phi = Or(phi, self.conj())
        return phi

    def conj(self) -> Formula:
        phi = self.unary()
        while self.at("&"):
            self.i += 1
            phi = And(phi, self.unary())
        return phi

    def coalition(self) -> frozenset:
        self.take("coal_open")
        members = []
        if not self.at("coal_close"):
            while True:
                kind, value, pos = self.peek()
                if kind != "int":
                    raise FormulaSyntaxError("malformed coalition: expected an agent number", pos)
                if int(value) < 1:
                    raise FormulaSyntaxError("malformed coalition: agents are numbered from 1", pos)
                members.append(int(value))
                self.i += 1
                if not self.at(","):
                    break
                self.i += 1
        self.take("coal_close")
        return frozenset(members)

    def unary(self) -> Formula:
        kind, value, pos = self.peek()
        if kind == "!":
            self.i += 1
            return Not(self.unary())
        if kind == "kw" and value == "true":
            self.i += 1
            return TrueConst()
        if kind == "kw" and value == "false":
            self.i += 1
            return FalseConst()
        if kind == "ident":
            self.i += 1
            return Atom(value)
        if kind == "(":
            self.i += 1
            phi = self.impl()
            self.take(")")
            return phi
        if kind == "coal_open":
            coalition = self.coalition()
            kind, value, _ = self.peek()
            if kind == "kw" and value in _UNARY_MODAL:
                self.i += 1
                return _UNARY_MODAL[value](coalition, self.unary())
            left = self.unary()
            self.take("kw", "U")
            return CoalitionUntil(coalition, left, self.unary())
        raise FormulaSyntaxError(f"unexpected {value or 'end of input'!r}", pos)


def parse_formula(text: str) -> Formula:
    """Parse ATL concrete syntax, e.g. ``"<<1,2>>X p"``."""
    return _Parser(text).formula()


def coalitions_of(phi: Formula) -> set[frozenset]:
    return {node.coalition for node in walk(phi) if isinstance(node, MODAL)}


def atoms_of(phi: Formula) -> set[str]:
    return {node.name for node in walk(phi) if isinstance(node, Atom)}


def random_formula(
    rng: random.Random,
    props: Sequence[str],
    agent_count: int,
    depth: int,
    size: int = 3,
) -> Formula:
    """Random formula of modal depth at most ``depth``.

    ``size`` bounds the boolean nesting between modalities.  Coalitions are
    uniform over subsets of ``1..agent_count``.
    """

    def coalition():
        return frozenset(a for a in range(1, agent_count + 1) if rng.random() < 0.5)

    def leaf():
        r = rng.random()
        if r < 0.08 or not props:
            return TrueConst() if rng.random() < 0.5 else FalseConst()
        return Atom(rng.choice(list(props)))

    def gen(d: int, s: int) -> Formula:
        choices = ["leaf", "not", "and", "or", "implies"] if s > 0 else ["leaf"]
        if d > 0:
            choices += ["X", "G", "F", "U"] * 2
        kind = rng.choice(choices)
        if kind == "leaf":
            return leaf()
        if kind == "not":
            return Not(gen(d, s - 1))
        if kind in ("and", "or", "implies"):
            cls = {"and": And, "or": Or, "implies": Implies}[kind]
            return cls(gen(d, s - 1), gen(d, s - 1))
        if kind == "U":
            return CoalitionUntil(coalition(), gen(d - 1, s - 1), gen(d - 1, s - 1))
        return _UNARY_MODAL[kind](coalition(), gen(d - 1, s - 1))

    return gen(depth, size)
