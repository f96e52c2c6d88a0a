"""Formula AST, ASCII grammar, parser and printer.

Grammar (lowest binding first)::

    formula := bicond
    bicond  := impl ("<->" impl)*          left-associative
    impl    := disj ("->" impl)?           right-associative
    disj    := conj ("|" conj)*
    conj    := unary ("&" unary)*
    unary   := ("~" | "K" | "E" | "B" | "[]" | "<>" | "[*]" | "<*>") unary
             | "true" | "false" | atom | "(" formula ")"
    atom    := [a-z][A-Za-z0-9_]*   (except the keywords true/false)

``[*]`` is the effort operator: ``[*]phi`` holds when some further evidence
intake makes ``phi`` true; ``<*>`` is its dual ``~[*]~``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping

from .errors import FormulaSyntaxError

__all__ = [
    "Formula", "Atom", "Top", "Bottom", "Not", "And", "Or", "Implies", "Iff",
    "Knows", "Entails", "Believes", "Box", "Diamond", "EffortBox", "EffortDiamond",
    "parse", "to_text", "subformulas", "node_count", "modal_depth", "height",
    "atoms", "operators", "substitute", "expand_duals", "conjoin",
]


@dataclass(frozen=True)
class Formula:
    """Base class of all formula nodes. Nodes are immutable and hashable."""

    def __str__(self) -> str:
        return to_text(self)

    def children(self) -> tuple["Formula", ...]:
        return ()


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not _ATOM_RE.fullmatch(self.name) or self.name in _KEYWORDS:
            raise ValueError("invalid atom name %r" % (self.name,))


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Unary(Formula):
    arg: Formula
    symbol = "?"

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Binary(Formula):
    left: Formula
    right: Formula
    symbol = "?"
    precedence = 0

    def children(self):
        return (self.left, self.right)


class Not(Unary):
    symbol = "~"


class Knows(Unary):
    symbol = "K"


class Entails(Unary):
    symbol = "E"


class Believes(Unary):
    symbol = "B"


class Box(Unary):
    symbol = "[]"


class Diamond(Unary):
    symbol = "<>"


class EffortBox(Unary):
    symbol = "[*]"


class EffortDiamond(Unary):
    symbol = "<*>"


class And(Binary):
    symbol = "&"
    precedence = 4


class Or(Binary):
    symbol = "|"
    precedence = 3


class Implies(Binary):
    symbol = "->"
    precedence = 2


class Iff(Binary):
    symbol = "<->"
    precedence = 1


UNARY_PRECEDENCE = 5
PREFIX_OPERATORS: dict[str, type[Unary]] = {
    cls.symbol: cls
    for cls in (Not, Knows, Entails, Believes, Box, Diamond, EffortBox, EffortDiamond)
}
MODAL_OPERATORS = (Knows, Entails, Believes, Box, Diamond, EffortBox, EffortDiamond)

_ATOM_RE = re.compile(r"[a-z][A-Za-z0-9_]*")
_KEYWORDS = frozenset({"true", "false"})
_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<op><->|->|\[\*\]|<\*>|\[\]|<>|[~&|()KEB])"
    r"|(?P<word>[a-z][A-Za-z0-9_]*)"
)
_UNARY_START = frozenset({"~", "K", "E", "B", "[]", "<>", "[*]", "<*>",
                          "true", "false", "atom", "("})
_BINARY = frozenset({"&", "|", "->", "<->"})


# -- parsing -----------------------------------------------------------------

@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    offset: int  # character offset; converted to bytes when reporting


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            tokens.append(_Token("invalid", text[pos], pos))
            break
        if m.lastgroup == "op":
            tokens.append(_Token(m.group(), m.group(), pos))
        elif m.lastgroup == "word":
            word = m.group()
            tokens.append(_Token(word if word in _KEYWORDS else "atom", word, pos))
        pos = m.end()
    tokens.append(_Token("end of input", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected) -> None:
        tok = self.peek()
        byte_offset = len(self.text[:tok.offset].encode("utf-8"))
        if tok.kind == "invalid":
            msg = "unexpected character %r" % tok.text
        elif tok.kind == "end of input":
            msg = "unexpected end of input"
        else:
            msg = "unexpected token %r" % tok.text
        raise FormulaSyntaxError(msg, self.text, byte_offset, expected)

    def formula(self) -> Formula:
        left = self.impl()
        while self.peek().kind == "<->":
            self.advance()
            left = Iff(left, self.impl())
        return left

    def impl(self) -> Formula:
        left = self.disj()
        if self.peek().kind == "->":
            self.advance()
            return Implies(left, self.impl())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.peek().kind == "|":
            self.advance()
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.peek().kind == "&":
            self.advance()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind in PREFIX_OPERATORS:
            self.advance()
            return PREFIX_OPERATORS[tok.kind](self.unary())
        if tok.kind == "true":
            self.advance()
            return Top()
        if tok.kind == "false":
            self.advance()
            return Bottom()
        if tok.kind == "atom":
            self.advance()
            return Atom(tok.text)
        if tok.kind == "(":
            self.advance()
            inner = self.formula()
            if self.peek().kind != ")":
                self.fail(_BINARY | {")"})
            self.advance()
            return inner
        self.fail(_UNARY_START)


def parse(text: str) -> Formula:
    """Parse formula text into an AST. Whitespace is insignificant."""
    parser = _Parser(text)
    result = parser.formula()
    if parser.peek().kind != "end of input":
        parser.fail(_BINARY | {"end of input"})
    return result


# -- printing ----------------------------------------------------------------

def _precedence(f: Formula) -> int:
    if isinstance(f, Binary):
        return f.precedence
    return UNARY_PRECEDENCE


def to_text(f: Formula) -> str:
    """Render ``f`` with the fewest parentheses that still parse back to ``f``."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Unary):
        inner = to_text(f.arg)
        if _precedence(f.arg) < UNARY_PRECEDENCE:
            return f.symbol + "(" + inner + ")"
        sep = " " if f.symbol.isalpha() else ""
        return f.symbol + sep + inner
    if isinstance(f, Binary):
        p = f.precedence
        lp, rp = _precedence(f.left), _precedence(f.right)
        if isinstance(f, Implies):
            wrap_left, wrap_right = lp <= p, rp < p
        else:
            wrap_left, wrap_right = lp < p, rp <= p
        left = to_text(f.left)
        right = to_text(f.right)
        if wrap_left:
            left = "(" + left + ")"
        if wrap_right:
            right = "(" + right + ")"
        return "%s %s %s" % (left, f.symbol, right)
    raise TypeError("not a formula: %r" % (f,))


# -- structural utilities ----------------------------------------------------

def subformulas(f: Formula) -> tuple[Formula, ...]:
    """All distinct subformulas of ``f`` (including ``f``), children first."""
    seen: dict[Formula, None] = {}

    def visit(g):
        if g in seen:
            return
        for child in g.children():
            visit(child)
        seen[g] = None

    visit(f)
    return tuple(seen)


def node_count(f: Formula) -> int:
    return 1 + sum(node_count(c) for c in f.children())


def height(f: Formula) -> int:
    """Length of the longest root-to-leaf path; atoms have height 0."""
    kids = f.children()
    return 1 + max(height(c) for c in kids) if kids else 0


def modal_depth(f: Formula) -> int:
    inner = max((modal_depth(c) for c in f.children()), default=0)
    return inner + 1 if isinstance(f, MODAL_OPERATORS) else inner


def atoms(f: Formula) -> frozenset[str]:
    return frozenset(g.name for g in subformulas(f) if isinstance(g, Atom))


def operators(f: Formula) -> frozenset[type]:
    """The modal node classes occurring in ``f``."""
    return frozenset(type(g) for g in subformulas(f) if isinstance(g, MODAL_OPERATORS))


def _rebuild(f: Formula, fn: Callable[[Formula], Formula]) -> Formula:
    if isinstance(f, Unary):
        return type(f)(fn(f.arg))
    if isinstance(f, Binary):
        return type(f)(fn(f.left), fn(f.right))
    return f


def substitute(f: Formula, mapping: Mapping[str, Formula]) -> Formula:
    """Replace atoms named in ``mapping`` by the given formulas."""
    if isinstance(f, Atom):
        return mapping.get(f.name, f)
    return _rebuild(f, lambda g: substitute(g, mapping))


def expand_duals(f: Formula) -> Formula:
    """Rewrite ``<>`` and ``<*>`` into their ``~[]~`` / ``~[*]~`` definitions."""
    if isinstance(f, Diamond):
        return Not(Box(Not(expand_duals(f.arg))))
    if isinstance(f, EffortDiamond):
        return Not(EffortBox(Not(expand_duals(f.arg))))
    return _rebuild(f, expand_duals)


def conjoin(parts) -> Formula:
    """Left-nested conjunction of ``parts``; ``true`` when empty."""
    it: Iterator[Formula] = iter(parts)
    result = next(it, None)
    if result is None:
        return Top()
    for part in it:
        result = And(result, part)
    return result
