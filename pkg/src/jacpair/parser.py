"""Text <-> BiPoly.

Grammar (whitespace is ignored between tokens)::

    expr    := term (("+" | "-") term)*
    term    := unary (["*" | "/"] unary)*      # bare juxtaposition multiplies
    unary   := ("-" | "+") unary | power
    power   := atom ["^" unary]                # right-associative
    atom    := INT | "x" | "y" | "(" expr ")"

Exponents must evaluate to a natural number no larger than ``MAX_EXPONENT``.
Division is only allowed by a nonzero constant, which is how literals like
``3/4`` are written.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, NamedTuple

from .bipoly import BiPoly
from .errors import (
    ExponentTooLarge,
    NegativeExponent,
    NonIntegerExponent,
    PolySyntaxError,
)

__all__ = ["MAX_EXPONENT", "format_poly", "parse_poly"]

MAX_EXPONENT = 10**6


class Token(NamedTuple):
    kind: str  # "int", "var", "op", "end"
    value: object
    pos: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            tokens.append(Token("int", int(text[start:i]), start))
        elif c in "xy":
            tokens.append(Token("var", c, i))
            i += 1
        elif c in "+-*/^()":
            tokens.append(Token("op", c, i))
            i += 1
        else:
            raise PolySyntaxError(f"unexpected character {c!r}", i)
    tokens.append(Token("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def at_op(self, *ops) -> bool:
        return self.tok.kind == "op" and self.tok.value in ops

    def parse(self) -> BiPoly:
        if self.tok.kind == "end":
            raise PolySyntaxError("empty expression", self.tok.pos)
        p = self.expr()
        if self.tok.kind != "end":
            raise PolySyntaxError(f"unexpected token {self.tok.value!r}", self.tok.pos)
        return p

    def expr(self) -> BiPoly:
        p = self.term()
        while self.at_op("+", "-"):
            op = self.advance().value
            rhs = self.term()
            p = p + rhs if op == "+" else p - rhs
        return p

    def _starts_factor(self) -> bool:
        t = self.tok
        return t.kind in ("int", "var") or (t.kind == "op" and t.value == "(")

    def term(self) -> BiPoly:
        p = self.unary()
        while True:
            if self.at_op("*"):
                self.advance()
                p = p * self.unary()
            elif self.at_op("/"):
                pos = self.advance().pos
                d = self.unary()
                if not d.is_constant or d.is_zero:
                    raise PolySyntaxError("division only by a nonzero constant", pos)
                p = p.scalar_mul(1 / d.constant_value())
            elif self._starts_factor():
                p = p * self.power()
            else:
                return p

    def unary(self) -> BiPoly:
        if self.at_op("-"):
            self.advance()
            return -self.unary()
        if self.at_op("+"):
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> BiPoly:
        base = self.atom()
        if self.at_op("^"):
            self.advance()
            pos = self.tok.pos
            e = self.unary()
            return base ** _exponent_value(e, pos)
        return base

    def atom(self) -> BiPoly:
        t = self.tok
        if t.kind == "int":
            self.advance()
            return BiPoly.const(t.value)
        if t.kind == "var":
            self.advance()
            return BiPoly.x() if t.value == "x" else BiPoly.y()
        if t.kind == "op" and t.value == "(":
            self.advance()
            p = self.expr()
            if not self.at_op(")"):
                raise PolySyntaxError("expected ')'", self.tok.pos)
            self.advance()
            return p
        if t.kind == "end":
            raise PolySyntaxError("unexpected end of input", t.pos)
        raise PolySyntaxError(f"unexpected token {t.value!r}", t.pos)


def _exponent_value(e: BiPoly, pos: int) -> int:
    if not e.is_constant:
        raise NonIntegerExponent("exponent must be a constant", pos)
    v = e.constant_value()
    if v.denominator != 1:
        raise NonIntegerExponent(f"exponent {v} is not an integer", pos)
    if v < 0:
        raise NegativeExponent(f"exponent {v} is negative", pos)
    if v > MAX_EXPONENT:
        raise ExponentTooLarge(f"exponent {v} exceeds {MAX_EXPONENT}", pos)
    return int(v)


def parse_poly(text: str) -> BiPoly:
    """Parse an expression such as ``"x+y+x^2+2xy^15"`` into a BiPoly."""
    if not isinstance(text, str):
        raise TypeError("expression must be a string")
    return _Parser(text).parse()


def _monomial(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return "*".join(parts)


def format_poly(p: BiPoly) -> str:
    """Canonical graded-lex rendering; ``parse_poly(format_poly(p)) == p``."""
    if p.is_zero:
        return "0"
    out = []
    for (i, j), c in p.items():
        mono = _monomial(i, j)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def as_fraction(text: str) -> Fraction:
    """Parse a constant expression into a Fraction."""
    p = parse_poly(text)
    if not p.is_constant:
        raise PolySyntaxError("expected a constant", 0)
    return p.constant_value()
