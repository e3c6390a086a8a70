"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace is ignored, multiplication must be explicit)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom ('^' nat)?
    atom   := nat | nat '/' nat | var | '(' expr ')'
    var    := 'x' | 'y' | 'z' | 't' | 's'

Unary minus binds looser than ``^`` so ``-z^2`` reads as ``-(z^2)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .poly import MPoly, VARS


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*'
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Num, Var, Neg, BinOp, Pow]


class _Parser:
    def __init__(self, text: str):
        self.data = text.encode("utf-8")
        self.pos = 0

    def skip(self):
        while self.pos < len(self.data) and self.data[self.pos] in b" \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        if self.pos >= len(self.data):
            return ""
        return chr(self.data[self.pos])

    def expect(self, ch: str):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise ParseError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def nat(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.data) and 0x30 <= self.data[self.pos] <= 0x39:
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected a natural number", start)
        return int(self.data[start:self.pos])

    def parse(self) -> Expr:
        node = self.expr()
        self.skip()
        if self.pos != len(self.data):
            raise ParseError(f"unexpected {chr(self.data[self.pos])!r}", self.pos)
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                node = BinOp("*", node, self.factor())
            elif ch and (ch.isalnum() or ch == "("):
                raise ParseError("implicit multiplication is not allowed", self.pos)
            else:
                return node

    def factor(self) -> Expr:
        if self.peek() == "-":
            self.pos += 1
            return Neg(self.factor())
        node = self.atom()
        if self.peek() == "^":
            self.pos += 1
            node = Pow(node, self.nat())
        return node

    def atom(self) -> Expr:
        ch = self.peek()
        start = self.pos
        if ch.isdigit():
            num = self.nat()
            if self.peek() == "/":
                self.pos += 1
                den = self.nat()
                if den == 0:
                    raise ParseError("zero denominator", start)
                return Num(Fraction(num, den))
            return Num(Fraction(num))
        if ch == "(":
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        if ch.isalpha():
            if ch not in VARS:
                raise ParseError(f"unknown variable {ch!r}", start)
            self.pos += 1
            return Var(ch)
        if not ch:
            raise ParseError("unexpected end of input", start)
        raise ParseError(f"unexpected {ch!r}", start)


def parse_expr(text: str) -> Expr:
    return _Parser(text).parse()


def to_poly(node: Expr) -> MPoly:
    if isinstance(node, Num):
        return MPoly.const(node.value)
    if isinstance(node, Var):
        return MPoly.var(node.name)
    if isinstance(node, Neg):
        return -to_poly(node.operand)
    if isinstance(node, Pow):
        return to_poly(node.base) ** node.exponent
    left, right = to_poly(node.left), to_poly(node.right)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    return left * right


def parse_poly(text: str) -> MPoly:
    """Parse an expression such as ``"z*(z*t^2 + 1)"`` into an exact polynomial."""
    return to_poly(parse_expr(text))
