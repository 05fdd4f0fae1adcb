"""Recursive-descent parser for polynomial expression text.

Grammar (whitespace-insensitive, no implicit multiplication):

    poly     := ['-'] term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := rational | var ('^' nat)? | '(' poly ')'
    rational := nat ('/' posnat)?

Bivariate input uses the variables x and y, univariate input uses t.  The
expression is first parsed to a small AST and then lowered, so the same
grammar serves both target types.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from jacder.errors import ParseError
from jacder.poly import BivarPoly, UnivarPoly


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Sum:
    parts: tuple


@dataclass(frozen=True)
class Prod:
    parts: tuple


@dataclass(frozen=True)
class Pow:
    base: "ExprAst"
    exponent: int


@dataclass(frozen=True)
class Neg:
    arg: "ExprAst"


ExprAst = Union[Const, Var, Sum, Prod, Pow, Neg]


class _Scanner:
    def __init__(self, text: str, variables: Tuple[str, ...]):
        self.text = text
        self.pos = 0
        self.variables = variables

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def expect(self, ch: str) -> None:
        got = self.peek()
        if got != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def at_end(self) -> bool:
        return self.peek() == ""

    def natural(self, what: str) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError(f"expected {what}", start)
        return int(self.text[start : self.pos])


def parse_expr(text: str, variables: Tuple[str, ...]) -> ExprAst:
    """Parse text against the grammar; raises ParseError with an offset."""
    scanner = _Scanner(text, variables)
    ast = _poly(scanner)
    if not scanner.at_end():
        raise ParseError(f"unexpected {scanner.peek()!r}", scanner.pos)
    return ast


def _poly(s: _Scanner) -> ExprAst:
    parts = []
    negate = False
    if s.peek() == "-":
        s.take()
        negate = True
    term = _term(s)
    parts.append(Neg(term) if negate else term)
    while s.peek() in ("+", "-"):
        op = s.take()
        term = _term(s)
        parts.append(Neg(term) if op == "-" else term)
    return parts[0] if len(parts) == 1 else Sum(tuple(parts))


def _term(s: _Scanner) -> ExprAst:
    parts = [_factor(s)]
    while s.peek() == "*":
        s.take()
        parts.append(_factor(s))
    return parts[0] if len(parts) == 1 else Prod(tuple(parts))


def _factor(s: _Scanner) -> ExprAst:
    ch = s.peek()
    if ch == "(":
        s.take()
        inner = _poly(s)
        s.expect(")")
        return inner
    if ch.isdigit():
        numerator = s.natural("digits")
        if s.peek() == "/":
            s.take()
            pos = s.pos
            denominator = s.natural("a positive denominator")
            if denominator == 0:
                raise ParseError("expected a positive denominator", pos)
            return Const(Fraction(numerator, denominator))
        return Const(Fraction(numerator))
    if ch.isalpha():
        if ch not in s.variables:
            raise ParseError(f"unknown variable {ch!r}", s.pos)
        s.take()
        if s.peek() == "^":
            s.take()
            exponent = s.natural("a non-negative exponent")
            return Pow(Var(ch), exponent)
        return Var(ch)
    if ch == "":
        raise ParseError("unexpected end of input", s.pos)
    raise ParseError(f"unexpected {ch!r}", s.pos)


def lower(ast: ExprAst, env: dict):
    """Evaluate an AST in an environment mapping variable names to values."""
    if isinstance(ast, Const):
        return ast.value
    if isinstance(ast, Var):
        return env[ast.name]
    if isinstance(ast, Neg):
        return -lower(ast.arg, env)
    if isinstance(ast, Sum):
        total = lower(ast.parts[0], env)
        for part in ast.parts[1:]:
            total = total + lower(part, env)
        return total
    if isinstance(ast, Prod):
        total = lower(ast.parts[0], env)
        for part in ast.parts[1:]:
            total = total * lower(part, env)
        return total
    if isinstance(ast, Pow):
        return lower(ast.base, env) ** ast.exponent
    raise TypeError(f"unknown node {ast!r}")


def parse_poly(text: str) -> BivarPoly:
    """Parse bivariate polynomial text in x and y."""
    ast = parse_expr(text, ("x", "y"))
    value = lower(ast, {"x": BivarPoly.variable("x"), "y": BivarPoly.variable("y")})
    if isinstance(value, Fraction):
        value = BivarPoly.const(value)
    return value


def parse_univar(text: str) -> UnivarPoly:
    """Parse univariate polynomial text in t."""
    ast = parse_expr(text, ("t",))
    value = lower(ast, {"t": UnivarPoly.t()})
    if isinstance(value, Fraction):
        value = UnivarPoly.const(value)
    return value
