"""Expression mini-language for radial potentials.

Grammar (whitespace insignificant)::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := ('-')? base ('^' exponent)?
    base   := number | 'r' | ident | '(' expr ')' | func '(' expr ')'
    func   := 'sin' | 'cos' | 'exp' | 'ln' | 'sqrt'

Numbers are decimal with an optional exponent part.  ``r`` is the radius
variable; any other identifier is a named parameter that must be bound
at parse time.  Exponents must be literal numbers (or bound parameters,
which are folded to their numeric value) so that symbolic
differentiation stays closed over the grammar.

Evaluation is numpy-aware: the radius argument may be a scalar or an
ndarray, and identical inputs always produce bit-identical outputs.
Singular evaluations (log of a non-positive value, division by zero,
overflow to non-finite) raise :class:`EvalDomainError` instead of
returning inf/nan.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

import numpy as np

__all__ = [
    "Expr",
    "Const",
    "Radius",
    "Param",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "Pow",
    "Neg",
    "Call",
    "ParseError",
    "UnboundParameterError",
    "NonConstantExponentError",
    "EvalDomainError",
    "parse_expression",
    "derivative",
    "evaluate",
]

FUNCTIONS = ("sin", "cos", "exp", "ln", "sqrt")


class ParseError(ValueError):
    """Source text does not conform to the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnboundParameterError(ParseError):
    """A parameter appears in the source but has no binding."""


class NonConstantExponentError(ParseError):
    """A '^' exponent is not a literal number or bound parameter."""


class EvalDomainError(ArithmeticError):
    """Evaluation hit a singular point or produced a non-finite value."""


# --- AST -----------------------------------------------------------------


@dataclass(frozen=True)
class Expr:
    pass


@dataclass(frozen=True)
class Const(Expr):
    value: float


@dataclass(frozen=True)
class Radius(Expr):
    pass


@dataclass(frozen=True)
class Param(Expr):
    name: str


@dataclass(frozen=True)
class Add(Expr):
    a: Expr
    b: Expr


@dataclass(frozen=True)
class Sub(Expr):
    a: Expr
    b: Expr


@dataclass(frozen=True)
class Mul(Expr):
    a: Expr
    b: Expr


@dataclass(frozen=True)
class Div(Expr):
    a: Expr
    b: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: float  # constant exponent only


@dataclass(frozen=True)
class Neg(Expr):
    a: Expr


@dataclass(frozen=True)
class Call(Expr):
    fn: str
    arg: Expr


# Smart constructors: constant folding only, no structural rewriting.


def _fold(op, cls, a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        try:
            v = op(a.value, b.value)
        except (ZeroDivisionError, OverflowError, ValueError):
            return cls(a, b)  # defer the failure to evaluation time
        if np.isfinite(v):
            return Const(float(v))
    return cls(a, b)


def add(a: Expr, b: Expr) -> Expr:
    return _fold(lambda x, y: x + y, Add, a, b)


def sub(a: Expr, b: Expr) -> Expr:
    return _fold(lambda x, y: x - y, Sub, a, b)


def mul(a: Expr, b: Expr) -> Expr:
    return _fold(lambda x, y: x * y, Mul, a, b)


def div(a: Expr, b: Expr) -> Expr:
    return _fold(lambda x, y: x / y, Div, a, b)


def neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(-a.value)
    return Neg(a)


def powc(base: Expr, exponent: float) -> Expr:
    if isinstance(base, Const):
        try:
            v = base.value**exponent
        except (ZeroDivisionError, OverflowError, ValueError):
            return Pow(base, exponent)
        if isinstance(v, float) and np.isfinite(v):
            return Const(v)
    return Pow(base, exponent)


def call(fn: str, arg: Expr) -> Expr:
    if isinstance(arg, Const):
        f = {"sin": np.sin, "cos": np.cos, "exp": np.exp, "ln": np.log, "sqrt": np.sqrt}[fn]
        with np.errstate(all="ignore"):
            v = float(f(arg.value))
        if np.isfinite(v):
            return Const(v)
    return Call(fn, arg)


# --- Parsing -------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[()+\-*/^])"
)


def _tokenize(source: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(source):
        if source[i].isspace():
            i += 1
            continue
        m = _TOKEN_RE.match(source, i)
        if m is None:
            raise ParseError(f"unexpected character {source[i]!r}", i)
        tokens.append((m.lastgroup, m.group(), i))
        i = m.end()
    tokens.append(("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source: str, bindings: Mapping[str, float]):
        self.tokens = _tokenize(source)
        self.bindings = bindings
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, text: str) -> None:
        kind, val, at = self.take()
        if val != text:
            raise ParseError(f"expected {text!r}, found {val or 'end of input'!r}", at)

    def parse(self) -> Expr:
        node = self.expr()
        kind, val, at = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing input {val!r}", at)
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            node = add(node, rhs) if op == "+" else sub(node, rhs)
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            rhs = self.factor()
            node = mul(node, rhs) if op == "*" else div(node, rhs)
        return node

    def factor(self) -> Expr:
        negate = False
        if self.peek()[1] == "-":
            self.take()
            negate = True
        node = self.base()
        if self.peek()[1] == "^":
            self.take()
            node = powc(node, self.exponent())
        return neg(node) if negate else node

    def exponent(self) -> float:
        sign = 1.0
        if self.peek()[1] in ("+", "-"):
            sign = -1.0 if self.take()[1] == "-" else 1.0
        kind, val, at = self.take()
        if kind == "number":
            return sign * float(val)
        if kind == "ident":
            if val in self.bindings:
                return sign * float(self.bindings[val])
            raise UnboundParameterError(f"unbound parameter {val!r} in exponent", at)
        raise NonConstantExponentError(
            "exponent must be a literal number or bound parameter", at
        )

    def base(self) -> Expr:
        kind, val, at = self.take()
        if kind == "number":
            return Const(float(val))
        if val == "(":
            node = self.expr()
            self.expect(")")
            return node
        if kind == "ident":
            if val in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return call(val, arg)
            if val == "r":
                return Radius()
            if val in self.bindings:
                return Param(val)
            raise UnboundParameterError(f"unbound parameter {val!r}", at)
        raise ParseError(f"expected a value, found {val or 'end of input'!r}", at)


def parse_expression(source: str, bindings: Mapping[str, float] | None = None) -> Expr:
    """Parse source text into an AST, resolving parameters against bindings."""
    return _Parser(source, dict(bindings or {})).parse()


# --- Differentiation -----------------------------------------------------


def derivative(node: Expr) -> Expr:
    """Exact derivative with respect to the radius variable."""
    if isinstance(node, (Const, Param)):
        return Const(0.0)
    if isinstance(node, Radius):
        return Const(1.0)
    if isinstance(node, Add):
        return add(derivative(node.a), derivative(node.b))
    if isinstance(node, Sub):
        return sub(derivative(node.a), derivative(node.b))
    if isinstance(node, Mul):
        return add(mul(derivative(node.a), node.b), mul(node.a, derivative(node.b)))
    if isinstance(node, Div):
        num = sub(mul(derivative(node.a), node.b), mul(node.a, derivative(node.b)))
        return div(num, mul(node.b, node.b))
    if isinstance(node, Pow):
        inner = mul(Const(node.exponent), powc(node.base, node.exponent - 1.0))
        return mul(inner, derivative(node.base))
    if isinstance(node, Neg):
        return neg(derivative(node.a))
    if isinstance(node, Call):
        da = derivative(node.arg)
        if node.fn == "sin":
            return mul(call("cos", node.arg), da)
        if node.fn == "cos":
            return neg(mul(call("sin", node.arg), da))
        if node.fn == "exp":
            return mul(call("exp", node.arg), da)
        if node.fn == "ln":
            return div(da, node.arg)
        if node.fn == "sqrt":
            return div(da, mul(Const(2.0), call("sqrt", node.arg)))
    raise TypeError(f"cannot differentiate {node!r}")


# --- Evaluation ----------------------------------------------------------


def _is_integer(x: float) -> bool:
    return float(x).is_integer()


def _ev(node: Expr, r, env: Mapping[str, float]):
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Radius):
        return r
    if isinstance(node, Param):
        try:
            return env[node.name]
        except KeyError:
            raise EvalDomainError(f"parameter {node.name!r} is not bound") from None
    if isinstance(node, Add):
        return _ev(node.a, r, env) + _ev(node.b, r, env)
    if isinstance(node, Sub):
        return _ev(node.a, r, env) - _ev(node.b, r, env)
    if isinstance(node, Mul):
        return _ev(node.a, r, env) * _ev(node.b, r, env)
    if isinstance(node, Div):
        num = _ev(node.a, r, env)
        den = _ev(node.b, r, env)
        if np.any(den == 0):
            raise EvalDomainError("division by zero")
        return num / den
    if isinstance(node, Pow):
        base = _ev(node.base, r, env)
        e = node.exponent
        if not _is_integer(e) and np.any(base < 0):
            raise EvalDomainError("negative base with non-integer exponent")
        if e < 0 and np.any(base == 0):
            raise EvalDomainError("zero base with negative exponent")
        return base**e
    if isinstance(node, Neg):
        return -_ev(node.a, r, env)
    if isinstance(node, Call):
        arg = _ev(node.arg, r, env)
        if node.fn == "ln":
            if np.any(arg <= 0):
                raise EvalDomainError("logarithm of a non-positive value")
            return np.log(arg)
        if node.fn == "sqrt":
            if np.any(arg < 0):
                raise EvalDomainError("square root of a negative value")
            return np.sqrt(arg)
        return {"sin": np.sin, "cos": np.cos, "exp": np.exp}[node.fn](arg)
    raise TypeError(f"cannot evaluate {node!r}")


def evaluate(node: Expr, r, env: Mapping[str, float] | None = None):
    """Evaluate at radius r (scalar or ndarray) with parameter bindings env."""
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        out = _ev(node, r, env or {})
    if not np.all(np.isfinite(out)):
        raise EvalDomainError("expression evaluated to a non-finite value")
    return out
