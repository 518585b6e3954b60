"""A closed expression vocabulary with exact derivatives.

Expressions are parsed with :mod:`ast` and then rebuilt from a fixed set of
node types; nothing is ever handed to ``eval``. Accepted syntax:

* numbers, ``pi``, ``e`` and the declared variables
* ``+ - * /`` and unary minus
* ``^`` or ``**`` with a constant exponent
* ``sin cos sinh cosh`` of one argument
* ``poly(arg, c0, c1, ...)`` meaning ``c0 + c1*arg + c2*arg^2 + ...``

Every node can differentiate itself, so derivatives of any order are exact
expressions rather than finite differences.
"""
from __future__ import annotations

import ast
import math
from dataclasses import dataclass

import numpy as np

from .errors import ParseError
from .functions import Fn

FUNCTIONS = ("sin", "cos", "sinh", "cosh")
CONSTANTS = {"pi": math.pi, "e": math.e}


class Expr:
    """Base node. Subclasses implement ``__call__(env)``, ``diff(var)`` and ``text``."""

    def __call__(self, env):
        raise NotImplementedError

    def diff(self, var):
        raise NotImplementedError

    def is_const(self):
        return False

    def __str__(self):
        return self.text()


@dataclass(frozen=True)
class Const(Expr):
    value: float

    def __call__(self, env):
        return self.value

    def diff(self, var):
        return ZERO

    def is_const(self):
        return True

    def text(self):
        return repr(self.value)


ZERO, ONE = Const(0.0), Const(1.0)


@dataclass(frozen=True)
class Var(Expr):
    name: str

    def __call__(self, env):
        return env[self.name]

    def diff(self, var):
        return ONE if var == self.name else ZERO

    def text(self):
        return self.name


def _c(x):
    return isinstance(x, Const)


def add(a, b):
    if _c(a) and _c(b):
        return Const(a.value + b.value)
    if a == ZERO:
        return b
    if b == ZERO:
        return a
    return Add(a, b)


def neg(a):
    if _c(a):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.a
    return Neg(a)


def sub(a, b):
    return add(a, neg(b))


def mul(a, b):
    if _c(a) and _c(b):
        return Const(a.value * b.value)
    if a == ZERO or b == ZERO:
        return ZERO
    if a == ONE:
        return b
    if b == ONE:
        return a
    return Mul(a, b)


def div(a, b):
    if _c(b) and b.value == 0.0:
        raise ZeroDivisionError("division by constant zero")
    if _c(a) and _c(b):
        return Const(a.value / b.value)
    if a == ZERO:
        return ZERO
    if b == ONE:
        return a
    return Div(a, b)


def power(a, k):
    if k == 0:
        return ONE
    if k == 1:
        return a
    if _c(a):
        return Const(a.value**k)
    return Pow(a, k)


def call(name, a):
    if _c(a):
        return Const(float(getattr(np, name)(a.value)))
    return Call(name, a)


@dataclass(frozen=True)
class Add(Expr):
    a: Expr
    b: Expr

    def __call__(self, env):
        return self.a(env) + self.b(env)

    def diff(self, var):
        return add(self.a.diff(var), self.b.diff(var))

    def text(self):
        return f"({self.a.text()} + {self.b.text()})"


@dataclass(frozen=True)
class Neg(Expr):
    a: Expr

    def __call__(self, env):
        return -self.a(env)

    def diff(self, var):
        return neg(self.a.diff(var))

    def text(self):
        return f"-{self.a.text()}"


@dataclass(frozen=True)
class Mul(Expr):
    a: Expr
    b: Expr

    def __call__(self, env):
        return self.a(env) * self.b(env)

    def diff(self, var):
        return add(mul(self.a.diff(var), self.b), mul(self.a, self.b.diff(var)))

    def text(self):
        return f"({self.a.text()} * {self.b.text()})"


@dataclass(frozen=True)
class Div(Expr):
    a: Expr
    b: Expr

    def __call__(self, env):
        return self.a(env) / self.b(env)

    def diff(self, var):
        num = sub(mul(self.a.diff(var), self.b), mul(self.a, self.b.diff(var)))
        return div(num, power(self.b, 2))

    def text(self):
        return f"({self.a.text()} / {self.b.text()})"


@dataclass(frozen=True)
class Pow(Expr):
    a: Expr
    k: float

    def __call__(self, env):
        return self.a(env) ** self.k

    def diff(self, var):
        return mul(mul(Const(self.k), power(self.a, self.k - 1)), self.a.diff(var))

    def text(self):
        return f"{self.a.text()}^{self.k!r}"


_DERIV = {
    "sin": lambda a: call("cos", a),
    "cos": lambda a: neg(call("sin", a)),
    "sinh": lambda a: call("cosh", a),
    "cosh": lambda a: call("sinh", a),
}


@dataclass(frozen=True)
class Call(Expr):
    name: str
    a: Expr

    def __call__(self, env):
        return getattr(np, self.name)(self.a(env))

    def diff(self, var):
        return mul(_DERIV[self.name](self.a), self.a.diff(var))

    def text(self):
        return f"{self.name}({self.a.text()})"


def poly(arg, coeffs):
    """``sum coeffs[i] * arg**i`` as an expression tree."""
    out = ZERO
    for i, c in enumerate(coeffs):
        out = add(out, mul(Const(float(c)), power(arg, i)))
    return out


class _Builder:
    def __init__(self, text, variables, line, where):
        self.text = text
        self.where = where
        self.variables = tuple(variables)
        self.line = line

    def error(self, msg, node=None, token=None):
        col = None if node is None else self.where[node.col_offset] + 1
        return ParseError(msg, self.line, col, token)

    def build(self, node):
        method = getattr(self, "_" + type(node).__name__, None)
        if method is None:
            token = ast.get_source_segment(self.text, node) or type(node).__name__
            raise self.error(f"unsupported syntax {token!r}", node, token)
        return method(node)

    def _Expression(self, node):
        return self.build(node.body)

    def _Constant(self, node):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            raise self.error(f"not a number: {node.value!r}", node, repr(node.value))
        return Const(float(node.value))

    def _Name(self, node):
        if node.id in self.variables:
            return Var(node.id)
        if node.id in CONSTANTS:
            return Const(CONSTANTS[node.id])
        allowed = ", ".join(self.variables) or "none"
        raise self.error(f"unknown name {node.id!r} (variables: {allowed})", node, node.id)

    def _UnaryOp(self, node):
        a = self.build(node.operand)
        if isinstance(node.op, ast.USub):
            return neg(a)
        if isinstance(node.op, ast.UAdd):
            return a
        raise self.error("unsupported unary operator", node)

    def _BinOp(self, node):
        a, b = self.build(node.left), self.build(node.right)
        op = node.op
        if isinstance(op, ast.Add):
            return add(a, b)
        if isinstance(op, ast.Sub):
            return sub(a, b)
        if isinstance(op, ast.Mult):
            return mul(a, b)
        if isinstance(op, ast.Div):
            try:
                return div(a, b)
            except ZeroDivisionError as exc:
                raise self.error(str(exc), node.right) from None
        if isinstance(op, ast.Pow):
            if not b.is_const():
                raise self.error("exponent must be constant", node.right,
                                 ast.get_source_segment(self.text, node.right))
            return power(a, b.value)
        token = ast.get_source_segment(self.text, node) or ""
        raise self.error(f"unsupported operator in {token!r}", node, token)

    def _Call(self, node):
        if not isinstance(node.func, ast.Name):
            raise self.error("only plain function names can be called", node)
        name = node.func.id
        if node.keywords:
            raise self.error("keyword arguments are not allowed", node)
        args = [self.build(a) for a in node.args]
        if name in FUNCTIONS:
            if len(args) != 1:
                raise self.error(f"{name} takes one argument", node, name)
            return call(name, args[0])
        if name == "poly":
            if len(args) < 2:
                raise self.error("poly needs an argument and at least one coefficient", node, name)
            for a, c in zip(node.args[1:], args[1:]):
                if not c.is_const():
                    raise self.error("poly coefficients must be constant", a,
                                     ast.get_source_segment(self.text, a))
            return poly(args[0], [c.value for c in args[1:]])
        raise self.error(f"unknown function {name!r}", node.func, name)


def parse(text, variables=("t",), line=None):
    """Parse ``text`` into an :class:`Expr` over the given variable names.

    ``line`` is only used to label errors. ``^`` is read as exponentiation.

    Raises:
        ParseError: with the column and offending token.
    """
    if not isinstance(text, str):
        if isinstance(text, (int, float)) and not isinstance(text, bool):
            return Const(float(text))
        raise ParseError(f"expected an expression string, got {type(text).__name__}", line)
    text = text.strip()
    src, where = _rewrite_caret(text)
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        offset = min(max((exc.offset or 1) - 1, 0), len(src))
        col = where[offset] + 1
        token = text[col - 1] if col <= len(text) else None
        raise ParseError(f"syntax error in {text!r}", line, col, token) from None
    return _Builder(src, variables, line, where).build(tree)


def _rewrite_caret(text):
    """Replace ``^`` by ``**`` and keep a map from new offsets back to the original."""
    out, where = [], []
    for i, ch in enumerate(text):
        if ch == "^":
            out.append("**")
            where += [i, i]
        else:
            out.append(ch)
            where.append(i)
    where.append(len(text))
    return "".join(out), where


def to_fn(e: Expr, var="t", name=None) -> Fn:
    """Wrap a one-variable expression as an :class:`~isoasym.functions.Fn` with exact derivative."""
    d = e.diff(var)
    return Fn(lambda t: _lift(e({var: t}), t), lambda t: _lift(d({var: t}), t), name=name or e.text())


def _lift(value, like):
    # constants evaluate to scalars; broadcast them against array inputs
    if np.ndim(like) and not np.ndim(value):
        return np.full(np.shape(like), float(value))
    return value
