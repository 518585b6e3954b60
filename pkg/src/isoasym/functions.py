"""Differentiable real functions of one variable.

Marching-scale building blocks (``l, m, n, X, Y, Z`` and the outer wrappers
``f, g, h``) are all :class:`Fn` instances.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .numdiff import diff, scaled_step


@dataclass(frozen=True)
class Fn:
    """A real function with an optional analytic derivative.

    Without ``df`` the derivative is a central difference with step
    ``fd_step * max(1, |t|)``.
    """

    f: Callable
    df: Optional[Callable] = None
    name: str = "fn"
    fd_step: float = 1e-4

    def __call__(self, t):
        return self.f(t)

    def deriv(self, t):
        if self.df is not None:
            return self.df(t)
        return diff(self.f, t, scaled_step(t, self.fd_step))

    @property
    def analytic(self):
        return self.df is not None

    def __repr__(self):
        return f"Fn({self.name})"


def const(c):
    c = float(c)
    return Fn(lambda t: c + 0.0 * np.asarray(t, dtype=float), lambda t: 0.0 * np.asarray(t, dtype=float), name=repr(c))


ZERO = const(0.0)
ONE = const(1.0)
IDENTITY = Fn(lambda t: t, lambda t: 1.0 + 0.0 * np.asarray(t, dtype=float), name="t")
SIN = Fn(np.sin, np.cos, name="sin")
COS = Fn(np.cos, lambda t: -np.sin(t), name="cos")
SINH = Fn(np.sinh, np.cosh, name="sinh")
COSH = Fn(np.cosh, np.sinh, name="cosh")


def power(k):
    """``t -> t**k`` for an integer ``k >= 1``."""
    k = int(k)
    if k < 1:
        raise ValueError("power exponent must be >= 1")
    return Fn(lambda t: t**k, lambda t: k * t ** (k - 1), name=f"t^{k}")


def affine(a, b, inner=IDENTITY):
    """``t -> a * inner(t) + b``."""
    return Fn(lambda t: a * inner(t) + b, lambda t: a * inner.deriv(t), name=f"{a}*{inner.name}+{b}")


def compose(outer, inner):
    return Fn(
        lambda t: outer(inner(t)),
        lambda t: outer.deriv(inner(t)) * inner.deriv(t),
        name=f"{outer.name}({inner.name})",
    )
