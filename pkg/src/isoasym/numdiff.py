"""Finite-difference stencils that stay inside a closed parameter interval."""
from __future__ import annotations

import math

from .errors import StencilOutsideDomain

DEFAULT_STEP = 1e-4


def scaled_step(x, step=DEFAULT_STEP):
    """Step proportional to ``max(1, |x|)``."""
    return step * max(1.0, abs(float(x)))


def diff(f, x, h, lo=-math.inf, hi=math.inf):
    """Second-order derivative estimate of ``f`` at ``x``.

    Central when ``[x - h, x + h]`` fits in ``[lo, hi]``, otherwise the
    one-sided three-point formula pointing into the interval. ``f`` may
    return scalars or arrays.
    """
    if x - h >= lo and x + h <= hi:
        return (f(x + h) - f(x - h)) / (2.0 * h)
    if x + 2.0 * h <= hi:
        return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h)
    if x - 2.0 * h >= lo:
        return (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / (2.0 * h)
    raise StencilOutsideDomain(f"interval [{lo}, {hi}] too short for step {h}")


def diff4(f, x, h, lo=-math.inf, hi=math.inf):
    """Fourth-order derivative estimate, five-point stencil.

    Falls back to the one-sided five-point formula near the ends of
    ``[lo, hi]``.
    """
    if x - 2.0 * h >= lo and x + 2.0 * h <= hi:
        return (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
    if x + 4.0 * h <= hi:
        s = h
    elif x - 4.0 * h >= lo:
        s = -h
    else:
        raise StencilOutsideDomain(f"interval [{lo}, {hi}] too short for step {h}")
    return (
        -25.0 * f(x) + 48.0 * f(x + s) - 36.0 * f(x + 2 * s) + 16.0 * f(x + 3 * s) - 3.0 * f(x + 4 * s)
    ) / (12.0 * s)
