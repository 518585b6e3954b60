"""Vector algebra in Minkowski 3-space with signature (+, +, -).

Vectors are plain ``numpy`` arrays whose last axis has length 3; the third
coordinate is the timelike one. Every function broadcasts over leading axes.
"""
from __future__ import annotations

import enum

import numpy as np

from .errors import NearNullVector, NonFiniteVector

METRIC = np.array([1.0, 1.0, -1.0])

#: Relative width of the band treated as lightlike by :func:`causal_classify`.
NULL_BAND = 1e-10


class CausalClass(str, enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    NULL = "null"

    @classmethod
    def parse(cls, text):
        try:
            return cls(str(text).strip().lower())
        except ValueError:
            raise ValueError(f"unknown causal class {text!r}") from None


def mvec(x1, x2, x3):
    """Build a finite Minkowski 3-vector."""
    return _finite(np.array([x1, x2, x3], dtype=float))


def _finite(x):
    x = np.asarray(x, dtype=float)
    if x.shape[-1:] != (3,):
        raise ValueError(f"expected a trailing axis of length 3, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise NonFiniteVector(f"non-finite coordinates in {x!r}")
    return x


def inner(x, y):
    """Lorentzian inner product ``x1*y1 + x2*y2 - x3*y3``."""
    x, y = _finite(x), _finite(y)
    return x[..., 0] * y[..., 0] + x[..., 1] * y[..., 1] - x[..., 2] * y[..., 2]


def cross(x, y):
    """Lorentzian vector product.

    The result is orthogonal to both factors under :func:`inner`. Note that
    ``inner(cross(x, y), z) == -det[x, y, z]``.
    """
    x, y = _finite(x), _finite(y)
    x1, x2, x3 = x[..., 0], x[..., 1], x[..., 2]
    y1, y2, y3 = y[..., 0], y[..., 1], y[..., 2]
    return np.stack(
        [x3 * y2 - x2 * y3, x1 * y3 - x3 * y1, x1 * y2 - x2 * y1], axis=-1
    )


def lorentz_norm(x):
    """``sqrt(|<x, x>|)``; zero for lightlike vectors."""
    return np.sqrt(np.abs(inner(x, x)))


def causal_classify(x, null_band=0.0):
    """Classify a single vector as spacelike, timelike or null.

    With ``null_band > 0`` a vector counts as null when
    ``|<x, x>| <= null_band * |x|^2`` (Euclidean norm). The zero vector is
    spacelike.
    """
    x = _finite(x)
    if x.ndim != 1:
        raise ValueError("causal_classify takes a single vector")
    q = float(inner(x, x))
    e2 = float(x @ x)
    if e2 == 0.0:
        return CausalClass.SPACELIKE
    if abs(q) <= null_band * e2:
        return CausalClass.NULL
    return CausalClass.SPACELIKE if q > 0 else CausalClass.TIMELIKE


def normalize(x, tol=1e-12):
    """Scale ``x`` to unit Lorentzian length.

    Raises:
        NearNullVector: if ``lorentz_norm(x) <= tol``.
    """
    norm = float(lorentz_norm(x))
    if not norm > tol:
        raise NearNullVector(f"cannot normalize {x!r}: Lorentzian norm {norm:.3g} <= {tol:.3g}")
    return np.asarray(x, dtype=float) / norm


def frame_orthonormality_residual(e1, e2, e3):
    """Largest deviation of a frame from Lorentzian orthonormality.

    Takes the max of ``||<ei, ei>| - 1|`` and ``|<ei, ej>|`` for ``i < j``.
    """
    frame = (e1, e2, e3)
    worst = 0.0
    for i in range(3):
        worst = max(worst, abs(abs(float(inner(frame[i], frame[i]))) - 1.0))
        for j in range(i + 1, 3):
            worst = max(worst, abs(float(inner(frame[i], frame[j]))))
    return worst
