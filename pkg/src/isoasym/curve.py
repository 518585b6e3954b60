"""Parametric curves in Minkowski 3-space and their Frenet apparatus."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

import numpy as np

from . import mlinalg as ml
from .errors import (
    NotUnitSpeed,
    NullPrincipalNormal,
    OutOfDomain,
    StencilOutsideDomain,
    VanishingCurvature,
)
from .mlinalg import CausalClass
from .numdiff import diff, diff4, scaled_step


@dataclass(frozen=True)
class ParamCurve:
    """A curve ``u -> position(u)`` on the closed interval ``domain``.

    ``d1``, ``d2`` and ``d3`` are optional analytic derivatives. A missing
    one is replaced by a central difference of the next lower order.
    """

    position: Callable
    domain: tuple
    d1: Optional[Callable] = None
    d2: Optional[Callable] = None
    d3: Optional[Callable] = None
    fd_step: float = 1e-4
    name: str = "curve"

    def __post_init__(self):
        lo, hi = (float(t) for t in self.domain)
        if not lo < hi:
            raise ValueError(f"empty curve domain {self.domain}")
        if not self.fd_step > 0:
            raise ValueError("fd_step must be positive")
        object.__setattr__(self, "domain", (lo, hi))

    def __call__(self, u):
        return evaluate(self, u)

    def contains(self, u):
        lo, hi = self.domain
        return lo <= u <= hi

    def analytic(self, order):
        return (self.d1, self.d2, self.d3)[order - 1] is not None

    def _raw(self, order, u):
        if order == 0:
            return np.asarray(self.position(u), dtype=float)
        fn = (self.d1, self.d2, self.d3)[order - 1]
        if fn is not None:
            return np.asarray(fn(u), dtype=float)
        h = scaled_step(u, self.fd_step)
        return (self._raw(order - 1, u + h) - self._raw(order - 1, u - h)) / (2.0 * h)

    def reach(self, order, u):
        """How far past ``u`` a derivative of this order samples the curve."""
        if self.analytic(order) or order == 0:
            return 0.0
        return scaled_step(u, self.fd_step) + self.reach(order - 1, u)


def _check_domain(c, u):
    if not c.contains(u):
        raise OutOfDomain(f"u={u} outside {c.name} domain {c.domain}")


def evaluate(c, u):
    """Position of the curve at ``u``."""
    _check_domain(c, u)
    return ml.mvec(*c._raw(0, u))


def derivative(c, u, order):
    """Derivative of order 1, 2 or 3 at ``u``.

    Raises:
        OutOfDomain: ``u`` is outside the curve domain.
        StencilOutsideDomain: a finite-difference fallback would need points
            beyond the domain.
    """
    if order not in (1, 2, 3):
        raise ValueError("order must be 1, 2 or 3")
    _check_domain(c, u)
    r = c.reach(order, u)
    lo, hi = c.domain
    if u - r < lo or u + r > hi:
        raise StencilOutsideDomain(f"order-{order} stencil at u={u} leaves {c.domain}")
    return ml.mvec(*c._raw(order, u))


def sample_grid(c, samples, order=1):
    """Equispaced parameters, pulled inward when a derivative needs finite differences."""
    lo, hi = c.domain
    lo += c.reach(order, lo)
    hi -= c.reach(order, hi)
    return np.linspace(lo, hi, samples)


class UnitSpeed(NamedTuple):
    ok: bool
    residual: float
    worst_u: float


def is_unit_speed(c, samples=64, tol=1e-9):
    """Largest ``||<a', a'>| - 1|`` over an equispaced grid."""
    if samples < 2:
        raise ValueError("need at least 2 samples")
    worst, worst_u = -1.0, float("nan")
    for u in sample_grid(c, samples):
        t = derivative(c, float(u), 1)
        r = abs(abs(float(ml.inner(t, t))) - 1.0)
        if r > worst:
            worst, worst_u = r, float(u)
    return UnitSpeed(worst <= tol, worst, worst_u)


def _frozen(x):
    x = np.array(x, dtype=float)
    x.setflags(write=False)
    return x


@dataclass(frozen=True)
class FrenetApparatus:
    """Frame, curvature, torsion and causal data at one curve parameter.

    ``derivs`` carries exact frame derivatives when they are known
    independently of the structure equations (reference frames); otherwise the
    derivatives are read off the structure equations.
    """

    u: float
    e1: np.ndarray
    e2: np.ndarray
    e3: np.ndarray
    kappa: float
    tau: float
    epsilon: int
    curve_class: CausalClass
    e2_class: CausalClass
    e3_class: CausalClass
    derivs: Optional[tuple] = field(default=None, repr=False)

    @property
    def frame(self):
        return self.e1, self.e2, self.e3

    def structure_derivatives(self):
        """``(e1', e2', e3')`` predicted by the Frenet equations."""
        k, t = self.kappa, self.tau
        e1, e2, e3 = self.frame
        if self.curve_class is CausalClass.TIMELIKE:
            return k * e2, k * e1 - t * e3, t * e2
        return k * e2, self.epsilon * k * e1 + t * e3, t * e2

    def derivatives(self):
        if self.derivs is not None:
            return self.derivs
        return self.structure_derivatives()

    def signatures(self):
        """Signs of ``<ei, ei>``."""
        return tuple(int(np.sign(ml.inner(e, e))) for e in self.frame)


def oriented_binormal(e1, e2):
    """Third frame vector with Euclidean ``det[e1, e2, e3] = +1``.

    Since ``<e1 x e2, z> = -det[e1, e2, z]``, this is ``-<c, c> c`` with
    ``c = e1 x e2``. It reproduces every reference frame (circle, hyperbola,
    three helicoids).
    """
    c = ml.cross(e1, e2)
    return -np.sign(ml.inner(c, c)) * c


def _torsion(curve_class, e2p, e3):
    q = float(ml.inner(e2p, e3))
    if curve_class is CausalClass.TIMELIKE:
        return -q
    return q / float(ml.inner(e3, e3))


def frenet_at(c, u, tol=1e-6, null_band=ml.NULL_BAND):
    """Frenet apparatus of a unit-speed, non-null curve at ``u``.

    ``e1 = a'``, ``e2 = a'' / kappa`` with ``kappa = |a''|_L``, ``e3`` from
    :func:`oriented_binormal`. Torsion comes from projecting ``e2'`` on ``e3``
    with the metric sign of the curve's Frenet system.

    Raises:
        NotUnitSpeed, VanishingCurvature, NullPrincipalNormal
    """
    t = derivative(c, u, 1)
    speed = float(ml.inner(t, t))
    if abs(abs(speed) - 1.0) > tol:
        raise NotUnitSpeed(f"<a', a'> = {speed:.12g} at u={u}")
    curve_class = CausalClass.SPACELIKE if speed > 0 else CausalClass.TIMELIKE

    a2 = derivative(c, u, 2)
    kappa = float(ml.lorentz_norm(a2))
    if float(np.linalg.norm(a2)) <= tol:
        raise VanishingCurvature(f"a'' vanishes at u={u}")
    e2_class = ml.causal_classify(a2, null_band)
    if kappa <= tol or e2_class is CausalClass.NULL:
        raise NullPrincipalNormal(f"a'' is lightlike at u={u}")
    e2 = a2 / kappa
    e3 = oriented_binormal(t, e2)
    eps = int(np.sign(ml.inner(e3, e3)))

    # e2' from a''' when available, otherwise a difference of e2 itself
    if c.analytic(3) or c.analytic(2):
        a3 = derivative(c, u, 3)
        sgn = float(np.sign(ml.inner(a2, a2)))
        dkappa = sgn * float(ml.inner(a2, a3)) / kappa
        e2p = a3 / kappa - a2 * dkappa / kappa**2
    else:
        lo, hi = c.domain
        r = c.reach(2, u)

        def unit_normal(s):
            v = c._raw(2, s)
            return v / float(ml.lorentz_norm(v))

        e2p = diff(unit_normal, u, scaled_step(u, c.fd_step), lo + r, hi - r)
    tau = _torsion(curve_class, e2p, e3)
    return FrenetApparatus(
        u=float(u),
        e1=_frozen(t),
        e2=_frozen(e2),
        e3=_frozen(e3),
        kappa=kappa,
        tau=tau,
        epsilon=eps,
        curve_class=curve_class,
        e2_class=e2_class,
        e3_class=ml.causal_classify(e3, null_band),
    )


@dataclass(frozen=True)
class PrintedFrame:
    """A frame given in closed form, whether or not it is a Frenet frame.

    Used to carry a frame exactly as given so that its defects can be
    measured rather than silently repaired.
    """

    e1: Callable
    e2: Callable
    e3: Callable
    d1: Callable
    d2: Callable
    d3: Callable

    def __call__(self, u, null_band=ml.NULL_BAND):
        e1, e2, e3 = (_frozen(f(u)) for f in (self.e1, self.e2, self.e3))
        d1, d2, d3 = (_frozen(f(u)) for f in (self.d1, self.d2, self.d3))
        q1 = float(ml.inner(e1, e1))
        curve_class = CausalClass.TIMELIKE if q1 < 0 else CausalClass.SPACELIKE
        q3 = float(ml.inner(e3, e3))
        return FrenetApparatus(
            u=float(u),
            e1=e1,
            e2=e2,
            e3=e3,
            kappa=float(ml.lorentz_norm(d1)),
            tau=_torsion(curve_class, d2, e3) if q3 != 0 else float("nan"),
            epsilon=int(np.sign(q3)) or 1,
            curve_class=curve_class,
            e2_class=ml.causal_classify(e2, null_band),
            e3_class=ml.causal_classify(e3, null_band),
            derivs=(d1, d2, d3),
        )


def structure_residual(frame_at, u, h, domain):
    """Largest component of ``ei' - (structure equation)`` at ``u``.

    ``frame_at`` maps a parameter to a :class:`FrenetApparatus`; the frame
    derivatives are five-point differences of those frames.
    """
    lo, hi = domain
    app = frame_at(u)
    predicted = app.structure_derivatives()
    worst = 0.0
    for i in range(3):
        measured = diff4(lambda s: np.asarray(frame_at(s).frame[i]), u, h, lo, hi)
        worst = max(worst, float(np.max(np.abs(measured - predicted[i]))))
    return worst


def frame_ode_residual(c, u, h=None, tol=1e-6):
    """Structure-equation residual of the computed Frenet frame at ``u``."""
    lo, hi = c.domain
    r = max(c.reach(3, lo), c.reach(3, hi))
    step = h if h is not None else scaled_step(u, c.fd_step)
    return structure_residual(lambda s: frenet_at(c, s, tol), u, step, (lo + r, hi - r))
