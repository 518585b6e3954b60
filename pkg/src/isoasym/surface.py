"""Surface families ``a(u) + x e1 + y e2 + z e3`` and their local geometry.

Most functions accept any *surface*: an object with ``point(u, v)``,
``partials(u, v)``, ``u_domain`` and ``v_domain``. :class:`SurfaceFamily` and
:class:`ClosedFormSurface` both qualify. Functions that need the Frenet frame
along the common curve take a :class:`SurfaceFamily`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import mlinalg as ml
from .curve import ParamCurve, derivative, frenet_at
from .errors import DegenerateFirstForm, DegenerateNormal, NotIsoparametric, NullNormal
from .marching import MarchingTriple, to_triple
from .mlinalg import CausalClass
from .numdiff import diff, diff4, scaled_step

SECOND_PARTIAL_STEP = 1e-4
ASYMPTOTIC_STEP = 1e-4


@dataclass(frozen=True, eq=False)
class SurfaceFamily:
    """One member ``phi(u, v) = a(u) + x e1 + y e2 + z e3`` of a surface family.

    ``frame`` overrides the computed Frenet frame with any callable
    ``u -> FrenetApparatus`` (for instance a :class:`~isoasym.curve.PrintedFrame`).
    The ``claimed_*`` fields are metadata for the verifier only.
    """

    curve: ParamCurve
    triple: MarchingTriple
    u_domain: Optional[tuple] = None
    v_domain: Optional[tuple] = None
    claimed_surface_class: Optional[CausalClass] = None
    claimed_curve_class: Optional[CausalClass] = None
    claimed_minimal: bool = False
    frame: Optional[Callable] = None
    name: str = "family"
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.triple, MarchingTriple):
            object.__setattr__(self, "triple", to_triple(self.triple))
        ud = self.curve.domain if self.u_domain is None else tuple(float(t) for t in self.u_domain)
        vd = self.triple.v_domain if self.v_domain is None else tuple(float(t) for t in self.v_domain)
        if not (ud[0] < ud[1] and vd[0] < vd[1]):
            raise ValueError(f"empty parameter rectangle {ud} x {vd}")
        if not (self.curve.domain[0] <= ud[0] and ud[1] <= self.curve.domain[1]):
            raise ValueError(f"u-domain {ud} exceeds curve domain {self.curve.domain}")
        if not vd[0] <= self.triple.v0 <= vd[1]:
            raise ValueError(f"v0={self.triple.v0} outside v-domain {vd}")
        object.__setattr__(self, "u_domain", ud)
        object.__setattr__(self, "v_domain", vd)

    @property
    def v0(self):
        return self.triple.v0

    def frame_at(self, u):
        """Frame along the common curve; cached per parameter value."""
        u = float(u)
        app = self._cache.get(u)
        if app is None:
            app = self.frame(u) if self.frame is not None else frenet_at(self.curve, u)
            self._cache[u] = app
        return app

    def point(self, u, v):
        app = self.frame_at(u)
        x, y, z = self.triple.values(u, v)
        return self.curve._raw(0, u) + x * app.e1 + y * app.e2 + z * app.e3

    def partials(self, u, v):
        app = self.frame_at(u)
        e1, e2, e3 = app.frame
        d1, d2, d3 = app.derivatives()
        x, y, z = self.triple.values(u, v)
        xu, yu, zu = self.triple.partials_u(u, v)
        xv, yv, zv = self.triple.partials_v(u, v)
        tangent = derivative(self.curve, u, 1) if self.frame is not None else e1
        phi_u = tangent + xu * e1 + x * d1 + yu * e2 + y * d2 + zu * e3 + z * d3
        phi_v = xv * e1 + yv * e2 + zv * e3
        return phi_u, phi_v


def phi_u_coefficients(s: SurfaceFamily, u, v):
    """Components of ``d phi/du`` in the Frenet frame, written out row by row.

    Spacelike curve: ``(1 + x_u + eps k y, y_u + k x + t z, z_u + t y)``.
    Timelike curve: ``(1 + x_u + k y, y_u + k x + t z, z_u - t y)``.
    """
    app = s.frame_at(u)
    k, t = app.kappa, app.tau
    x, y, z = s.triple.values(u, v)
    xu, yu, zu = s.triple.partials_u(u, v)
    if app.curve_class is CausalClass.TIMELIKE:
        return np.array([1 + xu + k * y, yu + k * x + t * z, zu - t * y])
    return np.array([1 + xu + app.epsilon * k * y, yu + k * x + t * z, zu + t * y])


@dataclass(frozen=True)
class ClosedFormSurface:
    """A surface given by explicit formulas for the point and first partials."""

    fn: Callable
    du: Callable
    dv: Callable
    u_domain: tuple
    v_domain: tuple
    name: str = "surface"

    def point(self, u, v):
        return np.asarray(self.fn(u, v), dtype=float)

    def partials(self, u, v):
        return np.asarray(self.du(u, v), dtype=float), np.asarray(self.dv(u, v), dtype=float)


def _check_rect(s, u, v):
    (u1, u2), (v1, v2) = s.u_domain, s.v_domain
    if not (u1 <= u <= u2 and v1 <= v <= v2):
        raise ValueError(f"({u}, {v}) outside {s.u_domain} x {s.v_domain}")


def evaluate_surface(s, u, v):
    _check_rect(s, u, v)
    return ml.mvec(*s.point(u, v))


def surface_partials(s, u, v):
    """Analytic ``(phi_u, phi_v)``."""
    _check_rect(s, u, v)
    return s.partials(u, v)


def _normal(s, u, v, tol):
    pu, pv = s.partials(u, v)
    n = ml.cross(pu, pv)
    scale = max(1.0, float(np.linalg.norm(pu) * np.linalg.norm(pv)))
    if float(np.linalg.norm(n)) <= tol * scale:
        raise DegenerateNormal(f"phi_u x phi_v vanishes at ({u}, {v})")
    return n


def normal(s, u, v, tol=1e-12):
    """Unnormalized normal ``phi_u x phi_v``.

    Raises:
        DegenerateNormal: the parametrization is singular at ``(u, v)``.
    """
    _check_rect(s, u, v)
    return _normal(s, u, v, tol)


@dataclass(frozen=True)
class NormalCoefficients:
    phi1: float
    phi2: float
    phi3: float

    def normal(self, app):
        """The normal these coefficients describe in the frame ``app``.

        For a Lorentz-orthonormal frame with ``det[e1, e2, e3] = +1`` the
        products are ``e2 x e3 = -s1 e1``, ``e1 x e3 = s2 e2`` and
        ``e1 x e2 = -s3 e3`` with ``si = <ei, ei>``, so the metric signs show
        up on each term.
        """
        s1, s2, s3 = app.signatures()
        return -s1 * self.phi1 * app.e1 + s2 * self.phi2 * app.e2 - s3 * self.phi3 * app.e3


def _isoparametric_guard(s, u, tol):
    vals = s.triple.values(u, s.v0)
    if float(np.max(np.abs(vals))) > tol:
        raise NotIsoparametric(f"(x, y, z)(u={u}, v0) = {vals}")


def normal_coefficients_at_v0(s: SurfaceFamily, u, tol=1e-9):
    """``phi1, phi2, phi3`` of the normal along the common curve.

    ``phi1 = y_u z_v - z_u y_v``, ``phi2 = (1 + x_u) z_v - z_u x_v`` and
    ``phi3 = (1 + x_u) y_v - y_u x_v``, all at ``(u, v0)``.
    """
    _isoparametric_guard(s, u, tol)
    xu, yu, zu = s.triple.partials_u(u, s.v0)
    xv, yv, zv = s.triple.partials_v(u, s.v0)
    return NormalCoefficients(
        phi1=yu * zv - zu * yv,
        phi2=(1 + xu) * zv - zu * xv,
        phi3=(1 + xu) * yv - yu * xv,
    )


def asymptotic_residual(s: SurfaceFamily, u, h=ASYMPTOTIC_STEP, tol=1e-9):
    """``<dn/du (u, v0), e1(u)>`` with a central difference of the normal.

    Zero exactly when the common curve is asymptotic at ``u``.
    """
    _isoparametric_guard(s, u, tol)
    lo, hi = s.u_domain
    dn = diff(lambda t: _normal(s, t, s.v0, 1e-12), u, scaled_step(u, h), lo, hi)
    return float(ml.inner(dn, s.frame_at(u).e1))


def reduced_asymptotic_residual(s: SurfaceFamily, u, h=ASYMPTOTIC_STEP, tol=1e-9):
    """``d phi1/du + kappa phi2`` at ``(u, v0)``.

    For an orthonormal, positively oriented frame this equals
    ``-asymptotic_residual``; the two vanish together.
    """
    lo, hi = s.u_domain
    dphi1 = diff(lambda t: normal_coefficients_at_v0(s, t, tol).phi1, u, scaled_step(u, h), lo, hi)
    return dphi1 + s.frame_at(u).kappa * normal_coefficients_at_v0(s, u, tol).phi2


@dataclass(frozen=True)
class FundamentalForms:
    E: float
    F: float
    G: float
    e: float
    f: float
    g: float

    @property
    def det_first(self):
        return self.E * self.G - self.F**2


def second_partials(s, u, v, h=SECOND_PARTIAL_STEP):
    """``phi_uu, phi_uv, phi_vv`` by five-point differences of the analytic first partials."""
    (u1, u2), (v1, v2) = s.u_domain, s.v_domain
    hu, hv = scaled_step(u, h), scaled_step(v, h)
    puu = diff4(lambda t: s.partials(t, v)[0], u, hu, u1, u2)
    puv = diff4(lambda t: s.partials(u, t)[0], v, hv, v1, v2)
    pvv = diff4(lambda t: s.partials(u, t)[1], v, hv, v1, v2)
    return puu, puv, pvv


def fundamental_forms(s, u, v, null_band=ml.NULL_BAND, h=SECOND_PARTIAL_STEP):
    """First and second fundamental forms, the latter w.r.t. the unit normal.

    Raises:
        DegenerateNormal: singular point.
        NullNormal: the normal is lightlike, so the surface changes causal
            type here and has no unit normal.
    """
    _check_rect(s, u, v)
    pu, pv = s.partials(u, v)
    n = _normal(s, u, v, 1e-12)
    q = float(ml.inner(n, n))
    if abs(q) <= null_band * float(n @ n):
        raise NullNormal(f"<n, n> = {q:.3g} at ({u}, {v})")
    nhat = n / np.sqrt(abs(q))
    puu, puv, pvv = second_partials(s, u, v, h)
    return FundamentalForms(
        E=float(ml.inner(pu, pu)),
        F=float(ml.inner(pu, pv)),
        G=float(ml.inner(pv, pv)),
        e=float(ml.inner(puu, nhat)),
        f=float(ml.inner(puv, nhat)),
        g=float(ml.inner(pvv, nhat)),
    )


def minimality_numerator(s, u, v, **kw):
    """``eG - 2fF + gE``; zero exactly where the mean curvature vanishes."""
    ff = fundamental_forms(s, u, v, **kw)
    return ff.e * ff.G - 2.0 * ff.f * ff.F + ff.g * ff.E


def _checked_det(ff, tol):
    det = ff.det_first
    if abs(det) <= tol:
        raise DegenerateFirstForm(f"EG - F^2 = {det:.3g}")
    return det


def mean_curvature(s, u, v, tol=1e-12, **kw):
    """``(eG - 2fF + gE) / (2 (EG - F^2))``."""
    ff = fundamental_forms(s, u, v, **kw)
    det = _checked_det(ff, tol)
    return (ff.e * ff.G - 2.0 * ff.f * ff.F + ff.g * ff.E) / (2.0 * det)


def gaussian_curvature(s, u, v, tol=1e-12, **kw):
    """``(eg - f^2) / (EG - F^2)``."""
    ff = fundamental_forms(s, u, v, **kw)
    det = _checked_det(ff, tol)
    return (ff.e * ff.g - ff.f**2) / det


_DUAL = {
    CausalClass.SPACELIKE: CausalClass.TIMELIKE,
    CausalClass.TIMELIKE: CausalClass.SPACELIKE,
    CausalClass.NULL: CausalClass.NULL,
}


def surface_causal_at(s, u, v, null_band=ml.NULL_BAND):
    """Causal type of the surface: timelike iff its normal is spacelike."""
    n = normal(s, u, v)
    return _DUAL[ml.causal_classify(n, null_band)]
