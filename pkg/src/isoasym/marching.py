"""Marching-scale functions and the isoasymptotic conditions they must meet.

A marching triple ``(x, y, z)`` places the point ``a(u) + x e1 + y e2 + z e3``
on the surface. The curve ``a`` sits on the surface as the row ``v = v0``
and is asymptotic there exactly when

    x(u, v0) = y(u, v0) = z(u, v0) = 0   and   dz/dv(u, v0) = 0.

The two structured families below satisfy this through simpler conditions on
their ingredients.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .functions import IDENTITY, Fn
from .numdiff import diff, scaled_step


@dataclass(frozen=True)
class ScalarField2:
    """A real function of ``(u, v)`` with optional analytic partials."""

    value: Callable
    du: Optional[Callable] = None
    dv: Optional[Callable] = None
    fd_step: float = 1e-4
    name: str = ""

    def __call__(self, u, v):
        return self.value(u, v)

    def partial_u(self, u, v):
        if self.du is not None:
            return self.du(u, v)
        return diff(lambda s: self.value(s, v), u, scaled_step(u, self.fd_step))

    def partial_v(self, u, v):
        if self.dv is not None:
            return self.dv(u, v)
        return diff(lambda s: self.value(u, s), v, scaled_step(v, self.fd_step))

    @property
    def analytic(self):
        return self.du is not None and self.dv is not None


def zero_field():
    return ScalarField2(lambda u, v: 0.0, lambda u, v: 0.0, lambda u, v: 0.0, name="0")


def field_of_v(fn: Fn):
    """Lift ``v -> fn(v)`` to a field that ignores ``u``."""
    return ScalarField2(lambda u, v: fn(v), lambda u, v: 0.0, lambda u, v: fn.deriv(v), name=fn.name)


@dataclass(frozen=True)
class MarchingTriple:
    x: ScalarField2
    y: ScalarField2
    z: ScalarField2
    v0: float
    v_domain: tuple

    def __post_init__(self):
        lo, hi = (float(t) for t in self.v_domain)
        if not lo <= self.v0 <= hi:
            raise ValueError(f"v0={self.v0} outside v-domain [{lo}, {hi}]")
        object.__setattr__(self, "v_domain", (lo, hi))

    @property
    def fields(self):
        return self.x, self.y, self.z

    def values(self, u, v):
        return np.array([f(u, v) for f in self.fields], dtype=float)

    def partials_u(self, u, v):
        return np.array([f.partial_u(u, v) for f in self.fields], dtype=float)

    def partials_v(self, u, v):
        return np.array([f.partial_v(u, v) for f in self.fields], dtype=float)


def _coeffs(a, p):
    a = tuple(float(c) for c in a)
    if len(a) != p:
        raise ValueError(f"expected {p} coefficients, got {len(a)}")
    return a


@dataclass(frozen=True, kw_only=True)
class Type1Spec:
    """Power-series marching functions.

    ``x = sum a1[i] (l(u) X(v))**i``, ``y = sum a2[i] (m(u) Y(v))**i`` and
    ``z = sum a3[i] (n(u) Z(v))**i`` for ``i = 1..p``.
    """

    p: int
    a1: Sequence[float]
    a2: Sequence[float]
    a3: Sequence[float]
    l: Fn
    m: Fn
    n: Fn
    X: Fn
    Y: Fn
    Z: Fn
    v0: float
    v_domain: Optional[tuple] = None

    def __post_init__(self):
        if int(self.p) < 1:
            raise ValueError("p must be >= 1")
        object.__setattr__(self, "p", int(self.p))
        for name in ("a1", "a2", "a3"):
            object.__setattr__(self, name, _coeffs(getattr(self, name), self.p))
        if self.v_domain is None:
            object.__setattr__(self, "v_domain", (self.v0 - 1.0, self.v0 + 1.0))

    def rows(self):
        return ((self.a1, self.l, self.X), (self.a2, self.m, self.Y), (self.a3, self.n, self.Z))


@dataclass(frozen=True, kw_only=True)
class Type2Spec(Type1Spec):
    """Type-1 series wrapped in outer functions ``f``, ``g``, ``h``."""

    f: Fn = IDENTITY
    g: Fn = IDENTITY
    h: Fn = IDENTITY

    def wrappers(self):
        return self.f, self.g, self.h


def _series_field(a, ufn, vfn, outer=None, label=""):
    powers = np.arange(1, len(a) + 1)
    coef = np.asarray(a)

    def s(t):
        return float(np.sum(coef * t**powers))

    def ds(t):
        return float(np.sum(coef * powers * t ** (powers - 1)))

    def value(u, v):
        t = ufn(u) * vfn(v)
        return s(t) if outer is None else outer(s(t))

    def chain(u, v):
        t = ufn(u) * vfn(v)
        return ds(t) if outer is None else outer.deriv(s(t)) * ds(t)

    def du(u, v):
        return chain(u, v) * ufn.deriv(u) * vfn(v)

    def dv(u, v):
        return chain(u, v) * ufn(u) * vfn.deriv(v)

    return ScalarField2(value, du, dv, name=label)


def triple_from_type1(s: Type1Spec) -> MarchingTriple:
    x, y, z = (_series_field(a, uf, vf, label=n) for (a, uf, vf), n in zip(s.rows(), "xyz"))
    return MarchingTriple(x, y, z, s.v0, s.v_domain)


def triple_from_type2(s: Type2Spec) -> MarchingTriple:
    x, y, z = (
        _series_field(a, uf, vf, outer, label=n)
        for (a, uf, vf), outer, n in zip(s.rows(), s.wrappers(), "xyz")
    )
    return MarchingTriple(x, y, z, s.v0, s.v_domain)


def to_triple(spec):
    if isinstance(spec, MarchingTriple):
        return spec
    if isinstance(spec, Type2Spec):
        return triple_from_type2(spec)
    if isinstance(spec, Type1Spec):
        return triple_from_type1(spec)
    raise TypeError(f"not a marching spec: {spec!r}")


@dataclass
class ConditionReport:
    """Outcome of a condition check.

    ``residuals`` maps each tested quantity to ``(max |value|, worst u)``;
    ``branches`` lists the alternative conditions that held.
    """

    passed: bool
    residuals: dict = field(default_factory=dict)
    branches: tuple = ()

    def __bool__(self):
        return self.passed


def _max_abs(fn, samples):
    vals = [abs(float(fn(u))) for u in samples]
    i = int(np.argmax(vals))
    return vals[i], float(samples[i])


def check_theorem_conditions(t: MarchingTriple, u_samples, tol=1e-9) -> ConditionReport:
    """Check that ``x, y, z`` and ``dz/dv`` all vanish on the row ``v = v0``."""
    u_samples = np.asarray(u_samples, dtype=float)
    if u_samples.size == 0:
        raise ValueError("u_samples must be nonempty")
    v0 = t.v0
    res = {
        "x": _max_abs(lambda u: t.x(u, v0), u_samples),
        "y": _max_abs(lambda u: t.y(u, v0), u_samples),
        "z": _max_abs(lambda u: t.z(u, v0), u_samples),
        "dz_dv": _max_abs(lambda u: t.z.partial_v(u, v0), u_samples),
    }
    return ConditionReport(all(r[0] <= tol for r in res.values()), res)


def _series_conditions(s, u_samples, tol):
    u_samples = np.asarray(u_samples, dtype=float)
    res = {
        "X(v0)": (abs(float(s.X(s.v0))), float("nan")),
        "Y(v0)": (abs(float(s.Y(s.v0))), float("nan")),
        "Z(v0)": (abs(float(s.Z(s.v0))), float("nan")),
    }
    branches = []
    res["a31"] = (abs(s.a3[0]), float("nan"))
    if abs(s.a3[0]) <= tol:
        branches.append("a31")
    n_max = _max_abs(s.n, u_samples)
    res["n(u)"] = n_max
    if n_max[0] <= tol:
        branches.append("n")
    dz = abs(float(s.Z.deriv(s.v0)))
    res["dZ/dv(v0)"] = (dz, float("nan"))
    if dz <= tol:
        branches.append("dZ")
    zeros_ok = all(res[k][0] <= tol for k in ("X(v0)", "Y(v0)", "Z(v0)"))
    return res, branches, zeros_ok


def check_type1_conditions(s: Type1Spec, u_samples, tol=1e-9) -> ConditionReport:
    """Sufficient conditions for the power-series family.

    ``X(v0) = Y(v0) = Z(v0) = 0`` and at least one of: ``a31 = 0``,
    ``n == 0`` on the sampled range, ``Z'(v0) = 0``.
    """
    res, branches, zeros_ok = _series_conditions(s, u_samples, tol)
    return ConditionReport(zeros_ok and bool(branches), res, tuple(branches))


def check_type2_conditions(s: Type2Spec, u_samples, tol=1e-9) -> ConditionReport:
    """As :func:`check_type1_conditions`, plus ``f(0) = g(0) = h(0) = 0`` and
    the extra alternative ``h'(0) = 0``."""
    res, branches, zeros_ok = _series_conditions(s, u_samples, tol)
    for name, fn in zip("fgh", s.wrappers()):
        res[f"{name}(0)"] = (abs(float(fn(0.0))), float("nan"))
        zeros_ok = zeros_ok and res[f"{name}(0)"][0] <= tol
    dh = abs(float(s.h.deriv(0.0)))
    res["h'(0)"] = (dh, float("nan"))
    if dh <= tol:
        branches.insert(2, "h_prime")
    return ConditionReport(zeros_ok and bool(branches), res, tuple(branches))
