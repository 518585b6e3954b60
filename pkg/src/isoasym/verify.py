"""Residual checks gathered into a verification report.

Gating checks decide ``overall``. Advisory checks compare against claims
attached to a family (causal labels, minimality, a reference closed form);
when one fails it adds a line to ``discrepancies`` but leaves ``overall``
alone.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import mlinalg as ml
from .curve import derivative, structure_residual
from .errors import IsoasymError, NullNormal
from .marching import (
    Type1Spec,
    Type2Spec,
    check_theorem_conditions,
    check_type1_conditions,
    check_type2_conditions,
    to_triple,
)
from .numdiff import scaled_step
from .surface import (
    _normal,
    asymptotic_residual,
    minimality_numerator,
    reduced_asymptotic_residual,
    surface_causal_at,
)


@dataclass(frozen=True)
class ToleranceSet:
    exact: float = 1e-9
    fd: float = 1e-5
    null_band: float = 1e-10
    minimal: float = 1e-6


@dataclass
class CheckResult:
    name: str
    max_residual: float
    tolerance: float
    passed: bool
    sample_count: int
    worst_location: Optional[tuple] = None
    advisory: bool = False
    detail: str = ""


@dataclass
class VerificationReport:
    family_id: str
    checks: list = field(default_factory=list)
    overall: bool = True
    discrepancies: list = field(default_factory=list)

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed(self, advisory=None):
        return [c for c in self.checks if not c.passed and (advisory is None or c.advisory == advisory)]


class _Max:
    """Running maximum with its location; errors count as infinite residuals."""

    def __init__(self):
        self.value = -math.inf
        self.where = None
        self.count = 0
        self.errors = []

    def add(self, value, where):
        self.count += 1
        value = float(value)
        if math.isnan(value):
            value = math.inf
        if value > self.value:
            self.value, self.where = value, where

    def fail(self, exc, where):
        self.errors.append(f"{type(exc).__name__} at {where}: {exc}")
        self.add(math.inf, where)

    def result(self, name, tol, advisory=False, detail=""):
        if self.errors:
            extra = f"{len(self.errors)} error(s); first: {self.errors[0]}"
            detail = f"{detail}; {extra}" if detail else extra
        value = self.value if self.count else 0.0
        return CheckResult(name, value, tol, value <= tol, self.count, self.where, advisory, detail)


def _scan(points, fn):
    m = _Max()
    for where in points:
        try:
            m.add(fn(*where), where)
        except IsoasymError as exc:
            m.fail(exc, where)
    return m


def _grids(s, grid):
    nu, nv = grid
    if nu < 2 or nv < 2:
        raise ValueError("grid needs at least 2 x 2 points")
    return np.linspace(*s.u_domain, nu), np.linspace(*s.v_domain, nv)


def _curve_u_samples(s, us):
    """Grid ``us`` pulled inward where a finite-difference curve derivative needs room."""
    lo = s.u_domain[0] + s.curve.reach(3, s.u_domain[0])
    hi = s.u_domain[1] - s.curve.reach(3, s.u_domain[1])
    return np.clip(us, lo, hi)


def verify_family(s, grid=(50, 50), tols=ToleranceSet(), family_id=None) -> VerificationReport:
    """Run every check on a :class:`~isoasym.surface.SurfaceFamily`.

    Order: unit speed, frame orthonormality, structure equations,
    isoparametric row, ``dz/dv`` on the row, asymptotic residual and its
    reduced form, regularity, then the advisory claim comparisons.
    Construction errors become failed checks; nothing propagates.
    """
    report = VerificationReport(family_id or getattr(s, "name", "family"))
    us, vs = _grids(s, grid)
    cu = _curve_u_samples(s, us)
    v0 = s.v0
    row = [(float(u), v0) for u in cu]
    add = report.checks.append

    def unit_speed(u, v):
        t = derivative(s.curve, u, 1)
        return abs(abs(float(ml.inner(t, t))) - 1.0)

    tol_speed = tols.exact if s.curve.analytic(1) else tols.fd
    add(_scan(row, unit_speed).result("unit_speed", tol_speed))

    def orthonormal(u, v):
        return ml.frame_orthonormality_residual(*s.frame_at(u).frame)

    add(_scan(row, orthonormal).result("frame_orthonormality", tols.exact))

    lo, hi = float(cu[0]), float(cu[-1])

    def structure(u, v):
        return structure_residual(s.frame_at, u, scaled_step(u, s.curve.fd_step), (lo, hi))

    add(_scan(row, structure).result("frame_structure_equations", tols.fd))

    def iso(u, v):
        return float(np.linalg.norm(s.point(u, v0) - s.curve._raw(0, u)))

    add(_scan(row, iso).result("isoparametric", tols.exact))

    tol_dz = tols.exact if s.triple.z.dv is not None else tols.fd
    add(_scan(row, lambda u, v: abs(float(s.triple.z.partial_v(u, v0)))).result("dz_dv_at_v0", tol_dz))

    asym = _scan(row, lambda u, v: abs(asymptotic_residual(s, u, tol=tols.exact)))
    add(asym.result("asymptotic_residual", tols.fd))

    def agreement(u, v):
        return abs(abs(asymptotic_residual(s, u, tol=tols.exact)) - abs(reduced_asymptotic_residual(s, u, tol=tols.exact)))

    add(_scan(row, agreement).result("asymptotic_reduced_form", tols.fd,
                                     detail="| |<n_u, e1>| - |d phi1/du + kappa phi2| |"))

    cells = [(float(u), float(v)) for u in cu for v in vs]
    bad, first = 0, None
    for where in cells:
        try:
            _normal(s, *where, 1e-12)
        except IsoasymError as exc:
            bad += 1
            first = first or (where, f"{type(exc).__name__}: {exc}")
    add(CheckResult("regularity", float(bad), 0.0, bad == 0, len(cells),
                    first[0] if first else None, detail=first[1] if first else ""))

    _claim_checks(s, report, cu, vs, cells, tols)

    report.overall = all(c.passed for c in report.checks if not c.advisory)
    return report


def _histogram_text(hist):
    return ", ".join(f"{k.value}={hist[k]}" for k in ml.CausalClass if hist[k])


def _claim_checks(s, report, cu, vs, cells, tols):
    add = report.checks.append
    if s.claimed_curve_class is not None:
        hist = Counter()
        first_bad = None
        for u in cu:
            t = derivative(s.curve, float(u), 1)
            cls = ml.causal_classify(t, tols.null_band)
            hist[cls] += 1
            if cls is not s.claimed_curve_class and first_bad is None:
                first_bad = (float(u), s.v0)
        bad = len(cu) - hist[s.claimed_curve_class]
        frac = bad / len(cu)
        res = CheckResult("curve_causal_character", frac, 0.0, bad == 0, len(cu), first_bad, True,
                          _histogram_text(hist))
        add(res)
        if not res.passed:
            report.discrepancies.append(
                f"curve claimed {s.claimed_curve_class.value}, but tangent is {_histogram_text(hist)} "
                f"over {len(cu)} samples"
            )

    if s.claimed_surface_class is not None:
        hist = Counter()
        first_bad = None
        for where in cells:
            try:
                cls = surface_causal_at(s, *where, tols.null_band)
            except IsoasymError:
                continue
            hist[cls] += 1
            if cls is not s.claimed_surface_class and first_bad is None:
                first_bad = where
        total = sum(hist.values())
        bad = total - hist[s.claimed_surface_class]
        res = CheckResult("surface_causal_character", bad / max(total, 1), 0.0, bad == 0, total,
                          first_bad, True, _histogram_text(hist))
        add(res)
        if not res.passed:
            report.discrepancies.append(
                f"surface claimed {s.claimed_surface_class.value}, but sampled points are "
                f"{_histogram_text(hist)}"
            )

    if s.claimed_minimal:
        interior = [(float(u), float(v)) for u in cu[1:-1] for v in vs[1:-1]]
        m = _Max()
        skipped = 0
        for where in interior:
            try:
                m.add(abs(minimality_numerator(s, *where, null_band=tols.null_band)), where)
            except NullNormal:
                skipped += 1
            except IsoasymError as exc:
                m.fail(exc, where)
        detail = "|eG - 2fF + gE|" + (f"; {skipped} lightlike-normal points skipped" if skipped else "")
        res = m.result("minimality_numerator", tols.minimal, advisory=True, detail=detail)
        add(res)
        if not res.passed:
            report.discrepancies.append(
                f"surface claimed minimal, but |eG - 2fF + gE| reaches {res.max_residual:.6g} "
                f"at (u, v) = {res.worst_location}"
            )


def verify_preset(preset, grid=(50, 50), tols=ToleranceSet()) -> VerificationReport:
    """:func:`verify_family` plus comparison with the preset's reference closed form."""
    report = verify_family(preset.family, grid, tols, family_id=preset.id)
    if preset.printed_surface is not None:
        s = preset.family
        us, vs = _grids(s, grid)
        m = _scan([(float(u), float(v)) for u in us for v in vs],
                  lambda u, v: float(np.max(np.abs(s.point(u, v) - preset.printed_surface.point(u, v)))))
        res = m.result("printed_surface_match", tols.exact, advisory=True)
        report.checks.append(res)
        if not res.passed:
            report.discrepancies.append(
                f"family differs from the reference surface by {res.max_residual:.6g} "
                f"at (u, v) = {res.worst_location}"
            )
    return report


def verify_conditions_only(spec, u_samples, tols=ToleranceSet()):
    """Condition checks on a marching triple or structured spec, as check results."""
    u_samples = np.asarray(u_samples, dtype=float)
    out = []
    if isinstance(spec, (Type1Spec, Type2Spec)):
        if isinstance(spec, Type2Spec):
            name, rep = "type2_conditions", check_type2_conditions(spec, u_samples, tols.exact)
        else:
            name, rep = "type1_conditions", check_type1_conditions(spec, u_samples, tols.exact)
        alternatives = ("a31", "n(u)", "dZ/dv(v0)", "h'(0)")
        zeros = max(v[0] for k, v in rep.residuals.items() if k not in alternatives)
        branch = min(v[0] for k, v in rep.residuals.items() if k in alternatives)
        out.append(CheckResult(name, max(zeros, branch), tols.exact, rep.passed, len(u_samples), None,
                               detail="branches: " + (", ".join(rep.branches) or "none")))
    triple = to_triple(spec)
    rep = check_theorem_conditions(triple, u_samples, tols.exact)
    key = max(rep.residuals, key=lambda k: rep.residuals[k][0])
    value, worst_u = rep.residuals[key]
    out.append(CheckResult("theorem_conditions", value, tols.exact, rep.passed, len(u_samples),
                           (worst_u, triple.v0), detail=f"largest: {key}"))
    return out
