"""Ready-made surface families: reference examples and two controls.

Each preset keeps the closed-form surface and frame exactly as given
(``printed_surface``, ``printed_frame``) next to the family built by this
package, so the two can be compared.

The reference frames for the three helicoids carry an unnormalized principal
normal (Lorentzian length 4, 5 and 3). Here frames are always unit, so the
marching function ``y = v/4`` (resp. ``v/5``, ``v/3``) becomes ``y = v``;
the resulting surface is identical.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .curve import ParamCurve, PrintedFrame
from .errors import UnknownPreset
from .functions import COS, IDENTITY, ONE, SIN, SINH, Fn, affine
from .marching import MarchingTriple, Type1Spec, Type2Spec, field_of_v, zero_field
from .mlinalg import CausalClass
from .surface import ClosedFormSurface, SurfaceFamily

S, T = CausalClass.SPACELIKE, CausalClass.TIMELIKE
sin, cos, sinh, cosh = np.sin, np.cos, np.sinh, np.cosh


@dataclass(frozen=True)
class Preset:
    id: str
    description: str
    family: SurfaceFamily
    printed_surface: Optional[ClosedFormSurface] = None
    printed_frame: Optional[Callable] = None
    claims: dict = field(default_factory=dict)
    notes: str = ""
    spec: object = None


def _vec(*xs):
    return np.array(xs, dtype=float)


def _y_is_v(v0=0.0, v_domain=(-1.0, 1.0)):
    return MarchingTriple(zero_field(), field_of_v(IDENTITY), zero_field(), v0, v_domain)


CIRCLE = ParamCurve(
    lambda u: _vec(cos(u), sin(u), 0),
    (0.0, 2 * math.pi),
    d1=lambda u: _vec(-sin(u), cos(u), 0),
    d2=lambda u: _vec(-cos(u), -sin(u), 0),
    d3=lambda u: _vec(sin(u), -cos(u), 0),
    name="circle",
)

HYPERBOLA = ParamCurve(
    lambda u: _vec(cosh(u), 0, sinh(u)),
    (-2.0, 2.0),
    d1=lambda u: _vec(sinh(u), 0, cosh(u)),
    d2=lambda u: _vec(cosh(u), 0, sinh(u)),
    d3=lambda u: _vec(sinh(u), 0, cosh(u)),
    name="hyperbola",
)


def _circle_frame(u):
    return _vec(-sin(u), cos(u), 0), _vec(-cos(u), -sin(u), 0), _vec(0, 0, 1)


def _planar_circle_surface(y, dy, z, dz, v_domain):
    """``(cos u (1 - y(v)), sin u (1 - y(v)), z(v))``."""
    return ClosedFormSurface(
        lambda u, v: _vec(cos(u) * (1 - y(v)), sin(u) * (1 - y(v)), z(v)),
        lambda u, v: _vec(-sin(u) * (1 - y(v)), cos(u) * (1 - y(v)), 0),
        lambda u, v: _vec(-cos(u) * dy(v), -sin(u) * dy(v), dz(v)),
        (0.0, 2 * math.pi),
        v_domain,
    )


def _ex3_1():
    half = [0.5, 0.5, 0.5, 0.5]
    spec = Type1Spec(
        p=4, a1=[0, 0, 0, 0], a2=[1, 0.5, 0.5, 0.5], a3=half,
        l=ONE, m=ONE, n=ONE,
        X=COS, Y=COS, Z=affine(1.0, 1.0, SIN),
        v0=1.5 * math.pi, v_domain=(4.0, 5.0),
    )
    fam = SurfaceFamily(CIRCLE, spec, claimed_curve_class=S, claimed_surface_class=S, name="ex3_1")

    def y(v):
        return cos(v) + sum(0.5 * cos(v) ** k for k in range(2, 5))

    def dy(v):
        return -sin(v) - sum(0.5 * k * cos(v) ** (k - 1) * sin(v) for k in range(2, 5))

    def z(v):
        return sum(0.5 * (1 + sin(v)) ** k for k in range(1, 5))

    def dz(v):
        return sum(0.5 * k * (1 + sin(v)) ** (k - 1) * cos(v) for k in range(1, 5))

    return Preset(
        "ex3_1",
        "circle (cos u, sin u, 0); y = cos v + sum a2k cos^k v, z = sum a3k (1 + sin v)^k, v0 = 3pi/2",
        fam,
        _planar_circle_surface(y, dy, z, dz, (4.0, 5.0)),
        _circle_frame,
        {"curve_class": S, "surface_class": S, "minimal": False},
        "Power-series form with m = n = 1, Y = cos v, a21 = 1, a2k = a3k = 1/2, p = 4.",
        spec,
    )


def _ex4_1():
    spec = Type1Spec(
        p=1, a1=[0], a2=[1], a3=[1],
        l=ONE, m=ONE, n=IDENTITY,
        X=SIN, Y=SIN, Z=Fn(lambda v: v * v, lambda v: 2 * v, name="v^2"),
        v0=0.0, v_domain=(-1.0, 1.0),
    )
    fam = SurfaceFamily(HYPERBOLA, spec, claimed_curve_class=T, claimed_surface_class=T, name="ex4_1")
    printed = ClosedFormSurface(
        lambda u, v: _vec(cosh(u) + sin(v) * cosh(u), u * v * v, sinh(u) + sin(v) * sinh(u)),
        lambda u, v: _vec(sinh(u) * (1 + sin(v)), v * v, cosh(u) * (1 + sin(v))),
        lambda u, v: _vec(cos(v) * cosh(u), 2 * u * v, cos(v) * sinh(u)),
        (-2.0, 2.0),
        (-1.0, 1.0),
    )
    return Preset(
        "ex4_1",
        "hyperbola (cosh u, 0, sinh u); x = 0, y = sin v, z = u v^2, v0 = 0",
        fam,
        printed,
        lambda u: (_vec(sinh(u), 0, cosh(u)), _vec(cosh(u), 0, sinh(u)), _vec(0, 1, 0)),
        {"curve_class": T, "surface_class": T, "minimal": False},
        "Power-series form with p = 1, n(u) = u, Z = v^2.",
        spec,
    )


def _ex4_2():
    p, a = 4, [0.5, 0.5, 0.5, 0.5]
    one_minus_cosh = Fn(lambda v: 1 - cosh(v), lambda v: -sinh(v), name="1-cosh")
    spec = Type2Spec(
        p=p, a1=[0] * p, a2=a, a3=a,
        l=ONE, m=ONE, n=ONE,
        X=SINH, Y=SINH, Z=one_minus_cosh,
        f=SIN, g=SIN, h=SIN,
        v0=0.0, v_domain=(0.0, 0.5),
    )
    fam = SurfaceFamily(CIRCLE, spec, claimed_curve_class=S, claimed_surface_class=S, name="ex4_2")
    series = np.arange(1, p + 1)

    def s2(v):
        return float(np.sum(0.5 * sinh(v) ** series))

    def ds2(v):
        return float(np.sum(0.5 * series * sinh(v) ** (series - 1))) * cosh(v)

    def s3(v):
        return float(np.sum(0.5 * (1 - cosh(v)) ** series))

    def ds3(v):
        return float(np.sum(0.5 * series * (1 - cosh(v)) ** (series - 1))) * -sinh(v)

    printed = _planar_circle_surface(
        lambda v: sin(s2(v)), lambda v: cos(s2(v)) * ds2(v),
        lambda v: sin(s3(v)), lambda v: cos(s3(v)) * ds3(v),
        (0.0, 0.5),
    )
    return Preset(
        "ex4_2",
        "circle; y = sin(sum a2k sinh^k v), z = sin(sum a3k (1 - cosh v)^k), v0 = 0",
        fam,
        printed,
        _circle_frame,
        {"curve_class": S, "surface_class": S, "minimal": False},
        "Wrapped form f = g = h = sin. The coefficients are free parameters; "
        "this preset fixes p = 4 and a2k = a3k = 1/2.",
        spec,
    )


def _helicoid(pid, curve, printed, printed_frame, curve_class, description, note):
    fam = SurfaceFamily(
        curve, _y_is_v(), claimed_curve_class=curve_class, claimed_surface_class=T,
        claimed_minimal=True, name=pid,
    )
    return Preset(
        pid, description, fam, printed, printed_frame,
        {"curve_class": curve_class, "surface_class": T, "minimal": True}, note,
    )


def _helicoid1():
    curve = ParamCurve(
        lambda u: _vec(4 / 9 * cos(3 * u), 4 / 9 * sin(3 * u), 5 / 3 * u),
        (0.0, 2 * math.pi),
        d1=lambda u: _vec(-4 / 3 * sin(3 * u), 4 / 3 * cos(3 * u), 5 / 3),
        d2=lambda u: _vec(-4 * cos(3 * u), -4 * sin(3 * u), 0),
        d3=lambda u: _vec(12 * sin(3 * u), -12 * cos(3 * u), 0),
        name="helix",
    )
    printed = ClosedFormSurface(
        lambda u, v: _vec((4 / 9 - v) * cos(3 * u), (4 / 9 - v) * sin(3 * u), 5 / 3 * u),
        lambda u, v: _vec(-3 * (4 / 9 - v) * sin(3 * u), 3 * (4 / 9 - v) * cos(3 * u), 5 / 3),
        lambda u, v: _vec(-cos(3 * u), -sin(3 * u), 0),
        (0.0, 2 * math.pi),
        (-1.0, 1.0),
    )

    def frame(u):
        return (
            _vec(-4 / 3 * sin(3 * u), 4 / 3 * cos(3 * u), 5 / 3),
            _vec(-4 * cos(3 * u), -4 * sin(3 * u), 0),
            _vec(5 / 3 * sin(3 * u), -5 / 3 * cos(3 * u), -4 / 3),
        )

    return _helicoid(
        "helicoid1", curve, printed, frame, T,
        "helicoid of the 1st kind: timelike helix (4/9 cos 3u, 4/9 sin 3u, 5u/3), y = v",
        "The reference frame has |e2| = 4 and y = v/4; with the unit frame y = v.",
    )


def _helicoid2():
    curve = ParamCurve(
        lambda u: _vec(-5 / 9 * cosh(3 * u), 4 / 3 * u, -5 / 9 * sinh(3 * u)),
        (-1.0, 1.0),
        d1=lambda u: _vec(-5 / 3 * sinh(3 * u), 4 / 3, -5 / 3 * cosh(3 * u)),
        d2=lambda u: _vec(-5 * cosh(3 * u), 0, -5 * sinh(3 * u)),
        d3=lambda u: _vec(-15 * sinh(3 * u), 0, -15 * cosh(3 * u)),
        name="hyperbolic helix",
    )
    printed = ClosedFormSurface(
        lambda u, v: _vec((-5 / 9 - v) * cosh(3 * u), 4 / 3 * u, (-5 / 9 - v) * sinh(3 * u)),
        lambda u, v: _vec(3 * (-5 / 9 - v) * sinh(3 * u), 4 / 3, 3 * (-5 / 9 - v) * cosh(3 * u)),
        lambda u, v: _vec(-cosh(3 * u), 0, -sinh(3 * u)),
        (-1.0, 1.0),
        (-1.0, 1.0),
    )

    def frame(u):
        return (
            _vec(-5 / 3 * sinh(3 * u), 4 / 3, -5 / 3 * cosh(3 * u)),
            _vec(-5 * cosh(3 * u), 0, -5 * sinh(3 * u)),
            _vec(-4 / 3 * sinh(3 * u), 5 / 3, -4 / 3 * cosh(3 * u)),
        )

    return _helicoid(
        "helicoid2", curve, printed, frame, T,
        "helicoid of the 2nd kind: timelike curve (-5/9 cosh 3u, 4u/3, -5/9 sinh 3u), y = v",
        "The reference frame has |e2| = 5 and y = v/5; with the unit frame y = v.",
    )


def _helicoid3():
    curve = ParamCurve(
        lambda u: _vec(-3 / 25 * sinh(5 * u), 4 / 5 * u, -3 / 25 * cosh(5 * u)),
        (-1.0, 1.0),
        d1=lambda u: _vec(-3 / 5 * cosh(5 * u), 4 / 5, -3 / 5 * sinh(5 * u)),
        d2=lambda u: _vec(-3 * sinh(5 * u), 0, -3 * cosh(5 * u)),
        d3=lambda u: _vec(-15 * cosh(5 * u), 0, -15 * sinh(5 * u)),
        name="spacelike hyperbolic helix",
    )
    printed = ClosedFormSurface(
        lambda u, v: _vec((-3 / 25 - v) * sinh(5 * u), 4 / 5 * u, (-3 / 25 - v) * cosh(5 * u)),
        lambda u, v: _vec(5 * (-3 / 25 - v) * cosh(5 * u), 4 / 5, 5 * (-3 / 25 - v) * sinh(5 * u)),
        lambda u, v: _vec(-sinh(5 * u), 0, -cosh(5 * u)),
        (-1.0, 1.0),
        (-1.0, 1.0),
    )

    def frame(u):
        return (
            _vec(-3 / 5 * cosh(5 * u), 4 / 5, -3 / 5 * sinh(5 * u)),
            _vec(-3 * sinh(5 * u), 0, -3 * cosh(5 * u)),
            _vec(-4 / 5 * cosh(5 * u), -3 / 5, -4 / 5 * sinh(5 * u)),
        )

    return _helicoid(
        "helicoid3", curve, printed, frame, S,
        "helicoid of the 3rd kind: spacelike curve (-3/25 sinh 5u, 4u/5, -3/25 cosh 5u), y = v",
        "The reference frame has |e2| = 3 and y = v/3; with the unit frame y = v. "
        "The principal normal is timelike.",
    )


ENNEPER_FRAME = PrintedFrame(
    e1=lambda u: _vec(u, -u * u / 2, -u * u / 2 + 1),
    e2=lambda u: _vec(1, -u, -u),
    e3=lambda u: _vec(-u, -u * u / 2 - 1, -u * u / 2),
    d1=lambda u: _vec(1, -u, -u),
    d2=lambda u: _vec(0, -1, -1),
    d3=lambda u: _vec(-1, -u, -u),
)


def _enneper2():
    curve = ParamCurve(
        lambda u: _vec(u * u / 2, -(u**3) / 6, -(u**3) / 6 + u),
        (-2.0, 2.0),
        d1=lambda u: _vec(u, -u * u / 2, -u * u / 2 + 1),
        d2=lambda u: _vec(1, -u, -u),
        d3=lambda u: _vec(0, -1, -1),
        name="cubic",
    )
    fam = SurfaceFamily(
        curve, _y_is_v(), claimed_curve_class=T, claimed_surface_class=T,
        claimed_minimal=True, frame=ENNEPER_FRAME, name="enneper2",
    )
    printed = ClosedFormSurface(
        lambda u, v: _vec(u * u / 2 + v, -(u**3) / 6 - u * v, -(u**3) / 6 - u * v + u),
        lambda u, v: _vec(u, -u * u / 2 - v, -u * u / 2 - v + 1),
        lambda u, v: _vec(1, -u, -u),
        (-2.0, 2.0),
        (-1.0, 1.0),
    )
    return Preset(
        "enneper2",
        "conjugate Enneper surface of the 2nd kind: (u^2/2, -u^3/6, -u^3/6 + u), y = v",
        fam,
        printed,
        lambda u: (ENNEPER_FRAME.e1(u), ENNEPER_FRAME.e2(u), ENNEPER_FRAME.e3(u)),
        {"curve_class": T, "surface_class": T, "minimal": True},
        "Kept exactly as given, with its reference frame. Under the (+,+,-) metric "
        "<a', a'> = 2u^2 - 1, so the curve is not unit speed and is timelike only for "
        "|u| < 1/sqrt 2; <e1, e2> = 2u and <e3, e3> = 2u^2 + 1, so the frame is not "
        "orthonormal; the surface has eG - 2fF + gE proportional to u, so it is not "
        "minimal. The family reproduces the reference surface because it uses the "
        "reference frame; no corrected variant is offered.",
    )


def _cylinder_family(pid, claims_surface):
    triple = MarchingTriple(zero_field(), zero_field(), field_of_v(IDENTITY), 0.0, (-1.0, 1.0))
    return SurfaceFamily(CIRCLE, triple, claimed_surface_class=claims_surface, name=pid)


def _cylinder_surface():
    return ClosedFormSurface(
        lambda u, v: _vec(cos(u), sin(u), v),
        lambda u, v: _vec(-sin(u), cos(u), 0),
        lambda u, v: _vec(0, 0, 1),
        (0.0, 2 * math.pi),
        (-1.0, 1.0),
    )


def _cylinder():
    return Preset(
        "cylinder",
        "control: timelike cylinder (cos u, sin u, v), |H| = 1/2",
        _cylinder_family("cylinder", T),
        _cylinder_surface(),
        _circle_frame,
        {"surface_class": T, "minimal": False},
        "Curvature calibration fixture. The circle is not asymptotic on it, so the "
        "asymptotic checks fail by construction.",
    )


def _negcontrol():
    return Preset(
        "negcontrol",
        "control: circle with z = v, violating dz/dv(u, v0) = 0",
        _cylinder_family("negcontrol", None),
        _cylinder_surface(),
        _circle_frame,
        {},
        "Negative control: <dn/du, e1> = -kappa dz/dv = -1 along the whole circle.",
    )


_BUILDERS = {
    "ex3_1": _ex3_1,
    "ex4_1": _ex4_1,
    "ex4_2": _ex4_2,
    "helicoid1": _helicoid1,
    "helicoid2": _helicoid2,
    "helicoid3": _helicoid3,
    "enneper2": _enneper2,
    "cylinder": _cylinder,
    "negcontrol": _negcontrol,
}

ALIASES = {"ex4_3": "helicoid1", "ex4_4": "helicoid2", "ex4_5": "helicoid3", "ex4_6": "enneper2"}

#: Presets whose family is expected to pass every gating check.
PASSING = ("ex3_1", "ex4_1", "ex4_2", "helicoid1", "helicoid2", "helicoid3")


def list_presets():
    """``(id, description)`` pairs in a fixed order."""
    return [(pid, get_preset(pid).description) for pid in _BUILDERS]


def get_preset(pid) -> Preset:
    key = ALIASES.get(pid, pid)
    try:
        builder = _BUILDERS[key]
    except KeyError:
        raise UnknownPreset(f"unknown preset {pid!r}; known: {', '.join(_BUILDERS)}") from None
    return builder()
