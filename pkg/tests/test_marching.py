import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isoasym.functions import COS, IDENTITY, ONE, SIN, SINH, ZERO, Fn, affine, const
from isoasym.marching import (
    MarchingTriple,
    Type1Spec,
    Type2Spec,
    check_theorem_conditions,
    check_type1_conditions,
    check_type2_conditions,
    to_triple,
    triple_from_type1,
    triple_from_type2,
)

US = np.linspace(-1, 1, 64)
Z_V = Fn(lambda v: v, lambda v: 1.0 + 0 * v, name="v")


def spec1(**kw):
    base = dict(p=2, a1=[1, 1], a2=[1, 1], a3=[1, 1], l=ONE, m=ONE, n=ONE, X=SIN, Y=SIN, Z=SIN, v0=0.0)
    base.update(kw)
    return Type1Spec(**base)


def test_series_values():
    t = triple_from_type1(spec1(a2=[2, 3], m=const(0.5)))
    v = 0.4
    s = 0.5 * math.sin(v)
    assert t.y(0.1, v) == pytest.approx(2 * s + 3 * s * s)


def test_z_row_uses_n():
    t = triple_from_type1(spec1(n=ZERO))
    assert t.z(0.3, 0.5) == 0.0
    assert t.x(0.3, 0.5) != 0.0


def test_conditions_branches():
    assert not check_type1_conditions(spec1(), US)
    assert check_type1_conditions(spec1(a3=[0, 1]), US).branches == ("a31",)
    assert check_type1_conditions(spec1(n=ZERO), US).branches == ("n",)
    r = check_type1_conditions(spec1(Z=affine(1.0, -1.0, COS)), US)
    assert r.passed and r.branches == ("dZ",)


def test_conditions_need_zeros():
    r = check_type1_conditions(spec1(X=COS, a3=[0, 1]), US)
    assert not r.passed
    assert r.residuals["X(v0)"][0] == pytest.approx(1.0)


def test_type2_extra_branch():
    s = Type2Spec(p=1, a1=[1], a2=[1], a3=[1], l=ONE, m=ONE, n=ONE, X=SIN, Y=SIN, Z=SIN,
                  h=Fn(lambda t: t * t, lambda t: 2 * t), v0=0.0)
    r = check_type2_conditions(s, US)
    assert r.passed and r.branches == ("h_prime",)
    assert check_theorem_conditions(triple_from_type2(s), US)


def test_type2_wrapper_zero():
    s = Type2Spec(p=1, a1=[1], a2=[1], a3=[0], l=ONE, m=ONE, n=ONE, X=SIN, Y=SIN, Z=SIN,
                  f=affine(1.0, 1.0, SIN), v0=0.0)
    r = check_type2_conditions(s, US)
    assert not r.passed and r.residuals["f(0)"][0] == 1.0


def test_identity_wrappers_match_type1():
    kw = dict(p=3, a1=[0.2, 0.1, 0.3], a2=[1, 2, 3], a3=[0.5, 0, 1], l=COS, m=ONE, n=SIN,
              X=SIN, Y=SINH, Z=IDENTITY, v0=0.0)
    t1, t2 = triple_from_type1(Type1Spec(**kw)), triple_from_type2(Type2Spec(**kw))
    for u, v in [(0.1, 0.2), (-0.7, 0.9)]:
        np.testing.assert_array_equal(t1.values(u, v), t2.values(u, v))
        np.testing.assert_array_equal(t1.partials_v(u, v), t2.partials_v(u, v))


def test_theorem_conditions_detects_dz():
    t = to_triple(spec1(a3=[1, 0], Z=Z_V, X=SIN, Y=SIN))
    r = check_theorem_conditions(t, US)
    assert not r.passed and r.residuals["dz_dv"][0] == pytest.approx(1.0)


def test_v0_outside_domain():
    with pytest.raises(ValueError):
        MarchingTriple(*to_triple(spec1()).fields, v0=2.0, v_domain=(-1, 1))


def test_coefficient_count():
    with pytest.raises(ValueError):
        spec1(a1=[1])


@given(
    st.lists(st.floats(-1, 1), min_size=3, max_size=3),
    st.floats(0.2, 1),
    st.floats(-0.9, 0.9),
    st.floats(-0.9, 0.9),
)
@settings(max_examples=60, deadline=None)
def test_analytic_partials_match_differences(a3, c, u, v):
    s = Type2Spec(p=3, a1=[0, 0, 0], a2=[0, 0, 0], a3=a3, l=ONE, m=ONE, n=affine(c, 0.0, COS),
                  X=SIN, Y=SIN, Z=SINH, h=SIN, v0=0.0)
    z = triple_from_type2(s).z
    h = 1e-4
    fd = (z(u, v + h) - z(u, v - h)) / (2 * h)
    assert z.partial_v(u, v) == pytest.approx(fd, abs=1e-6)
    fd = (z(u + h, v) - z(u - h, v)) / (2 * h)
    assert z.partial_u(u, v) == pytest.approx(fd, abs=1e-6)
