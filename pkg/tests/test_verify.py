import numpy as np
import pytest

from isoasym.functions import ONE, SIN, ZERO, Fn
from isoasym.marching import Type1Spec, Type2Spec
from isoasym.presets import PASSING, get_preset
from isoasym.verify import ToleranceSet, verify_conditions_only, verify_family, verify_preset

GATING = ["unit_speed", "frame_orthonormality", "frame_structure_equations", "isoparametric",
          "dz_dv_at_v0", "asymptotic_residual", "asymptotic_reduced_form", "regularity"]


@pytest.fixture(scope="module")
def reports():
    return {pid: verify_preset(get_preset(pid), grid=(20, 12)) for pid in
            list(PASSING) + ["enneper2", "cylinder", "negcontrol"]}


def test_check_order(reports):
    names = [c.name for c in reports["helicoid1"].checks]
    assert names[: len(GATING)] == GATING


@pytest.mark.parametrize("pid", PASSING)
def test_passing_presets(reports, pid):
    r = reports[pid]
    assert r.overall, [c for c in r.failed(advisory=False)]


def test_negcontrol_fails_asymptotic(reports):
    r = reports["negcontrol"]
    assert not r.overall
    c = r.check("asymptotic_residual")
    assert not c.passed and c.max_residual == pytest.approx(1.0, abs=1e-3)
    assert not r.check("dz_dv_at_v0").passed


def test_cylinder_not_asymptotic(reports):
    assert not reports["cylinder"].overall


def test_enneper_discrepancies(reports):
    r = reports["enneper2"]
    assert not r.overall
    assert not r.check("unit_speed").passed
    assert not r.check("frame_orthonormality").passed
    assert not r.check("minimality_numerator").passed
    assert r.discrepancies


def test_advisory_does_not_gate(reports):
    r = reports["helicoid1"]
    assert r.overall
    assert not r.check("surface_causal_character").passed
    assert r.check("surface_causal_character").advisory


def test_helicoids_minimal(reports):
    for pid in ("helicoid1", "helicoid2", "helicoid3"):
        assert reports[pid].check("minimality_numerator").passed


def test_tighter_tolerance_fails():
    r = verify_family(get_preset("helicoid2").family, grid=(10, 5), tols=ToleranceSet(fd=1e-30))
    assert not r.check("asymptotic_residual").passed
    assert not r.check("frame_structure_equations").passed


def test_conditions_only():
    v = Fn(lambda t: t, lambda t: 1.0, name="v")
    ok = Type1Spec(p=1, a1=[1], a2=[1], a3=[0], l=ONE, m=ONE, n=ONE, X=SIN, Y=SIN, Z=v, v0=0.0)
    bad = Type1Spec(p=1, a1=[1], a2=[1], a3=[1], l=ONE, m=ONE, n=ONE, X=SIN, Y=SIN, Z=v, v0=0.0)
    us = np.linspace(0, 1, 16)
    out = {c.name: c for c in verify_conditions_only(ok, us)}
    assert out["type1_conditions"].passed and out["theorem_conditions"].passed
    out = {c.name: c for c in verify_conditions_only(bad, us)}
    assert not out["type1_conditions"].passed and not out["theorem_conditions"].passed
    assert out["type1_conditions"].max_residual == 1.0
    t2 = Type2Spec(p=1, a1=[1], a2=[1], a3=[1], l=ONE, m=ONE, n=ZERO, X=SIN, Y=SIN, Z=v, v0=0.0, h=SIN)
    assert all(c.passed for c in verify_conditions_only(t2, us))
