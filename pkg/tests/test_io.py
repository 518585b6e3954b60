import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isoasym.errors import ParseError
from isoasym.io_export import TriangleMesh, read_obj, report_to_csv, report_to_json, tessellate, write_obj
from isoasym.presets import get_preset
from isoasym.verify import CheckResult, VerificationReport, verify_preset


def test_single_triangle():
    m = TriangleMesh([[0, 0, 0], [1, 0, 0], [0, 1, 0]], [[0, 1, 2]])
    assert write_obj(m) == b"v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n"


def test_mesh_validation():
    with pytest.raises(ValueError):
        TriangleMesh(np.zeros((3, 3)), [[0, 1, 3]])
    with pytest.raises(ValueError):
        TriangleMesh(np.zeros((3, 3)), [[0, 1, 1]])


@given(st.integers(2, 7), st.integers(2, 7))
@settings(max_examples=20, deadline=None)
def test_counts(nu, nv):
    m = tessellate(get_preset("cylinder").family, nu, nv)
    assert len(m.vertices) == nu * nv
    assert len(m.faces) == 2 * (nu - 1) * (nv - 1)
    assert len(m.curve_polyline) == nu


def test_small_grids():
    s = get_preset("ex4_1").family
    assert (len(tessellate(s, 2, 2).vertices), len(tessellate(s, 2, 2).faces)) == (4, 2)
    assert (len(tessellate(s, 3, 2).vertices), len(tessellate(s, 3, 2).faces)) == (6, 4)
    obj = write_obj(tessellate(s, 2, 2)).decode()
    assert sum(line.startswith("v ") for line in obj.splitlines()) == 4
    assert sum(line.startswith("f ") for line in obj.splitlines()) == 2


def test_grid_convention():
    s = get_preset("helicoid1").family
    m = tessellate(s, 50, 50)
    assert len(m.vertices) == 2500
    np.testing.assert_allclose(m.vertices[0], s.point(0.0, -1.0), atol=1e-12)
    # polyline lies on the curve
    for k, i in enumerate(m.curve_polyline[:5]):
        u = np.linspace(*s.u_domain, 50)[k]
        v = m.vertices[i]
        assert abs(np.linalg.norm(v - s.curve.position(u))) < 0.05


def test_round_trip_fixed_point():
    data = write_obj(tessellate(get_preset("helicoid3").family, 9, 5))
    again = write_obj(read_obj(data))
    assert again == data


def test_read_obj_rejects_garbage():
    with pytest.raises(ParseError):
        read_obj("v 1 2\n")


def test_write_to_path(tmp_path):
    m = tessellate(get_preset("cylinder").family, 3, 3)
    p = tmp_path / "c.obj"
    write_obj(m, p)
    assert p.read_bytes() == write_obj(m)
    with pytest.raises(OSError):
        write_obj(m, tmp_path / "missing" / "c.obj")


def test_report_json_schema():
    r = verify_preset(get_preset("helicoid1"), grid=(12, 8))
    doc = json.loads(report_to_json(r))
    assert set(doc) == {"family_id", "checks", "overall", "discrepancies"}
    asym = next(c for c in doc["checks"] if c["name"] == "asymptotic_residual")
    assert asym["passed"] is True
    assert set(asym) >= {"name", "max_residual", "tolerance", "passed", "sample_count", "worst_u", "worst_v"}


def test_non_finite_becomes_null():
    r = VerificationReport("x", [CheckResult("c", float("inf"), 1e-9, False, 3, (float("nan"), 0.5))], False)
    doc = json.loads(report_to_json(r))
    assert doc["checks"][0]["max_residual"] is None
    assert doc["checks"][0]["worst_u"] is None and doc["checks"][0]["worst_v"] == 0.5


def test_csv_columns():
    r = VerificationReport("x", [CheckResult("c", 0.25, 1e-9, False, 3, (0.1, 0.2))], False)
    lines = report_to_csv(r).splitlines()
    assert lines[0] == "name,max_residual,tolerance,passed,sample_count,worst_u,worst_v,advisory"
    assert lines[1] == "c,0.25,1e-09,False,3,0.1,0.2,False"
