"""Triangle meshes, OBJ files and report serialization.

OBJ coordinates are written in Minkowski order ``(x1, x2, x3)`` with no
remapping. A viewer draws them with a Euclidean metric, which is a
visualization convention only.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import IsoasymError, ParseError
from .surface import evaluate_surface

REPORT_COLUMNS = ("name", "max_residual", "tolerance", "passed", "sample_count", "worst_u", "worst_v", "advisory")


@dataclass
class TriangleMesh:
    """Vertices, 0-based triangles and an optional polyline of vertex indices."""

    vertices: np.ndarray
    faces: np.ndarray
    curve_polyline: Optional[list] = field(default=None)

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float).reshape(-1, 3)
        self.faces = np.asarray(self.faces, dtype=np.int64).reshape(-1, 3)
        n = len(self.vertices)
        if self.faces.size and (self.faces.min() < 0 or self.faces.max() >= n):
            raise ValueError("face index out of range")
        for f in self.faces:
            if len(set(f.tolist())) < 3:
                raise ValueError(f"degenerate face {f.tolist()}")
        if self.curve_polyline is not None:
            self.curve_polyline = [int(i) for i in self.curve_polyline]
            if any(not 0 <= i < n for i in self.curve_polyline):
                raise ValueError("polyline index out of range")


def tessellate(s, nu, nv) -> TriangleMesh:
    """Sample ``s`` on an ``nu x nv`` grid over its parameter rectangle.

    Vertex ``i * nv + j`` is ``phi(u_i, v_j)``. Each grid cell is split along
    the same diagonal into ``(a, b, c)`` and ``(a, c, d)``. The row ``j``
    nearest ``v0`` becomes the curve polyline.
    """
    if nu < 2 or nv < 2:
        raise ValueError("tessellate needs nu, nv >= 2")
    us = np.linspace(*s.u_domain, nu)
    vs = np.linspace(*s.v_domain, nv)
    verts = np.empty((nu * nv, 3))
    for i, u in enumerate(us):
        for j, v in enumerate(vs):
            try:
                verts[i * nv + j] = evaluate_surface(s, float(u), float(v))
            except IsoasymError as exc:
                raise type(exc)(f"at grid ({i}, {j}) = ({u}, {v}): {exc}") from exc
    faces = []
    for i in range(nu - 1):
        for j in range(nv - 1):
            a, b = i * nv + j, (i + 1) * nv + j
            c, d = b + 1, a + 1
            faces += [(a, b, c), (a, c, d)]
    j0 = int(np.argmin(np.abs(vs - s.v0)))
    return TriangleMesh(verts, faces, [i * nv + j0 for i in range(nu)])


def _num(x):
    text = "%.17g" % x
    return "0" if text == "-0" else text


def write_obj(m: TriangleMesh, destination=None) -> bytes:
    """Serialize ``m`` as OBJ. Writes to ``destination`` (path or binary file) if given."""
    lines = [f"v {_num(x)} {_num(y)} {_num(z)}" for x, y, z in m.vertices]
    lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in m.faces]
    if m.curve_polyline:
        lines.append("l " + " ".join(str(i + 1) for i in m.curve_polyline))
    data = ("\n".join(lines) + "\n").encode("ascii")
    if destination is not None:
        if hasattr(destination, "write"):
            destination.write(data)
        else:
            try:
                with open(destination, "wb") as fh:
                    fh.write(data)
            except OSError as exc:
                raise OSError(f"cannot write {destination}: {exc.strerror or exc}") from exc
    return data


def read_obj(data) -> TriangleMesh:
    """Parse the subset of OBJ written by :func:`write_obj` (``v``, ``f``, ``l``)."""
    if isinstance(data, bytes):
        data = data.decode("ascii")
    verts, faces, poly = [], [], None
    for lineno, line in enumerate(data.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        tag, rest = parts[0], parts[1:]
        try:
            if tag == "v" and len(rest) == 3:
                verts.append([float(x) for x in rest])
            elif tag == "f" and len(rest) == 3:
                faces.append([int(x.split("/")[0]) - 1 for x in rest])
            elif tag == "l" and rest:
                poly = [int(x) - 1 for x in rest]
            else:
                raise ValueError
        except ValueError:
            raise ParseError(f"bad OBJ record {line!r}", lineno, 1, tag) from None
    return TriangleMesh(np.array(verts).reshape(-1, 3), np.array(faces, dtype=np.int64).reshape(-1, 3), poly)


def _finite_or_none(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def _check_row(c):
    where = c.worst_location or (None, None)
    return {
        "name": c.name,
        "max_residual": _finite_or_none(c.max_residual),
        "tolerance": _finite_or_none(c.tolerance),
        "passed": bool(c.passed),
        "sample_count": int(c.sample_count),
        "worst_u": _finite_or_none(where[0]),
        "worst_v": _finite_or_none(where[1]),
        "advisory": bool(c.advisory),
    }


def report_to_dict(r) -> dict:
    return {
        "family_id": r.family_id,
        "checks": [_check_row(c) for c in r.checks],
        "overall": bool(r.overall),
        "discrepancies": list(r.discrepancies),
    }


def report_to_json(r) -> str:
    """Deterministic JSON; non-finite numbers become ``null``."""
    return json.dumps(report_to_dict(r), indent=2, allow_nan=False) + "\n"


def report_to_csv(r) -> str:
    """One row per check, columns as in :func:`report_to_json`."""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=REPORT_COLUMNS, lineterminator="\n")
    w.writeheader()
    for c in r.checks:
        row = _check_row(c)
        w.writerow({k: ("" if v is None else repr(v) if isinstance(v, float) else v) for k, v in row.items()})
    return buf.getvalue()
