"""JSON family configs built from the closed expression vocabulary.

A config is one JSON object::

    {
      "id": "my_family",
      "preset": "ex4_1",                      # optional: start from a preset
      "curve": {"position": ["cos(u)", "sin(u)", "0"], "domain": [0, "2*pi"]},
      "marching": {"form": "type1", "p": 1, "a1": [0], "a2": [1], "a3": [0],
                   "l": "1", "m": "1", "n": "1", "X": "v", "Y": "v", "Z": "v"},
      "v0": 0,
      "u_domain": [0, "2*pi"], "v_domain": [-1, 1],
      "grid": [50, 50],
      "tolerances": {"exact": 1e-9, "fd": 1e-5},
      "claims": {"curve": "spacelike", "surface": "timelike", "minimal": false}
    }

``curve`` may instead be ``{"preset": "<id>"}`` to borrow a preset's curve.
When ``preset`` is given, ``curve`` and ``marching`` may be omitted and the
preset's own family is used. Marching forms:

* ``free``: ``x``, ``y``, ``z`` as expressions in ``u`` and ``v``
* ``type1``: ``p``, ``a1 a2 a3`` (lists of length ``p``), ``l m n`` in ``u``,
  ``X Y Z`` in ``v``
* ``type2``: as ``type1`` plus wrappers ``f g h`` in ``t`` (default ``t``)

Numbers may be written as constant expressions such as ``"3*pi/2"``.
"""
from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import expr
from .curve import ParamCurve
from .errors import ParseError, UnknownPreset
from .marching import MarchingTriple, ScalarField2, Type1Spec, Type2Spec
from .mlinalg import CausalClass
from .presets import get_preset
from .surface import SurfaceFamily
from .verify import ToleranceSet

TOP_KEYS = {"id", "preset", "curve", "marching", "v0", "u_domain", "v_domain", "grid", "tolerances", "claims"}
SERIES_KEYS = {"p", "a1", "a2", "a3", "l", "m", "n", "X", "Y", "Z"}
FORM_KEYS = {
    "free": {"x", "y", "z"},
    "type1": SERIES_KEYS,
    "type2": SERIES_KEYS | {"f", "g", "h"},
}
DEFAULT_GRID = (50, 50)


@dataclass
class FamilyConfig:
    """A parsed config. ``text`` is kept so later errors can point into it."""

    id: str
    preset: Optional[str] = None
    curve: Optional[dict] = None
    marching: Optional[dict] = None
    v0: Optional[float] = None
    u_domain: Optional[tuple] = None
    v_domain: Optional[tuple] = None
    grid: tuple = DEFAULT_GRID
    tolerances: ToleranceSet = field(default_factory=ToleranceSet)
    claims: dict = field(default_factory=dict)
    text: str = field(default="", repr=False)

    def coefficient_names(self):
        """Names accepted by :meth:`with_coefficient`, e.g. ``a31``."""
        m = self.marching or {}
        if m.get("form") not in ("type1", "type2"):
            return []
        return [f"a{r}{i + 1}" for r in (1, 2, 3) for i in range(len(m[f"a{r}"]))]

    def with_coefficient(self, row, index, value):
        """Copy with ``a<row>[index]`` (1-based index) replaced.

        Raises:
            KeyError: the coefficient does not exist in this config.
        """
        name = f"a{row}{index}"
        if name not in self.coefficient_names():
            raise KeyError(f"no coefficient {name} in config {self.id!r}")
        m = copy.deepcopy(self.marching)
        m[f"a{row}"][index - 1] = value
        return replace(self, marching=m)


class _Locator:
    """Best-effort mapping from a config value back to a line and column."""

    def __init__(self, text):
        self.text = text

    def find(self, needle):
        i = self.text.find(needle)
        if i < 0:
            return None, None
        line = self.text.count("\n", 0, i) + 1
        col = i - (self.text.rfind("\n", 0, i) + 1) + 1
        return line, col

    def key(self, name):
        return self.find(json.dumps(name))

    def error(self, msg, key=None, token=None):
        line, col = self.key(key) if key is not None else (None, None)
        return ParseError(msg, line, col, token if token is not None else key)

    def expression(self, source, variables):
        """Parse ``source`` and re-anchor any error column inside the JSON text."""
        try:
            return expr.parse(source, variables)
        except ParseError as exc:
            if not isinstance(source, str):
                raise
            line, col = self.find(json.dumps(source))
            if line is not None and exc.column is not None:
                col += exc.column  # skip the opening quote
            raise ParseError(exc.message, line, col, exc.token) from None

    def number(self, value, key):
        if isinstance(value, bool):
            raise self.error(f"{key}: expected a number", key)
        e = self.expression(value, ())
        if not e.is_const():
            raise self.error(f"{key}: expected a constant", key)
        return float(e.value)


def read_config(text) -> FamilyConfig:
    """Parse config text. Raises :class:`ParseError` with line and column."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        token = text[exc.pos] if exc.pos < len(text) else None
        raise ParseError(exc.msg, exc.lineno, exc.colno, token) from None
    loc = _Locator(text)
    if not isinstance(raw, dict):
        raise ParseError("config must be a JSON object", 1, 1)
    unknown = sorted(set(raw) - TOP_KEYS)
    if unknown:
        raise loc.error(f"unknown key {unknown[0]!r}", unknown[0])
    if "id" not in raw or not isinstance(raw["id"], str):
        raise ParseError("config needs a string 'id'", 1, 1, "id")

    preset = raw.get("preset")
    if preset is not None:
        try:
            get_preset(preset)
        except (UnknownPreset, TypeError):
            line, col = loc.find(json.dumps(preset))
            raise ParseError(f"unknown preset {preset!r}", line, col, str(preset)) from None
    if preset is None and ("curve" not in raw or "marching" not in raw):
        raise loc.error("config needs 'curve' and 'marching' unless it names a 'preset'", "id")

    cfg = FamilyConfig(id=raw["id"], preset=preset, text=text)
    if "curve" in raw:
        cfg.curve = _check_curve(raw["curve"], loc)
    if "marching" in raw:
        cfg.marching = _check_marching(raw["marching"], loc)
    if "v0" in raw:
        cfg.v0 = loc.number(raw["v0"], "v0")
    for key in ("u_domain", "v_domain"):
        if key in raw:
            setattr(cfg, key, _interval(raw[key], key, loc))
    if "grid" in raw:
        cfg.grid = _grid(raw["grid"], loc)
    if "tolerances" in raw:
        cfg.tolerances = _tolerances(raw["tolerances"], loc)
    if "claims" in raw:
        cfg.claims = _claims(raw["claims"], loc)
    if cfg.marching is not None and preset is None and cfg.v0 is None:
        raise loc.error("config needs 'v0'", "marching")
    # build once so every semantic error surfaces at read time
    try:
        build_family(cfg)
    except ParseError:
        raise
    except ValueError as exc:
        raise loc.error(str(exc), "id", cfg.id) from None
    return cfg


def load_config(path) -> FamilyConfig:
    with open(path, encoding="utf-8") as fh:
        return read_config(fh.read())


def _interval(value, key, loc):
    if not isinstance(value, list) or len(value) != 2:
        raise loc.error(f"{key}: expected [lo, hi]", key)
    lo, hi = (loc.number(x, key) for x in value)
    if not lo < hi:
        raise loc.error(f"{key}: need lo < hi", key)
    return lo, hi


def _grid(value, loc):
    if isinstance(value, str):
        return parse_grid(value, error=lambda msg: loc.error(msg, "grid"))
    if (not isinstance(value, list) or len(value) != 2
            or not all(isinstance(n, int) and not isinstance(n, bool) for n in value)):
        raise loc.error("grid: expected [nu, nv] or \"NUxNV\"", "grid")
    if min(value) < 2:
        raise loc.error("grid: need at least 2 x 2", "grid")
    return tuple(value)


def parse_grid(text, error=ValueError):
    """``"50x40"`` -> ``(50, 40)``."""
    parts = text.lower().split("x")
    if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
        raise error(f"grid {text!r}: expected NUxNV")
    nu, nv = (int(p) for p in parts)
    if min(nu, nv) < 2:
        raise error(f"grid {text!r}: need at least 2x2")
    return nu, nv


def _tolerances(value, loc):
    if not isinstance(value, dict):
        raise loc.error("tolerances: expected an object", "tolerances")
    known = ToleranceSet.__dataclass_fields__
    for k in value:
        if k not in known:
            raise loc.error(f"unknown tolerance {k!r}", k)
    vals = {k: loc.number(v, k) for k, v in value.items()}
    for k, v in vals.items():
        if not v >= 0:
            raise loc.error(f"tolerance {k} must be >= 0", k)
    return ToleranceSet(**vals)


def _claims(value, loc):
    if not isinstance(value, dict):
        raise loc.error("claims: expected an object", "claims")
    out = {}
    for k, v in value.items():
        if k in ("curve", "surface"):
            try:
                out[k] = CausalClass.parse(v)
            except (ValueError, AttributeError):
                line, col = loc.find(json.dumps(v))
                raise ParseError(f"claims.{k}: unknown causal class {v!r}", line, col, str(v)) from None
        elif k == "minimal":
            if not isinstance(v, bool):
                raise loc.error("claims.minimal: expected true or false", k)
            out[k] = v
        else:
            raise loc.error(f"unknown claim {k!r}", k)
    return out


def _check_curve(value, loc):
    if not isinstance(value, dict):
        raise loc.error("curve: expected an object", "curve")
    if "preset" in value:
        extra = sorted(set(value) - {"preset"})
        if extra:
            raise loc.error(f"curve: unexpected key {extra[0]!r} next to 'preset'", extra[0])
        try:
            get_preset(value["preset"])
        except (UnknownPreset, TypeError):
            line, col = loc.find(json.dumps(value["preset"]))
            raise ParseError(f"unknown preset {value['preset']!r}", line, col, str(value["preset"])) from None
        return dict(value)
    extra = sorted(set(value) - {"position", "domain"})
    if extra:
        raise loc.error(f"curve: unknown key {extra[0]!r}", extra[0])
    pos = value.get("position")
    if not isinstance(pos, list) or len(pos) != 3:
        raise loc.error("curve.position: expected three expressions in u", "position" if pos is not None else "curve")
    for p in pos:
        loc.expression(p, ("u",))
    if "domain" not in value:
        raise loc.error("curve: missing 'domain'", "curve")
    return {"position": list(pos), "domain": _interval(value["domain"], "domain", loc)}


def _check_marching(value, loc):
    if not isinstance(value, dict):
        raise loc.error("marching: expected an object", "marching")
    form = value.get("form")
    if form not in FORM_KEYS:
        line, col = loc.find(json.dumps(form)) if form is not None else loc.key("marching")
        raise ParseError(f"marching.form must be one of {', '.join(FORM_KEYS)}", line, col, str(form))
    allowed = FORM_KEYS[form] | {"form"}
    extra = sorted(set(value) - allowed)
    if extra:
        raise loc.error(f"marching ({form}): unknown key {extra[0]!r}", extra[0])
    out = {"form": form}
    if form == "free":
        for k in ("x", "y", "z"):
            if k not in value:
                raise loc.error(f"marching: missing {k!r}", "marching")
            loc.expression(value[k], ("u", "v"))
            out[k] = value[k]
        return out
    if "p" not in value or not isinstance(value["p"], int) or isinstance(value["p"], bool) or value["p"] < 1:
        raise loc.error("marching.p: expected a positive integer", "p" if "p" in value else "marching")
    out["p"] = value["p"]
    for row in ("a1", "a2", "a3"):
        coeffs = value.get(row)
        if not isinstance(coeffs, list) or len(coeffs) != out["p"]:
            raise loc.error(f"marching.{row}: expected {out['p']} coefficients", row if row in value else "marching")
        out[row] = [loc.number(c, row) for c in coeffs]
    for k, var in (("l", "u"), ("m", "u"), ("n", "u"), ("X", "v"), ("Y", "v"), ("Z", "v")):
        if k not in value:
            raise loc.error(f"marching: missing {k!r}", "marching")
        loc.expression(value[k], (var,))
        out[k] = value[k]
    if form == "type2":
        for k in ("f", "g", "h"):
            out[k] = value.get(k, "t")
            loc.expression(out[k], ("t",))
    return out


def _curve_from_exprs(position, domain, name="curve"):
    exprs = [expr.parse(p, ("u",)) for p in position]
    orders = [exprs]
    for _ in range(3):
        orders.append([e.diff("u") for e in orders[-1]])

    def vector(es):
        return lambda u: np.array([float(e({"u": u})) for e in es])

    return ParamCurve(vector(orders[0]), domain, *(vector(o) for o in orders[1:]), name=name)


def _field(source):
    e = expr.parse(source, ("u", "v"))
    du, dv = e.diff("u"), e.diff("v")
    return ScalarField2(
        lambda u, v: float(e({"u": u, "v": v})),
        lambda u, v: float(du({"u": u, "v": v})),
        lambda u, v: float(dv({"u": u, "v": v})),
        name=str(source),
    )


def marching_spec(m, v0, v_domain):
    """Build a :class:`MarchingTriple`, :class:`Type1Spec` or :class:`Type2Spec`."""
    if m["form"] == "free":
        return MarchingTriple(_field(m["x"]), _field(m["y"]), _field(m["z"]), v0, v_domain)

    def fn(k, var):
        return expr.to_fn(expr.parse(m[k], (var,)), var, name=str(m[k]))

    kw = dict(
        p=m["p"], a1=m["a1"], a2=m["a2"], a3=m["a3"],
        l=fn("l", "u"), m=fn("m", "u"), n=fn("n", "u"),
        X=fn("X", "v"), Y=fn("Y", "v"), Z=fn("Z", "v"),
        v0=v0, v_domain=v_domain,
    )
    if m["form"] == "type2":
        return Type2Spec(**kw, f=fn("f", "t"), g=fn("g", "t"), h=fn("h", "t"))
    return Type1Spec(**kw)


def build_family(cfg: FamilyConfig) -> SurfaceFamily:
    """Turn a config into a :class:`SurfaceFamily`."""
    base = get_preset(cfg.preset).family if cfg.preset else None
    claims = cfg.claims

    if cfg.curve is None:
        curve = base.curve
    elif "preset" in cfg.curve:
        curve = get_preset(cfg.curve["preset"]).family.curve
    else:
        curve = _curve_from_exprs(cfg.curve["position"], cfg.curve["domain"], name=cfg.id)

    if cfg.marching is None:
        triple = base.triple
        if cfg.v0 is not None and cfg.v0 != triple.v0:
            raise ValueError("v0 can only be changed together with 'marching'")
    else:
        v0 = cfg.v0 if cfg.v0 is not None else base.v0
        v_domain = cfg.v_domain or (base.v_domain if base else (v0 - 1.0, v0 + 1.0))
        triple = marching_spec(cfg.marching, v0, v_domain)

    frame = base.frame if base is not None and cfg.curve is None else None
    u_domain = cfg.u_domain or (base.u_domain if base is not None and cfg.curve is None else None)
    return SurfaceFamily(
        curve,
        triple,
        u_domain=u_domain,
        v_domain=cfg.v_domain or (base.v_domain if base is not None and cfg.marching is None else None),
        claimed_surface_class=claims.get("surface", base.claimed_surface_class if base else None),
        claimed_curve_class=claims.get("curve", base.claimed_curve_class if base else None),
        claimed_minimal=claims.get("minimal", base.claimed_minimal if base else False),
        frame=frame,
        name=cfg.id,
    )
