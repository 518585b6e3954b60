"""Command-line front end: ``isoasym {list,info,verify,mesh,sweep}``.

Exit codes: 0 on success, 1 when ``verify`` finds a failed gating check,
2 on usage, parse, lookup or I/O errors.
"""
from __future__ import annotations

import argparse
import csv
import os
import re
import sys
from dataclasses import replace

from . import __version__
from .config import build_family, load_config, parse_grid
from .errors import IsoasymError, ParseError, UnknownPreset
from .io_export import report_to_json, tessellate, write_obj
from .presets import get_preset, list_presets
from .verify import ToleranceSet, verify_family, verify_preset

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class CliError(Exception):
    """Reported on stderr with exit code 2."""


def _grid_arg(text):
    try:
        return parse_grid(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_float(text):
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not x >= 0:
        raise argparse.ArgumentTypeError("tolerance must be >= 0")
    return x


def _looks_like_path(target):
    return target.endswith(".json") or os.sep in target or os.path.exists(target)


def resolve(target):
    """``(kind, object, config_or_None)`` for a preset id or a config path."""
    if _looks_like_path(target):
        try:
            cfg = load_config(target)
        except OSError as exc:
            raise CliError(f"cannot read {target}: {exc.strerror or exc}") from None
        except ParseError as exc:
            raise CliError(f"{target}: {exc}") from None
        return "config", build_family(cfg), cfg
    try:
        return "preset", get_preset(target), None
    except UnknownPreset as exc:
        raise CliError(str(exc.args[0]) if exc.args else f"unknown preset {target!r}") from None


def _fmt(x):
    return "-" if x is None else f"{x:.3e}"


def _where(loc):
    if not loc:
        return ""
    return "(" + ", ".join(f"{t:.6g}" if t is not None else "-" for t in loc) + ")"


def print_report(r, out=None):
    out = out or sys.stdout
    print(f"family: {r.family_id}", file=out)
    print(f"{'check':<28} {'status':<6} {'max residual':>13} {'tolerance':>10}  worst (u, v)", file=out)
    for c in r.checks:
        status = "PASS" if c.passed else ("WARN" if c.advisory else "FAIL")
        print(f"{c.name:<28} {status:<6} {_fmt(c.max_residual):>13} {_fmt(c.tolerance):>10}  {_where(c.worst_location)}",
              file=out)
    for d in r.discrepancies:
        print(f"warning: {d}", file=out)
    print(f"overall: {'PASS' if r.overall else 'FAIL'}", file=out)


def _tolerances(args, base):
    kw = {}
    if args.tol_exact is not None:
        kw["exact"] = args.tol_exact
    if args.tol_fd is not None:
        kw["fd"] = args.tol_fd
    return replace(base, **kw)


def _write(path, data):
    mode = "wb" if isinstance(data, bytes) else "w"
    try:
        with open(path, mode) as fh:
            fh.write(data)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror or exc}") from None


def cmd_list(args):
    rows = list_presets()
    width = max(len(pid) for pid, _ in rows)
    for pid, desc in rows:
        print(f"{pid:<{width}}  {desc}")
    return EXIT_OK


def cmd_info(args):
    kind, obj, cfg = resolve(args.target)
    fam = obj.family if kind == "preset" else obj
    if kind == "preset":
        print(f"id:          {obj.id}")
        print(f"description: {obj.description}")
    else:
        print(f"id:          {cfg.id} (config {args.target})")
    print(f"curve:       {fam.curve.name}, domain {fam.curve.domain}")
    print(f"u-domain:    {fam.u_domain}")
    print(f"v-domain:    {fam.v_domain}")
    print(f"v0:          {fam.v0:.17g}")
    claims = []
    if fam.claimed_curve_class is not None:
        claims.append(f"curve {fam.claimed_curve_class.value}")
    if fam.claimed_surface_class is not None:
        claims.append(f"surface {fam.claimed_surface_class.value}")
    if fam.claimed_minimal:
        claims.append("minimal")
    print(f"claims:      {', '.join(claims) or 'none'}")
    if kind == "preset" and obj.notes:
        print(f"notes:       {obj.notes}")
    return EXIT_OK


def _verify(kind, obj, cfg, grid, tols):
    if kind == "preset":
        return verify_preset(obj, grid, tols)
    return verify_family(obj, grid, tols, family_id=cfg.id)


def cmd_verify(args):
    kind, obj, cfg = resolve(args.target)
    grid = args.grid or (cfg.grid if cfg else (50, 50))
    tols = _tolerances(args, cfg.tolerances if cfg else ToleranceSet())
    report = _verify(kind, obj, cfg, grid, tols)
    print_report(report)
    if args.json:
        _write(args.json, report_to_json(report))
    return EXIT_OK if report.overall else EXIT_FAIL


def cmd_mesh(args):
    kind, obj, cfg = resolve(args.target)
    fam = obj.family if kind == "preset" else obj
    nu, nv = args.grid or (cfg.grid if cfg else (50, 50))
    try:
        mesh = tessellate(fam, nu, nv)
    except IsoasymError as exc:
        raise CliError(str(exc)) from None
    _write(args.out, write_obj(mesh))
    print(f"wrote {args.out}: {len(mesh.vertices)} vertices, {len(mesh.faces)} faces")
    return EXIT_OK


_PARAM = re.compile(r"^a([123]),?([1-9][0-9]*)$")


def cmd_sweep(args):
    kind, _, cfg = resolve(args.config)
    if kind != "config":
        raise CliError("sweep needs a config file")
    m = _PARAM.match(args.param.replace(" ", ""))
    if m is None:
        raise CliError(f"bad --param {args.param!r}: expected a<row>,<index> such as a3,1")
    row, index = int(m.group(1)), int(m.group(2))
    if f"a{row}{index}" not in cfg.coefficient_names():
        raise CliError(f"unknown coefficient a{row}{index} in {args.config}")
    texts = [t.strip() for t in args.values.split(",") if t.strip()]
    if not texts:
        raise CliError("--values is empty")
    try:
        values = [float(t) for t in texts]
    except ValueError:
        raise CliError(f"bad --values {args.values!r}") from None

    os.makedirs(args.out, exist_ok=True)
    grid = args.grid or cfg.grid
    summary = []
    for text, value in zip(texts, values):
        stem = f"{cfg.id}_a{row}{index}_{text}"
        variant = cfg.with_coefficient(row, index, value)
        try:
            fam = build_family(variant)
        except ValueError as exc:
            raise CliError(f"{stem}: {exc}") from None
        report = verify_family(fam, grid, cfg.tolerances, family_id=stem)
        _write(os.path.join(args.out, stem + ".json"), report_to_json(report))
        try:
            mesh = write_obj(tessellate(fam, *grid))
        except IsoasymError as exc:
            raise CliError(f"{stem}: {exc}") from None
        _write(os.path.join(args.out, stem + ".obj"), mesh)
        asym = report.check("asymptotic_residual")
        summary.append((text, asym.max_residual, asym.passed, report.overall))
        print(f"a{row}{index} = {text}: asymptotic residual {asym.max_residual:.3e} "
              f"{'PASS' if asym.passed else 'FAIL'}, overall {'PASS' if report.overall else 'FAIL'}")

    path = os.path.join(args.out, "summary.csv")
    try:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["value", "max_asymptotic_residual", "asymptotic_passed", "overall"])
            for text, res, ok, overall in summary:
                w.writerow([text, repr(float(res)), ok, overall])
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror or exc}") from None
    print(f"wrote {path}")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="isoasym", description="Surface families through a common isoasymptotic curve.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list presets").set_defaults(func=cmd_list)

    q = sub.add_parser("info", help="describe a preset or config")
    q.add_argument("target", help="preset id or config path")
    q.set_defaults(func=cmd_info)

    q = sub.add_parser("verify", help="run every check and print a table")
    q.add_argument("target", help="preset id or config path")
    q.add_argument("--grid", type=_grid_arg, metavar="NUxNV")
    q.add_argument("--tol-exact", type=_positive_float, metavar="TOL")
    q.add_argument("--tol-fd", type=_positive_float, metavar="TOL")
    q.add_argument("--json", metavar="PATH", help="also write the report as JSON")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("mesh", help="write an OBJ mesh")
    q.add_argument("target", help="preset id or config path")
    q.add_argument("--grid", type=_grid_arg, metavar="NUxNV")
    q.add_argument("--out", required=True, metavar="PATH")
    q.set_defaults(func=cmd_mesh)

    q = sub.add_parser("sweep", help="vary one series coefficient")
    q.add_argument("config", help="config path with a type1 or type2 marching spec")
    q.add_argument("--param", required=True, metavar="aR,I", help="coefficient, e.g. a3,1 for a31")
    q.add_argument("--values", required=True, metavar="V1,V2,...")
    q.add_argument("--grid", type=_grid_arg, metavar="NUxNV")
    q.add_argument("--out", required=True, metavar="DIR")
    q.set_defaults(func=cmd_sweep)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"isoasym: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
