"""Verify every preset and print a one-line summary per family.

    python demos/verify_presets.py [--grid 30x30]

Families whose attached claims do not hold (enneper2) or that are controls
(cylinder, negcontrol) are expected to show warnings or a failed check.
"""
import argparse

from isoasym import get_preset, list_presets, verify_preset
from isoasym.config import parse_grid


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", type=parse_grid, default=(30, 30))
    args = ap.parse_args()

    for pid, _ in list_presets():
        report = verify_preset(get_preset(pid), grid=args.grid)
        asym = report.check("asymptotic_residual")
        status = "PASS" if report.overall else "FAIL"
        print(f"{pid:<11} {status}  asymptotic residual {asym.max_residual:.2e}  "
              f"warnings {len(report.discrepancies)}")
        for line in report.discrepancies:
            print(f"    {line}")


if __name__ == "__main__":
    main()
