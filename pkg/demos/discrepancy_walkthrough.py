"""Walk through the defects of the enneper2 reference frame.

The preset keeps the reference curve and frame untouched. The curve is not
unit speed, the frame is not orthonormal, and the reference surface is not
minimal. This script prints each of those quantities at a few parameters
so the warnings from ``isoasym verify enneper2`` can be checked by hand.
"""
import numpy as np

from isoasym import get_preset, inner, is_unit_speed, verify_preset
from isoasym.curve import derivative
from isoasym.surface import minimality_numerator


def main():
    p = get_preset("enneper2")
    curve = p.family.curve

    speed = is_unit_speed(curve)
    print(f"unit speed: {speed.ok} (max |<a',a'> - 1| = {speed.residual:.3e})")

    header = ("u", "<a',a'>", "<e1,e2>", "<e1,e3>", "<e3,e3>", "H numer.")
    print(f"{header[0]:>6} " + " ".join(f"{h:>10}" for h in header[1:]))
    for u in np.linspace(-1.5, 1.5, 7):
        d = derivative(curve, u, 1)
        e1, e2, e3 = (np.asarray(x) for x in p.printed_frame(u)[:3])
        h = minimality_numerator(p.printed_surface, u, 0.0)
        print(f"{u:6.2f} {inner(d, d):10.4f} {inner(e1, e2):10.4f} {inner(e1, e3):10.4f} "
              f"{inner(e3, e3):10.4f} {h:10.3e}")

    print()
    for line in verify_preset(p, grid=(20, 20)).discrepancies:
        print("warning:", line)


if __name__ == "__main__":
    main()
