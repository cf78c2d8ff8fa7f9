"""Little-Bloch limits of the cusp and log-power eigenfunctions.

The cusp functions f_s have (1-|z_n|^2)|f_s'(z_n)| equal to -2 s x0 e^{s x0}
along the vertical sequence, so they are not in the little Bloch space; the
log-power functions f_t have the radial limit 2|t|.
"""

import argparse
import math

from autospec.numerics import LogPower, little_bloch_radial_limit, little_bloch_sequence_limit


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--s", type=float, nargs="+", default=[0.5, 1.0, 2.0, 5.0])
    ap.add_argument("--x0", type=float, nargs="+", default=[-0.25, -0.5, -1.0, -2.0])
    ap.add_argument("--t", type=float, nargs="+", default=[-2.0, -0.5, 0.5, 1.0, 3.0])
    args = ap.parse_args()

    print(f"{'s':>6}{'x0':>8}{'limit':>14}{'-2 s x0 e^(s x0)':>20}")
    for s in args.s:
        for x0 in args.x0:
            val = little_bloch_sequence_limit(s, x0)
            print(f"{s:>6g}{x0:>8g}{val:>14.9f}{-2 * s * x0 * math.exp(s * x0):>20.9f}")
    print()
    print(f"{'t':>6}{'radial limit':>16}{'2|t|':>8}")
    for t in args.t:
        print(f"{t:>6g}{little_bloch_radial_limit(LogPower(t)):>16.9f}{2 * abs(t):>8g}")


if __name__ == "__main__":
    main()
