"""Finite-section spectral-radius estimates for psi_r on H^2 against the closed form.

Prints ||M^n||^(1/n) for several truncation sizes N and power counts n next to
the Hardy spectral radius sqrt((1+r)/(1-r)).  The estimate starts at the norm
of the compression and then drifts towards the spectral radius of the finite
matrix, which is 1, so large n is not a good proxy at fixed N.
"""

import argparse

import numpy as np

from autospec.mobius import classify
from autospec.normalform import psi_r
from autospec.numerics import spectral_radius_estimate, truncated_matrix, truncation_eigenvalues
from autospec.spectra import hardy_spectral_radius


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r", type=float, nargs="+", default=[0.25, 0.5, 0.75])
    ap.add_argument("--N", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("--powers", type=int, nargs="+", default=[1, 4, 16, 64])
    args = ap.parse_args()

    n_max = max(args.powers)
    for r in args.r:
        exact = hardy_spectral_radius(classify(psi_r(r)), 2)
        print(f"r = {r:g}: closed-form radius {exact:.6f}")
        print("      N  " + "  ".join(f"n={n:<6d}" for n in args.powers) + "  max|eig|")
        for N in args.N:
            T = truncated_matrix(psi_r(r), N)
            seq = spectral_radius_estimate(T, n_max).sequence
            eig = np.max(np.abs(truncation_eigenvalues(T))) if N < 512 else float("nan")
            row = "  ".join(f"{seq[n - 1]:.6f}" for n in args.powers)
            print(f"  {N:5d}  {row}  {eig:.6f}")
        print()


if __name__ == "__main__":
    main()
