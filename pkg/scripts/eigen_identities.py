"""Eigen-identity residuals for random conjugates of each normal form.

For each kind a random symbol phi = tau^{-1} psi tau is built, its normal form
recovered, and the eigenfunction f o tau checked against phi on the grid.
"""

import argparse

import numpy as np

from autospec.mobius import conjugate_by, inverse, make_automorphism, rotation
from autospec.normalform import PSI1, PSI2, normal_form, psi_r
from autospec.numerics import ExpCusp, GridSchedule, LogPower, Monomial, predicted_eigenvalue


def random_map(rng, radius=0.9):
    a = rng.uniform(0, radius) * np.exp(2j * np.pi * rng.uniform())
    return make_automorphism(np.exp(2j * np.pi * rng.uniform()), a)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--depth", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    z = GridSchedule(depth=args.depth).points()
    cases = {
        "elliptic": (lambda: rotation(np.exp(2j * np.pi * rng.uniform())), lambda: Monomial(rng.integers(1, 10))),
        "parabolic+": (lambda: PSI1, lambda: ExpCusp(rng.uniform(0, 10))),
        "parabolic-": (lambda: PSI2, lambda: ExpCusp(rng.uniform(0, 10))),
        "hyperbolic": (lambda: psi_r(rng.uniform(0.05, 0.95)), lambda: LogPower(rng.uniform(-3, 3))),
    }
    print(f"{'kind':<12}{'worst residual':>16}{'worst | |mu|-1 |':>20}")
    for name, (base, family) in cases.items():
        worst = worst_mod = 0.0
        for _ in range(args.trials):
            phi = conjugate_by(base(), inverse(random_map(rng)))
            nf = normal_form(phi)
            f = family()
            mu = predicted_eigenvalue(nf, f)
            tau = nf.conjugator
            res = np.max(np.abs(f(tau(phi(z))) - mu * f(tau(z))))
            worst, worst_mod = max(worst, res), max(worst_mod, abs(abs(mu) - 1))
        print(f"{name:<12}{worst:>16.3e}{worst_mod:>20.3e}")


if __name__ == "__main__":
    main()
