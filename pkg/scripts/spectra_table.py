"""Bohr-Sommerfeld levels for the three model problems next to their closed forms."""

import argparse

import numpy as np

from bshq.spectrum import bs_levels, coulomb_problem, oscillator_problem, relativistic_kepler_problem


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--levels", type=int, default=8)
    parser.add_argument("--k", type=float, default=-0.5, help="relativistic coupling (attractive, < 0)")
    parser.add_argument("--ell", type=float, default=1.0)
    args = parser.parse_args()
    ms = np.arange(1, args.levels + 1)

    rows = {
        "oscillator": (bs_levels(oscillator_problem(), ms).energies, ms.astype(float)),
        "coulomb": (
            bs_levels(coulomb_problem(1.0, args.ell), ms).energies,
            -1.0 / (2 * (ms + args.ell) ** 2),
        ),
    }
    alpha = -args.k
    rows["relativistic-kepler"] = (
        bs_levels(relativistic_kepler_problem(args.k, args.ell), ms).energies,
        1 / np.sqrt(1 + alpha**2 / (ms + np.sqrt(args.ell**2 - alpha**2)) ** 2),
    )
    for name, (got, ref) in rows.items():
        print(name)
        for m, e, r in zip(ms, got, ref):
            print(f"  m={m:3d}  E={e:.15f}  closed={r:.15f}  rel.err={abs(e / r - 1):.1e}")


if __name__ == "__main__":
    main()
