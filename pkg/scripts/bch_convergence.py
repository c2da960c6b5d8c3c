"""Error of the truncated BCH series against log(exp X exp Y) as the generators shrink.

Each extra order should steepen the log-log slope by one.
"""

import argparse

import numpy as np

from bshq.grouprep import bch_truncated, random_rotation_vector, rho
from bshq.opalg import matrix_exp, matrix_log
from bshq.spin import build_spin_matrices


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--s", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--pairs", type=int, default=20)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    rep = build_spin_matrices(args.s)
    base = [(rho(rep, random_rotation_vector(rng)), rho(rep, random_rotation_vector(rng))) for _ in range(args.pairs)]
    scales = np.geomspace(0.4, 0.0125, 6)
    print("norm      " + "  ".join(f"order{k}   " for k in range(1, 5)))
    for eps in scales:
        errs = np.zeros(4)
        for X, Y in base:
            X = X * eps / np.linalg.norm(X)
            Y = Y * eps / np.linalg.norm(Y)
            exact = matrix_log(matrix_exp(X) @ matrix_exp(Y))
            for k in range(1, 5):
                errs[k - 1] = max(errs[k - 1], np.linalg.norm(bch_truncated(X, Y, k) - exact))
        print(f"{eps:8.4f}  " + "  ".join(f"{e:9.2e}" for e in errs))


if __name__ == "__main__":
    main()
