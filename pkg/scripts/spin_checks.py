"""Residuals of the so(3) identities and the homomorphism check for a range of spins."""

import argparse

from bshq.grouprep import verify_homomorphism
from bshq.spin import build_spin_matrices, verify_so3


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--s-max", type=int, default=10)
    parser.add_argument("--samples", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    print("  s   so3 residual   homomorphism   unitarity")
    for s in range(args.s_max + 1):
        rep = build_spin_matrices(s)
        alg = verify_so3(rep)
        grp = verify_homomorphism(rep, args.samples, seed=args.seed)
        print(
            f"{s:3d}   {alg.max_residual:12.2e}   {grp.details['homomorphism']:12.2e}"
            f"   {grp.details['unitarity']:9.2e}"
        )


if __name__ == "__main__":
    main()
