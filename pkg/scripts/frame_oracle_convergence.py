"""Ratio of the frame oracle to the exact norm, pure Monte Carlo versus polished.

    python3 scripts/frame_oracle_convergence.py --trials 20
"""

import argparse

import numpy as np

from spinc_bounds.comass import TwoForm, frame_oracle, norm


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--samples", type=int, nargs="+", default=[100, 1000, 20000])
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'d':>3} {'samples':>8} {'mc worst':>9} {'mc mean':>8} {'polished worst':>15}")
    for d in range(2, 9):
        forms = [TwoForm.skew_part(rng.standard_normal((d, d))) for _ in range(args.trials)]
        exact = np.array([norm(a) for a in forms])
        for s in args.samples:
            mc = np.array([frame_oracle(a, s, seed=i, refine=False) for i, a in enumerate(forms)]) / exact
            pol = np.array([frame_oracle(a, s, seed=i) for i, a in enumerate(forms)]) / exact
            print(f"{d:>3} {s:>8} {mc.min():>9.4f} {mc.mean():>8.4f} {pol.min():>15.6f}")


if __name__ == "__main__":
    main()
