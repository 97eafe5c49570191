"""Finite-difference error of the Fubini-Study scalar curvature versus step and chart radius.

Halving the step should divide the truncation error by about 4 until
round-off takes over.

    python3 scripts/fs_step_study.py --n 2
"""

import argparse

from spinc_bounds.fsgeometry import ricci_and_kappa, sample_chart_points

STEPS = [1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4, 3.125e-4, 1.5625e-4]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--points", type=int, default=20)
    parser.add_argument("--radii", type=float, nargs="+", default=[0.5, 1.0, 2.0, 3.0])
    args = parser.parse_args()

    expected = 4 * args.n * (args.n + 1)
    print("radius " + " ".join(f"{h:>10.3g}" for h in STEPS))
    for radius in args.radii:
        points = sample_chart_points(args.n, args.points, radius=radius, seed=1)
        errors = [max(abs(ricci_and_kappa(p, h).kappa - expected) for p in points) for h in STEPS]
        print(f"{radius:>6} " + " ".join(f"{e:>10.2e}" for e in errors))


if __name__ == "__main__":
    main()
