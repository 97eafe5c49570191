"""Tabulate curvature bounds over a family and print a markdown table.

    python3 scripts/scan_table.py --n-max 4 --r-max 2 --degree-max 4
"""

import argparse
from collections import Counter

from spinc_bounds.cli import ScanSpec, checks_pass, format_scan, run_scan


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n-max", type=int, default=4)
    parser.add_argument("--r-max", type=int, default=2)
    parser.add_argument("--degree-max", type=int, default=4)
    args = parser.parse_args()

    spec = ScanSpec(range(1, args.n_max + 1), range(0, args.r_max + 1), args.degree_max, output_format="markdown")
    family, records = run_scan(spec)
    print(format_scan(spec, family, records))
    cases = Counter(rec["bound"]["case"] for rec in records)
    failed = sum(not checks_pass(rec["checks"]) for rec in records)
    print(f"{len(records)} members; cases {dict(sorted(cases.items()))}; {failed} with a failed check")


if __name__ == "__main__":
    main()
