"""Empirical U = N - T residuals per (k, decade of p), to set against the O(k/2^k) claim."""
import argparse
import sys

from residue_lab.census import census_sweep, residual_summary
from residue_lab.modcore import PrimeRange
from residue_lab.report import render


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--range", type=PrimeRange.parse, default=PrimeRange(3, 20000))
    ap.add_argument("--k-max", type=int, default=8)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--format", default="table", choices=("csv", "json", "table"))
    args = ap.parse_args()

    rows = residual_summary(census_sweep(args.range, args.k_max, workers=args.workers))
    for g in rows:
        # how far the worst residual sits above the claimed k/2^k scale
        g["vs_k_over_2k"] = g["max_abs_residual"] / (g["k"] / 2 ** g["k"])
    sys.stdout.write(render(rows, args.format))


if __name__ == "__main__":
    main()
