"""Longest strictly monotone stretches of the partial character sum, scaled by (ln p)(ln ln p)."""
import argparse
import sys

from residue_lab.charsum import partial_sum_profile
from residue_lab.modcore import PrimeRange, prime_array
from residue_lab.nonresidue import scale_of
from residue_lab.report import render


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--range", type=PrimeRange.parse, default=PrimeRange(3, 10**5))
    ap.add_argument("--every", type=int, default=1, help="keep every n-th prime")
    ap.add_argument("--format", default="csv", choices=("csv", "json", "table"))
    args = ap.parse_args()

    rows = []
    for p in prime_array(max(args.range.lo, 5), args.range.hi).tolist()[:: args.every]:
        prof = partial_sum_profile(p)
        h = max(prof.longest_inc_run, prof.longest_dec_run)
        rows.append({"p": p, "inc": prof.longest_inc_run, "dec": prof.longest_dec_run,
                     "h_over_scale": h / scale_of(p)})
    sys.stdout.write(render(rows, args.format))
    worst = max(rows, key=lambda r: r["h_over_scale"])
    print(f"# max H/((ln p)(ln ln p)) = {worst['h_over_scale']:.3f} at p={worst['p']}", file=sys.stderr)


if __name__ == "__main__":
    main()
