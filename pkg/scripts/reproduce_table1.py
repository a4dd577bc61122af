"""Rebuild the least-nonresidue table and diff it against the published columns."""
import argparse
import time

from residue_lab.nonresidue import nonresidue_table

PUBLISHED = {
    1: (3, 0.10, 20.00), 2: (7, 1.30, 2.31), 3: (23, 3.58, 1.40), 4: (71, 6.18, 1.13),
    5: (311, 10.03, 1.10), 6: (479, 11.23, 1.16), 7: (1559, 14.67, 1.16), 8: (5711, 18.66, 1.02),
    9: (10559, 20.63, 1.11), 10: (18191, 22.40, 1.29), 11: (31391, 24.20, 1.28),
    12: (422231, 33.18, 1.22), 13: (701399, 40.00, 1.03), 14: (366791, 32.68, 1.32),
    15: (3818929, 41.20, 1.14),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=15)
    ap.add_argument("--search-bound", type=int, default=4_000_000)
    args = ap.parse_args()

    t0 = time.perf_counter()
    rows = nonresidue_table(args.n_max, args.search_bound)
    print(f"{'n':>3} {'p_n':>4} {'p':>9} {'scale':>7} {'c_p':>6}  published")
    for row in rows:
        r = row.to_row()
        ref = PUBLISHED.get(r["n"])
        if r["p"] is None:
            print(f"{r['n']:>3} {r['p_n']:>4} {'-':>9}  (not found below {args.search_bound})")
            continue
        flag = ""
        if ref:
            p, scale, c_p = ref
            off = [name for name, a, b in (("p", r["p"], p), ("scale", r["scale"], scale), ("c_p", r["c_p"], c_p))
                   if abs(a - b) > 0.01 + 1e-9]
            flag = f"{p:>9} {scale:7.2f} {c_p:6.2f}" + (f"  <- differs: {', '.join(off)}" if off else "")
        print(f"{r['n']:>3} {r['p_n']:>4} {r['p']:>9} {r['scale']:7.2f} {r['c_p']:6.2f}  {flag}")
    print(f"# {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
