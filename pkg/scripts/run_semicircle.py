"""Exact moments of (s_1 + ... + s_N)/sqrt(N) for a constant Coxeter matrix.

    python scripts/run_semicircle.py --m 3 --k 4,6,8 --N 10,25,50,100,1000 --out out/semicircle
"""

import argparse

from coxclt import report
from coxclt.coxeter import parse_entry
from coxclt.moments import convergence_table


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--m", default="3")
    ap.add_argument("--k", default="4,6,8")
    ap.add_argument("--N", default="10,25,50,100,1000")
    ap.add_argument("--out", default=None, help="path prefix for .csv/.json/.svg")
    args = ap.parse_args()

    ks = [int(x) for x in args.k.split(",")]
    Ns = [int(x) for x in args.N.split(",")]
    rep = convergence_table("coxeter", Ns, ks, m=parse_entry(args.m))
    for row in rep.rows:
        print(f"N={row.N:>6} k={row.k}  moment={float(row.moment):.6f}  limit={row.limit}  N*|gap|={float(row.abs_diff) * row.N:.3f}")
    if args.out:
        for suffix, text in ((".csv", report.moment_csv(rep)), (".json", report.moment_json(rep)), (".svg", report.moment_svg(rep))):
            with open(args.out + suffix, "w") as fh:
                fh.write(text)


if __name__ == "__main__":
    main()
