#!/usr/bin/env python3
"""Print a quick table of GME and LHV thresholds for the standard families.

Usage: python scripts/threshold_report.py [--max-n 8]
"""

import argparse

from rgstates import generate, gme_threshold, lhv_bound, lhv_threshold


def fmt(value):
    return f"{value:.6f}" if value is not None else "   none"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=8)
    args = parser.parse_args()

    print(f"{'graph':>10}  {'p_w':>8}  {'p_F':>8}  {'D':>6}  {'p_lhv':>8}")
    for family in ("star", "path", "cycle"):
        start = 3 if family == "cycle" else 2
        for n in range(start, args.max_n + 1):
            g = generate(f"{family}:{n}")
            p_w = gme_threshold(g)
            p_f = gme_threshold(g, level=2)
            d = lhv_bound(g) if g.n <= 8 else None
            p_lhv = lhv_threshold(g, level=2, d=d) if d is not None else None
            d_text = f"{d:.4f}" if d is not None else "  n/a"
            print(f"{family + ':' + str(n):>10}  {fmt(p_w):>8}  {fmt(p_f):>8}"
                  f"  {d_text:>6}  {fmt(p_lhv):>8}")


if __name__ == "__main__":
    main()
