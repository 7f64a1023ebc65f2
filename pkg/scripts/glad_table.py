"""Smoothness of every boundary point versus the predicted table, per (g, k, n)."""

import argparse
from math import gcd

from levelcover.graphs import theorem_glad_check


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--g", type=int, nargs="+", default=[2, 3])
    p.add_argument("--n", type=int, nargs="+", default=list(range(3, 13)))
    args = p.parse_args()
    mismatches = 0
    for g in args.g:
        print(f"genus {g}   (S = all points smooth, . = some point singular, * = differs from prediction)")
        print("       " + " ".join(f"{n:>3}" for n in args.n))
        for k in (1, 2, 3, 4):
            cells = []
            for n in args.n:
                if k == 4 and gcd(n, 6) != 1:
                    cells.append("  -")
                    continue
                v = theorem_glad_check(g, k, n)
                mark = "S" if v.smooth else "."
                if not v.matches:
                    mark += "*"
                    mismatches += 1
                cells.append(f"{mark:>3}")
            print(f"  k={k}  " + " ".join(cells))
        print()
    print(f"{mismatches} mismatches")


if __name__ == "__main__":
    main()
