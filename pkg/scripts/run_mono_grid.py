"""Twist verdicts on the (g, k, n) grid, with the smallest admissible and violating m."""

import argparse
import collections
import json
import time

from levelcover.surface import mono_grid


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--g", type=int, nargs="+", default=[2, 3, 4])
    p.add_argument("--k", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--n", type=int, nargs="+", default=[3, 4, 5, 6, 8, 9, 12])
    p.add_argument("--json", help="write all rows to this file")
    args = p.parse_args()
    t0 = time.perf_counter()
    rows = mono_grid(args.g, args.k, args.n)
    tally = collections.Counter((r["role"], r["verdict"]) for r in rows)
    maps = collections.Counter(r["certificate"].get("map", r["certificate"].get("representative"))
                               for r in rows)
    print(f"{len(rows)} verdicts in {time.perf_counter() - t0:.1f}s")
    for (role, verdict), c in sorted(tally.items()):
        print(f"  {role:10} {verdict:9} {c}")
    print("certificates:")
    for m, c in maps.most_common():
        print(f"  {m}: {c}")
    off = [r for r in rows if r["verdict"] != r["expected"]]
    for r in off:
        print("DISAGREES:", {k: r[k] for k in ("kind", "edge", "g", "g1", "k", "n", "m", "verdict")})
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1)


if __name__ == "__main__":
    main()
