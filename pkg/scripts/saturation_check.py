"""Compare the congruence description of power subgroups with brute-force saturation."""

import argparse
import time

from levelcover import nilpotent as nil
from levelcover.freenil import assembled_power_subgroup, power_subgroup, standard_names


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, nargs="+", default=[2, 3, 4, 5, 6, 8, 9, 12])
    p.add_argument("--length", type=int, default=4, help="word length bound for the seeds")
    args = p.parse_args()
    for n in args.n:
        row = [f"n={n:>2}"]
        for depth in (2, 3, 4):
            t0 = time.perf_counter()
            sat = power_subgroup(3, n, args.length, depth).lattice()
            ok = sat == nil.congruence_lattice(n, depth)
            row.append(f"depth {depth}: {'agree' if ok else 'DIFFER'} ({time.perf_counter() - t0:.1f}s)")
        row.append("witnesses: " + ("agree" if nil.witness_lattice(n) == nil.congruence_lattice(n) else "DIFFER"))
        if n <= 4:
            direct = power_subgroup(4, n, 3).lattice()
            glued = assembled_power_subgroup(standard_names(4), n).lattice()
            row.append("rank 4 glued: " + ("agree" if direct == glued else "DIFFER"))
        print("  ".join(row))


if __name__ == "__main__":
    main()
