"""Count stable dual graphs by genus and summarize their edge classes."""

import argparse
import collections

from levelcover.graphs import classify_edges, enumerate_stable_graphs


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--g", type=int, nargs="+", default=[2, 3, 4])
    args = p.parse_args()
    for g in args.g:
        graphs = enumerate_stable_graphs(g)
        by_edges = collections.Counter(len(G.edges) for G in graphs)
        kinds = collections.Counter()
        for G in graphs:
            c = classify_edges(G)
            kinds["with bridges"] += bool(c.bridges)
            kinds["with genus-one bridges"] += bool(c.genus_one_bridges)
            kinds["with cut systems"] += bool(c.cut_systems)
        print(f"genus {g}: {len(graphs)} graphs")
        print("  by edge count: " + ", ".join(f"{e}:{c}" for e, c in sorted(by_edges.items())))
        for k, c in kinds.items():
            print(f"  {k}: {c}")


if __name__ == "__main__":
    main()
