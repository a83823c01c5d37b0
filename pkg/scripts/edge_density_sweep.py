#!/usr/bin/env python3
"""Edge density of pruned biclique-free disc instances across sizes.

For each size, generate random disc families with radii ~ 1/sqrt(n), prune to
K_{t,t}-freeness, and report |E|/n together with how much the pruner had to
delete.  The ratio staying flat across doubling sizes is the desk-scale shadow
of the linear edge bound for pseudo-disc intersection graphs.

Usage: python scripts/edge_density_sweep.py [--sizes 128,256,512,1024]
       [--seeds 10] [--t 2] [--out sweep.csv]
"""

import argparse
import csv
import statistics
import sys
import time

from ztnet.hypergraph import BipartiteIntersectionGraph
from ztnet.generators import prune_to_ktt_free
from ztnet.suite import derive_seed, scaled_disc_instance


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="128,256,512,1024")
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--t", type=int, default=2)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    rows = []
    print(f"{'n':>6} {'median |E|/n':>14} {'deleted%':>9} {'sec':>6}")
    for n in sizes:
        ratios = []
        deleted = []
        t0 = time.time()
        for s in range(args.seeds):
            fam_a, fam_b = scaled_disc_instance(n, derive_seed(args.seed, "sweep", n, s))
            g = BipartiteIntersectionGraph.from_families(fam_a, fam_b)
            res = prune_to_ktt_free(g, args.t)
            ratios.append(len(res.graph.edges) / n)
            deleted.append(100.0 * (len(res.deleted_a) + len(res.deleted_b)) / (2 * n))
            rows.append([n, s, len(res.graph.edges), ratios[-1], deleted[-1]])
        med = statistics.median(ratios)
        print(f"{n:>6} {med:>14.3f} {statistics.median(deleted):>8.1f}% {time.time() - t0:>6.1f}")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "seed", "edges", "edges_per_n", "deleted_pct"])
            w.writerows(rows)
        print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
