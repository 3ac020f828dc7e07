#!/usr/bin/env python3
"""
Compare the independence number of three triangle-free constructions.

For the Ramsey lower bound the figure of merit is alpha / sqrt(n ln n):
smaller is better, since R(3, k) > n exactly when some triangle-free
graph on n vertices has alpha < k.  Expect the (slow) triangle-free
process to win at these sizes, edge deletion to come second, and the
overlay to trail: its payoff is genuinely asymptotic, and at desk scale
the clamped grid leaves large independent sets inside single fibers.
What the overlay does show already is the degree trend -- max degree on
the order of sqrt(n ln n) with a healthy constant.

Usage: python3 independence_showdown.py [n1,n2,...] [seeds]
"""
import math
import sys

from trioverlay.baselines import edge_deletion_baseline, triangle_free_process
from trioverlay.construction import build
from trioverlay.independence import independence_greedy
from trioverlay.params import feasible_params


def alpha_of(g, seed=0):
    return independence_greedy(g, restarts=2, seed=seed).value


def main():
    ns = [int(x) for x in sys.argv[1].split(",")] if len(sys.argv) > 1 \
        else [1000, 2000, 4000]
    seeds = int(sys.argv[2]) if len(sys.argv) > 2 else 3

    print(f"{'n':>6} {'construction':<16} {'edges':>9} {'maxdeg':>7} "
          f"{'alpha':>7} {'alpha/sqrt(n ln n)':>20}")
    for n in ns:
        norm = math.sqrt(n * math.log(n))
        par = feasible_params(n)
        rows = []
        for name in ("overlay", "edge-deletion", "process"):
            alphas, ms, ds = [], [], []
            for seed in range(seeds):
                if name == "overlay":
                    g = build(par, seed).graph
                elif name == "edge-deletion":
                    g = edge_deletion_baseline(n, par.p, seed).graph
                else:
                    # cap the process: full maximality is O(n^2) rounds
                    g = triangle_free_process(n, seed,
                                              max_steps=40 * n).graph
                alphas.append(alpha_of(g))
                ms.append(g.m)
                ds.append(g.max_degree())
            rows.append((name, sum(ms) / seeds, sum(ds) / seeds,
                         sum(alphas) / seeds))
        for name, m, d, a in rows:
            print(f"{n:>6} {name:<16} {m:>9.0f} {d:>7.0f} {a:>7.0f} "
                  f"{a / norm:>20.3f}")
        print()


if __name__ == "__main__":
    main()
