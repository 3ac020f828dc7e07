#!/usr/bin/env python3
"""Closed vs open pairs of a candidate independent set, and the pair budget.

Take a built instance and a k-subset I of its vertices.  Pairs of I that
lie together in some neighborhood box are "closed" -- the box argument
already controls them.  The remaining "open" pairs are the ones an
adversary could still use, and the function f prices how many such pairs
a split of I across the two sides can afford.  Edges of the final graph
only ever connect open-plus pairs, which is the hook for the independence
number lower bound.
"""
import numpy as np

from trioverlay.analysis import (classify_sets, edges_are_open_plus,
                                 f_function, sample_k_sets)
from trioverlay.construction import build
from trioverlay.params import feasible_params

par = feasible_params(3000)
inst = build(par, seed=1)
print(f"n={par.n} N={par.N} p={par.p:.5f} k={par.k}")
print(f"graph: {inst.graph.m} edges, max degree {inst.graph.max_degree()}")

print("\nsampled k-sets (random, row-heavy, column-heavy, neighborhoods):")
print(f"{'label':<16}{'closed':>8}{'open':>8}{'closed+':>9}{'open+':>8}"
      f"{'huge':>6}{'large':>7}{'medium':>8}{'small':>7}")
for label, I in sample_k_sets(inst, n_random=4, seed=7):
    cl = classify_sets(I, inst)
    sizes = cl.to_dict()["class_sizes"]
    print(f"{label:<16}{cl.closed:>8}{cl.open:>8}{cl.closed_plus:>9}"
          f"{cl.open_plus:>8}{sizes['huge']:>6}{sizes['large']:>7}"
          f"{sizes['medium']:>8}{sizes['small']:>7}")
    total = cl.k * (cl.k - 1) // 2
    assert cl.closed + cl.open == total
    assert cl.closed_plus + cl.open_plus == total
    assert cl.closed_plus <= cl.closed
    assert edges_are_open_plus(inst, I)

print("\nall identities held; every graph edge inside each I was open-plus")

# the pair budget f along the diagonal split l_r = l_b = l
print("\npair budget f(l, l) for balanced splits (negative = no adversarial")
print("configuration of that shape can exist):")
ls = np.unique(np.linspace(0, par.k, 9).astype(int))
vals = f_function(ls.astype(float), ls.astype(float), par)
for l, v in zip(ls, np.atleast_1d(vals)):
    tag = "impossible" if v < 0 else f"{int(v)} open pairs affordable"
    print(f"  l = {l:>4}: f = {float(v):>14.1f}  ({tag})")
assert f_function(float(par.k), float(par.k), par) == par.k * (par.k - 1)
