"""
From any k-simple decomposition to a smooth one
===============================================

A k-simple tree-decomposition lets every k-set of vertices sit in at most
two bags.  The normalizer turns one into a normal, k-smooth decomposition
(every bag has k+1 vertices, neighbours share k) by moves that each raise a
depth-weighted score, then reads a simple k-tree off the result.
"""

from collections import Counter

from psk import (
    TreeDecomposition,
    decomposition_to_simple_ktree,
    normalize_to_smooth_simple,
    recognize_simple_ktree,
    verify_decomposition,
)
from psk.graph import Graph

# a star, decomposed one edge per bag: valid and 2-simple, but far from smooth
g = Graph(6, [(0, i) for i in range(1, 6)])
td = TreeDecomposition([{0, i} for i in range(1, 6)], [(0, i) for i in range(1, 5)])
before = verify_decomposition(g, td, 2)
print("before: normal", before.is_normal, "simple", before.is_k_simple, "smooth", before.is_k_smooth)

log = []
smooth = normalize_to_smooth_simple(g, td, 2, log)
for move, score in log:
    print(f"  {move:18s} score {score}")
after = verify_decomposition(g, smooth, 2)
print("after:  normal", after.is_normal, "simple", after.is_k_simple, "smooth", after.is_k_smooth)
print("bags:", [sorted(b) for b in smooth.bags], "root", smooth.root)

# fill every bag into a clique: a simple 2-tree, i.e. a maximal outerplanar graph
full, trace = decomposition_to_simple_ktree(g, smooth, 2)
print(f"completion has {full.m} edges; recognized again: {recognize_simple_ktree(full, 2) is not None}")
print("moves used:", Counter(m for m, _ in log))
