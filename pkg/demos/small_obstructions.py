"""
Brute-force ground truth on tiny graphs
=======================================

Exact width oracles settle tiny cases, and an exhaustive search decides embeddability.
The gadget K_{k,3} with its k-side completed has treewidth k but simple
treewidth k+1; K4 fits in the product of two 2-vertex hosts only when the
hosts may carry anti-parallel arcs.
"""

from collections import Counter

import networkx as nx

from psk import (
    Budget,
    exact_simple_treewidth,
    exact_treewidth,
    exhaustive_embedding_search,
    gen_kbar3,
    verify_embedding,
)
from psk.graph import Graph

for k in (1, 2, 3):
    g = gen_kbar3(k)
    line = f"k={k}: n={g.n} m={g.m} tw={exact_treewidth(g)}"
    if k <= 2:
        line += f" stw={exact_simple_treewidth(g)}"
    print(line)

k4 = Graph.complete(4)
for oriented in (False, True):
    result = exhaustive_embedding_search(k4, Budget(2, 1, 1, 1, 1, oriented))
    print(f"K4, oriented_only={oriented}: {result.verdict} after {result.host_pairs} host pairs")
    if result.embedding is not None:
        e = result.embedding
        print("  host1 arcs", e.host1.sorted_arcs(), "host2 arcs", e.host2.sorted_arcs())
        print("  map", e.map, "valid", verify_embedding(k4, e).valid)

# over all connected graphs on at most 6 vertices, stw is tw or tw+1
tally = Counter()
for h in nx.graph_atlas_g()[1:]:
    if h.number_of_nodes() <= 6 and nx.is_connected(h):
        g = Graph(h.number_of_nodes(), h.edges())
        tally[exact_simple_treewidth(g) - exact_treewidth(g)] += 1
print("stw - tw over connected graphs, n <= 6:", dict(sorted(tally.items())))
