"""
Outerplanar graphs inside a product of two trees
================================================

Every outerplanar graph sits inside the directed product of two oriented
trees, each with indegree at most one.  Here we build a random maximal
outerplanar graph, embed it and look at the result.
"""

from psk import embed_outerplanar, gen_max_outerplanar, max_indegree, verify_embedding
from psk.graph import Graph

g = gen_max_outerplanar(25, seed=4)
print(f"guest: {g.n} vertices, {g.m} edges (2n-3 = {2 * g.n - 3})")

e = embed_outerplanar(g)
report = verify_embedding(g, e)
print("valid:", report.valid)

# both hosts are trees: n-1 arcs each, every vertex has at most one parent
for name, h in (("host1", e.host1), ("host2", e.host2)):
    print(f"{name}: {h.n} vertices, {len(h.arcs)} arcs, max indegree {max_indegree(h)}")

# how the guest edges split between the three kinds of product edge
print("edge classes:", report.class_counts())

# the first few guest vertices and their coordinates
for v in range(6):
    print(f"  vertex {v} -> {e.map[v]}")

# non-maximal inputs work too: a long cycle is completed to a maximal one first
cycle = Graph.cycle(12)
print("12-cycle embeds:", verify_embedding(cycle, embed_outerplanar(cycle)).valid)
