"""
Simple k-trees in products of bounded indegree
==============================================

A simple k-tree grows from a (k+1)-clique by attaching each new vertex to a
k-clique that was never used before.  Such graphs embed in the directed
product of two oriented digraphs of treewidth and indegree at most k-1.
"""

from psk import (
    clique_diagnostics,
    cliques_of_size,
    embed_simple_treewidth,
    gen_random_simple_ktree,
    max_indegree,
    underlying,
    verify_decomposition,
    verify_embedding,
)
from psk.embedders import case_counts, sibling_ledger
from psk.products import big_diagonal_edge, is_diagonal_clique

for k in (2, 3, 4, 5):
    trace = gen_random_simple_ktree(k, 150, seed=k)
    e = embed_simple_treewidth(trace, check_invariants=True)
    r = verify_embedding(trace.graph, e)
    w1 = verify_decomposition(underlying(e.host1), e.witness1, k - 1).width
    w2 = verify_decomposition(underlying(e.host2), e.witness2, k - 1).width
    print(
        f"k={k}: valid={r.valid} hosts {e.host1.n}x{e.host2.n} "
        f"indegree {max_indegree(e.host1)}/{max_indegree(e.host2)} widths {w1}/{w2} "
        f"cases {case_counts(trace)}"
    )

# planar 3-trees: hosts of treewidth and indegree two
trace = gen_random_simple_ktree(3, 40, seed=1)
e = embed_simple_treewidth(trace)
g = trace.graph

# a diagonal triangle has all three coordinates distinct in both factors;
# its big diagonal edge is the one whose factor arcs both end at a sink
diagonal = [c for c in cliques_of_size(g, 3) if is_diagonal_clique(e, c)]
print(f"{len(diagonal)} diagonal triangles out of {len(cliques_of_size(g, 3))}")
if diagonal:
    c = diagonal[0]
    edge, siblings = big_diagonal_edge(g, e, c)
    print(f"triangle {c}: big diagonal edge {edge}, big siblings {siblings}")
    print("diagnostics:", clique_diagnostics(g, e, c).to_dict())

ledger = sibling_ledger(trace)
print(f"ledger: {len(ledger.diagonal_record)} recorded cliques, {len(ledger.used_set)} used coordinates")
