"""
Unbounded indegree: splitting a k-tree by colour
================================================

Colour a k-tree with k+1 colours so that every clique is rainbow.  Vertices
of colour at most p' form a part of treewidth p', the rest one of treewidth
k-1-p'.  Adding a dominant vertex to each part and orienting it outwards on
one side and inwards on the other gives hosts of treewidth p'+1 and q'+1,
with every edge between the parts realized by a diagonal arc.
"""

from collections import Counter

from psk import (
    embed_unbounded_indegree,
    gen_random_ktree,
    max_indegree,
    partition_by_treewidth,
    rainbow_color_ktree,
    verify_embedding,
)
from psk.products import verify_strong_embedding

trace = gen_random_ktree(4, 40, seed=2)
colour = rainbow_color_ktree(trace)
print("colour classes:", sorted(Counter(colour).items()))

v1, v2, w1, w2 = partition_by_treewidth(trace, 1, 2)
print(f"parts of size {len(v1)} and {len(v2)}, witness widths {w1.width()} and {w2.width()}")

for p, q in ((2, 3), (1, 4), (3, 3)):
    e = embed_unbounded_indegree(trace, p, q)
    r = verify_embedding(trace.graph, e)
    print(
        f"(p,q)=({p},{q}): valid={r.valid} strong={verify_strong_embedding(trace.graph, e).valid} "
        f"widths {e.witness1.width()}/{e.witness2.width()} "
        f"indegrees {max_indegree(e.host1)}/{max_indegree(e.host2)} classes {r.class_counts()}"
    )
