
import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import atlas
from psk.decomposition import ConstructionTrace, recognize_simple_ktree, verify_decomposition
from psk.embedders import (
    case_counts,
    embed_dominant,
    embed_outerplanar,
    embed_simple_treewidth,
    embed_unbounded_indegree,
    maximal_outerplanar_supergraph,
    partition_by_treewidth,
    sibling_ledger,
)
from psk.errors import ArityMismatch, InvalidTrace, NotAPartition, NotOuterplanar, ParameterRange
from psk.graph import (
    Digraph,
    Graph,
    cliques_of_size,
    is_transitive_tournament,
    max_indegree,
    transitive_tournament,
    underlying,
)
from psk.instances import gen_max_outerplanar, gen_random_ktree, gen_random_simple_ktree
from psk.oracle import exact_simple_treewidth
from psk.products import verify_embedding, verify_strong_embedding


def is_forest(d: Digraph) -> bool:
    return nx.is_forest(nx.Graph(list(d.arcs))) if d.arcs else True


def is_tree(d: Digraph) -> bool:
    h = nx.Graph()
    h.add_nodes_from(range(d.n))
    h.add_edges_from(d.arcs)
    return nx.is_tree(h)


def witness_ok(e, width):
    for host, wit in ((e.host1, e.witness1), (e.host2, e.witness2)):
        r = verify_decomposition(underlying(host), wit, max(width, 1))
        assert r.is_valid and r.width <= width


# -- simple treewidth ---------------------------------------------------------


def test_base_case_k3():
    e = embed_simple_treewidth(ConstructionTrace(3, [0, 1, 2, 3]))
    assert e.host1 == transitive_tournament(3)
    assert e.host2 == Digraph(2, [(0, 1)], oriented=True)
    assert e.map == ((0, 0), (1, 0), (2, 0), (2, 1))


def test_rejects_bad_traces():
    with pytest.raises(ParameterRange):
        embed_simple_treewidth(ConstructionTrace(1, [0, 1], [(2, [1])]))
    reused = ConstructionTrace(2, [0, 1, 2], [(3, [0, 1]), (4, [0, 1])], simple=False)
    with pytest.raises(InvalidTrace):
        embed_simple_treewidth(reused)


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_random_simple_traces_with_invariants(k):
    for seed in range(6):
        trace = gen_random_simple_ktree(k, 70, seed)
        e = embed_simple_treewidth(trace, check_invariants=True)
        r = verify_embedding(trace.graph, e)
        assert r.valid
        assert r.indegree1 <= k - 1 and r.indegree2 <= k - 1
        assert e.host1.is_oriented and e.host2.is_oriented
        witness_ok(e, k - 1)
        for c in cliques_of_size(trace.graph, k):
            assert is_transitive_tournament(e.host1, e.p1(c))
            assert is_transitive_tournament(e.host2, e.p2(c))


@pytest.mark.parametrize("seed", range(8))
def test_planar_3_trees(seed):
    trace = gen_random_simple_ktree(3, 60, seed)
    assert nx.check_planarity(nx.Graph(list(trace.graph.edges)))[0]
    e = embed_simple_treewidth(trace)
    assert verify_embedding(trace.graph, e).valid
    assert max_indegree(e.host1) <= 2 and max_indegree(e.host2) <= 2
    witness_ok(e, 2)


@pytest.mark.parametrize("seed", range(8))
def test_k2_traces_give_forests(seed):
    trace = gen_random_simple_ktree(2, 60, seed)
    e = embed_simple_treewidth(trace)
    assert verify_embedding(trace.graph, e).valid
    assert is_forest(e.host1) and is_forest(e.host2)
    assert max_indegree(e.host1) <= 1 and max_indegree(e.host2) <= 1
    assert embed_outerplanar(trace.graph).map is not None


@pytest.mark.parametrize("k", [2, 3, 4])
def test_sibling_ledger_invariants(k):
    for seed in range(5):
        trace = gen_random_simple_ktree(k, 60, seed)
        e = embed_simple_treewidth(trace)
        ledger = sibling_ledger(trace)
        at = {c: v for v, c in enumerate(e.map)}
        assert ledger.used_set == set(e.map)
        ledger.check({v: set(trace.graph.adj[v]) for v in trace.graph.vertices()}, at)
        for clique, sib in ledger.diagonal_record.items():
            assert len(clique) == k and len(set(sib)) == 2
        counts = case_counts(trace)
        assert sum(counts.values()) == trace.n - k - 1


def test_deterministic_output():
    trace = gen_random_simple_ktree(4, 80, 11)
    assert embed_simple_treewidth(trace).to_dict() == embed_simple_treewidth(trace).to_dict()


# -- outerplanar --------------------------------------------------------------


def test_outerplanar_small_cases(triangle):
    e = embed_outerplanar(Graph(1))
    assert e.map == ((0, 0),) and e.host1.sorted_arcs() == [(0, 1)]
    e = embed_outerplanar(Graph.complete(2))
    assert e.map == ((0, 0), (1, 0)) and e.host2.sorted_arcs() == [(0, 1)]
    assert verify_embedding(Graph.complete(2), e).valid
    e = embed_outerplanar(triangle)
    assert e.map == ((0, 0), (1, 0), (1, 1))


def test_outerplanar_rejects():
    with pytest.raises(NotOuterplanar):
        embed_outerplanar(Graph.complete(4))
    k23 = Graph(5, [(a, b) for a in (0, 1) for b in (2, 3, 4)])
    with pytest.raises(NotOuterplanar):
        embed_outerplanar(k23)


@pytest.mark.parametrize("seed", range(10))
def test_outerplanar_random_maximal(seed):
    g = gen_max_outerplanar(10 + 19 * seed, seed)
    e = embed_outerplanar(g, check_invariants=True)
    r = verify_embedding(g, e)
    assert r.valid and r.indegree1 <= 1 and r.indegree2 <= 1
    assert is_tree(e.host1) and is_tree(e.host2)


def test_outerplanar_matches_simple_engine():
    g = gen_max_outerplanar(30, 5)
    trace = recognize_simple_ktree(g, 2)
    assert embed_outerplanar(g).map == embed_simple_treewidth(trace).map


@given(st.integers(3, 40), st.integers(0, 10**6), st.lists(st.integers(0, 10**6), max_size=30))
@settings(deadline=None, max_examples=60)
def test_outerplanar_subgraphs(n, seed, drops):
    g = gen_max_outerplanar(n, seed)
    edges = g.sorted_edges()
    gone = {edges[d % len(edges)] for d in drops}
    h = Graph(n, [e for e in edges if e not in gone])
    full = maximal_outerplanar_supergraph(h)
    assert h.edges <= full.edges and full.m == 2 * n - 3
    e = embed_outerplanar(h)
    r = verify_embedding(h, e)
    assert r.valid and r.indegree1 <= 1 and r.indegree2 <= 1
    assert is_tree(e.host1) and is_tree(e.host2)


def test_outerplanar_atlas_agrees_with_oracle():
    for g in atlas(7):
        if g.n < 3:
            continue
        outer = exact_simple_treewidth(g) <= 2
        try:
            e = embed_outerplanar(g)
        except NotOuterplanar:
            assert not outer
            continue
        assert outer and verify_embedding(g, e).valid


# -- appendix constructions ---------------------------------------------------


def test_partition_k4():
    v1, v2, w1, w2 = partition_by_treewidth(ConstructionTrace(3, [0, 1, 2, 3]), 1, 1)
    assert (v1, v2) == ([0, 1], [2, 3])
    assert w1.width() == 1 and w2.width() == 1
    with pytest.raises(ArityMismatch):
        partition_by_treewidth(ConstructionTrace(3, [0, 1, 2, 3]), 1, 2)


@pytest.mark.parametrize("k,p,q", [(3, 1, 1), (5, 2, 2), (4, 0, 3), (4, 3, 0)])
def test_partition_random(k, p, q):
    for seed in range(4):
        trace = gen_random_ktree(k, 60, seed)
        v1, v2, w1, w2 = partition_by_treewidth(trace, p, q)
        assert sorted(v1 + v2) == list(range(trace.n))
        for part, wit, width in ((v1, w1, p), (v2, w2, q)):
            sub, _ = trace.graph.induced(part)
            r = verify_decomposition(sub, wit, max(width, 1))
            assert r.is_valid and r.width <= width
            if width == 1 and sub.n:
                assert nx.is_forest(nx.Graph(list(sub.edges))) if sub.m else True


def test_embed_dominant_examples():
    e = embed_dominant(Graph.complete(2), [0], [1])
    assert e.map == ((0, 1), (1, 0))
    assert e.host1.has_arc(1, 0) and e.host2.has_arc(0, 1)
    r = verify_embedding(Graph.complete(2), e)
    assert r.valid and r.edge_classes == {(0, 1): "diagonal"}
    k4 = Graph.complete(4)
    e = embed_dominant(k4, [0, 1], [2, 3])
    assert underlying(e.host1) == Graph.complete(3) == underlying(e.host2)
    assert verify_embedding(k4, e).valid
    with pytest.raises(NotAPartition):
        embed_dominant(k4, [0, 1], [1, 2, 3])


@pytest.mark.parametrize("seed", range(5))
def test_dominant_edge_classes(seed):
    g = gen_random_ktree(3, 25, seed).graph
    v1 = [v for v in g.vertices() if (v * 7 + seed) % 3 == 0]
    v2 = [v for v in g.vertices() if v not in v1]
    e = embed_dominant(g, v1, v2)
    r = verify_embedding(g, e)
    assert r.valid
    side = {v: 1 for v in v1} | {v: 2 for v in v2}
    for (u, v), cls in r.edge_classes.items():
        if side[u] != side[v]:
            assert cls == "diagonal"
        else:
            assert cls == ("vertical" if side[u] == 1 else "horizontal")


def test_unbounded_examples():
    e = embed_unbounded_indegree(ConstructionTrace(3, [0, 1, 2, 3]), 2, 2)
    assert verify_embedding(Graph.complete(4), e).valid
    witness_ok(e, 2)
    path = ConstructionTrace(1, [0, 1], [(2, [1]), (3, [2])])
    e = embed_unbounded_indegree(path, 1, 1)
    assert verify_embedding(path.graph, e).valid
    witness_ok(e, 1)
    with pytest.raises(ArityMismatch):
        embed_unbounded_indegree(path, 1, 0)
    with pytest.raises(ArityMismatch):
        embed_unbounded_indegree(ConstructionTrace(3, [0, 1, 2, 3]), 1, 2)


@pytest.mark.parametrize("p,q", [(2, 3), (1, 4), (3, 2), (4, 1), (5, 5)])
def test_unbounded_random_4_trees(p, q):
    for seed in range(4):
        trace = gen_random_ktree(4, 50, seed)
        e = embed_unbounded_indegree(trace, p, q)
        assert verify_embedding(trace.graph, e).valid
        assert verify_strong_embedding(trace.graph, e).valid
        r1 = verify_decomposition(underlying(e.host1), e.witness1, p)
        r2 = verify_decomposition(underlying(e.host2), e.witness2, q)
        assert r1.is_valid and r1.width <= p and r2.is_valid and r2.width <= q
