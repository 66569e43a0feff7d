from itertools import combinations

import pytest
from hypothesis import given, settings

from conftest import digraphs, graphs, kbar
from psk.errors import InvalidInput, NotTransitiveTournament, TooSmall
from psk.graph import (
    Digraph,
    Graph,
    big_arc,
    cliques_of_size,
    digraph_to_dot,
    graph_to_dot,
    is_clique,
    is_transitive_tournament,
    max_indegree,
    maximal_cliques,
    sink_of,
    transitive_tournament,
    underlying,
)
from psk.products import directed_product


def test_graph_rejects_self_loops_and_out_of_range():
    with pytest.raises(InvalidInput):
        Graph(2, [(1, 1)])
    with pytest.raises(InvalidInput):
        Graph(2, [(0, 2)])
    assert Graph(3, [(0, 1), (1, 0)]).m == 1


def test_oriented_flag_is_validated():
    with pytest.raises(InvalidInput):
        Digraph(2, [(0, 1), (1, 0)], oriented=True)
    assert not Digraph(2, [(0, 1), (1, 0)]).is_oriented()


def test_underlying_examples():
    assert underlying(Digraph(2, [(0, 1)])).sorted_edges() == [(0, 1)]
    assert underlying(Digraph(2, [(0, 1), (1, 0)])).sorted_edges() == [(0, 1)]
    arc = Digraph(2, [(0, 1)], oriented=True)
    prod = underlying(directed_product(arc, arc))
    assert prod.n == 4 and prod.m == 5
    # (0,0) is vertex 0 and (1,1) is vertex 3 in row-major order
    assert prod.has_edge(0, 3) and not prod.has_edge(1, 2)


def test_max_indegree_examples():
    assert max_indegree(Digraph(2, [(0, 1)])) == 1
    assert max_indegree(Digraph(3)) == 0
    assert max_indegree(transitive_tournament(4)) == 3


def test_is_clique_examples():
    assert is_clique(Graph.complete(4), [0, 1, 2])
    assert not is_clique(Graph.path(3), [0, 2])
    assert is_clique(Graph.path(3), [1]) and is_clique(Graph.path(3), [])
    assert is_clique(kbar(2), [0, 1, 2])


def test_cliques_of_size_examples():
    assert cliques_of_size(Graph.complete(3), 2) == [(0, 1), (0, 2), (1, 2)]
    assert cliques_of_size(Graph.complete(3), 4) == []
    assert cliques_of_size(kbar(2), 3) == [(0, 1, 2), (0, 1, 3), (0, 1, 4)]
    with pytest.raises(InvalidInput):
        cliques_of_size(Graph.complete(3), 0)


def test_tournament_predicates():
    tt = transitive_tournament(3)
    cyc = Digraph(3, [(0, 1), (1, 2), (2, 0)])
    path = Digraph(3, [(0, 1), (1, 2)])
    assert is_transitive_tournament(tt, [0, 1, 2])
    assert not is_transitive_tournament(cyc, [0, 1, 2])
    assert not is_transitive_tournament(path, [0, 1, 2])
    assert sink_of(tt, [0, 1, 2]) == 2
    assert sink_of(Digraph(6), [5]) == 5
    with pytest.raises(NotTransitiveTournament):
        sink_of(cyc, [0, 1, 2])


def test_big_arc_examples():
    assert big_arc(transitive_tournament(3), [0, 1, 2]) == (1, 2)
    assert big_arc(Digraph(8, [(7, 3)]), [3, 7]) == (7, 3)
    with pytest.raises(TooSmall):
        big_arc(transitive_tournament(3), [1])


def test_json_round_trip_and_dot():
    g = Graph(4, [(0, 1), (2, 3)])
    assert Graph.from_dict(g.to_dict()) == g
    d = Digraph(3, [(0, 1), (2, 1)], oriented=True)
    assert Digraph.from_dict(d.to_dict()) == d
    assert "0 -- 1;" in graph_to_dot(g)
    assert "2 -> 1;" in digraph_to_dot(d)
    with pytest.raises(InvalidInput):
        Graph.from_dict({"edges": []})


@given(digraphs(max_n=6))
def test_underlying_edge_count(d):
    und = underlying(d)
    assert und.m <= len(d.arcs)
    assert (und.m == len(d.arcs)) == d.is_oriented()


@given(digraphs(max_n=6))
def test_indegree_sum_is_arc_count(d):
    assert sum(d.indegree(v) for v in range(d.n)) == len(d.arcs)


@given(graphs(max_n=10))
@settings(max_examples=150)
def test_cliques_match_subset_filter(g):
    for k in range(1, 5):
        brute = [c for c in combinations(range(g.n), k) if is_clique(g, c)]
        assert cliques_of_size(g, k) == brute


@given(graphs(max_n=9))
def test_maximal_cliques_are_maximal(g):
    for c in maximal_cliques(g):
        assert is_clique(g, c)
        assert not any(all(g.has_edge(v, w) for w in c) for v in g.vertices() if v not in c)


@given(digraphs(max_n=6))
def test_big_arc_and_sink_agree_on_transitive_sets(d):
    for r in range(2, d.n + 1):
        for s in combinations(range(d.n), r):
            if not is_transitive_tournament(d, s):
                continue
            u, v = big_arc(d, s)
            assert v == sink_of(d, s)
            assert sink_of(d, set(s) - {v}) == u
