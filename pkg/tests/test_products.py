import random
from itertools import combinations, product

import pytest
from hypothesis import given, settings

from conftest import bounded_digraph, digraphs, graphs, product_guest
from psk.errors import InvalidInput, NotAClique, NotDiagonal, ProjectionsNotTransitive
from psk.graph import Digraph, Graph, cliques_of_size, max_indegree, transitive_tournament, underlying
from psk.instances import bad_vertex_threshold
from psk.products import (
    Embedding,
    big_diagonal_edge,
    clique_diagnostics,
    coord_to_id,
    directed_product,
    edge_class,
    embedding_to_dot,
    id_to_coord,
    is_diagonal_clique,
    product_to_dot,
    projection_profile,
    strong_product,
    verify_embedding,
    verify_strong_embedding,
)

ARC = Digraph(2, [(0, 1)], oriented=True)


def test_coordinates_round_trip():
    for n2 in (1, 3, 7):
        for a in range(4):
            for b in range(n2):
                assert id_to_coord(coord_to_id(a, b, n2), n2) == (a, b)


def test_strong_product_examples():
    g = Graph(4, [(0, 1), (2, 3)])
    assert strong_product(Graph(1), g) == g
    assert strong_product(Graph.path(2), Graph.path(2)) == Graph.complete(4)
    p = strong_product(Graph.path(3), Graph.path(3))
    cells = list(product(range(3), range(3)))
    brute = sum(
        1 for x, y in combinations(cells, 2) if max(abs(x[0] - y[0]), abs(x[1] - y[1])) == 1
    )
    assert p.n == 9 and p.m == brute == 20


def test_directed_product_single_arcs():
    d = directed_product(ARC, ARC)
    assert d.n == 4 and d.is_oriented
    classes = sorted(edge_class(id_to_coord(u, 2), id_to_coord(v, 2)) for u, v in d.arcs)
    assert classes == ["diagonal", "horizontal", "horizontal", "vertical", "vertical"]
    assert d.has_arc(coord_to_id(0, 0, 2), coord_to_id(1, 1, 2))
    assert not underlying(d).has_edge(coord_to_id(0, 1, 2), coord_to_id(1, 0, 2))


def test_product_of_out_stars():
    star = Digraph(4, [(0, 1), (0, 2), (0, 3)], oriented=True)
    d = directed_product(star, star)
    assert max_indegree(d) == 3
    g = underlying(d)
    adj = g.adj
    found = False
    for a in combinations(range(g.n), 3):
        common = set.intersection(*(set(adj[v]) for v in a)) - set(a)
        if len(common) >= 3:
            found = True
            break
    assert not found  # no K_{3,3}, not even non-induced
    # the strong product of the same stars does contain one
    s = strong_product(underlying(star), underlying(star))
    assert any(
        len(set.intersection(*(set(s.adj[v]) for v in a)) - set(a)) >= 3
        for a in combinations(range(s.n), 3)
    )


def test_indegree_bound_random_pairs():
    rng = random.Random(7)
    for _ in range(50):
        s, t = rng.randint(0, 3), rng.randint(0, 3)
        d1 = bounded_digraph(rng, rng.randint(1, 8), s)
        d2 = bounded_digraph(rng, rng.randint(1, 8), t)
        a, b = max_indegree(d1), max_indegree(d2)
        assert max_indegree(directed_product(d1, d2)) <= a * b + a + b


@given(digraphs(5), digraphs(5))
@settings(max_examples=100)
def test_directed_inside_strong(d1, d2):
    und = underlying(directed_product(d1, d2))
    strong = strong_product(underlying(d1), underlying(d2))
    assert und.edges <= strong.edges
    a, b = max_indegree(d1), max_indegree(d2)
    assert max_indegree(directed_product(d1, d2)) <= a * b + a + b


@given(digraphs(4, oriented=True), digraphs(4, oriented=True))
def test_orientation_is_inherited(d1, d2):
    assert directed_product(d1, d2).is_oriented
    assert directed_product(d1, d2).oriented == (d1.oriented and d2.oriented)


def test_verify_embedding_examples(triangle):
    ok = verify_embedding(triangle, Embedding(ARC, ARC, [(0, 0), (1, 0), (1, 1)]))
    assert ok.valid and ok.class_counts() == {"horizontal": 1, "vertical": 1, "diagonal": 1}
    bad = verify_embedding(triangle, Embedding(ARC, ARC, [(0, 0), (0, 1), (1, 0)]))
    assert not bad.valid and bad.unembedded_edges == [(1, 2)]
    for k in range(2, 7):
        coords = [(i, 0) for i in range(k)] + [(k - 1, 1)]
        e = Embedding(transitive_tournament(k), ARC, coords)
        assert verify_embedding(Graph.complete(k + 1), e).valid


def test_verify_reports_bad_maps(triangle):
    e = Embedding.from_dict(
        {"host1": ARC.to_dict(), "host2": ARC.to_dict(), "map": [[0, [0, 0]], [1, [0, 0]], [2, [1, 1]]]}
    )
    r = verify_embedding(triangle, e)
    assert not r.valid and not r.injective
    with pytest.raises(InvalidInput):
        Embedding(ARC, ARC, [(0, 0), (0, 0)])
    with pytest.raises(InvalidInput):
        Embedding(ARC, ARC, [(2, 0)])
    r = verify_embedding(Graph.complete(2), Embedding(ARC, ARC, [(0, 0), (1, 1), (0, 1)]))
    assert not r.size_matches and not r.valid


def test_embedding_json_round_trip(triangle):
    e = Embedding(ARC, ARC, [(0, 0), (1, 0), (1, 1)], guest=triangle)
    doc = e.to_dict()
    assert doc["map"] == [[0, [0, 0]], [1, [1, 0]], [2, [1, 1]]]
    assert doc["witness1"] is None
    assert Embedding.from_dict(doc) == e


def test_strong_verification_is_weaker():
    # anti-diagonal edge: absent from the directed product, present in the strong one
    g = Graph.complete(2)
    e = Embedding(ARC, ARC, [(0, 1), (1, 0)])
    assert not verify_embedding(g, e).valid
    assert verify_strong_embedding(g, e).valid


def test_projection_profile_examples(triangle):
    e = Embedding(ARC, ARC, [(0, 0), (1, 0), (1, 1)])
    assert projection_profile(e, [2])[:2] == (1, 1)
    prof = projection_profile(e, [0, 1, 2])
    assert prof[:2] == (2, 2) and prof.host_cliques


def _random_embedded_graph(seed, n1=5, n2=5, s=2, size=10):
    rng = random.Random(seed)
    d1, d2 = bounded_digraph(rng, n1, s), bounded_digraph(rng, n2, s)
    coords = rng.sample(list(product(range(n1), range(n2))), min(size, n1 * n2))
    return product_guest(d1, d2, coords)


@pytest.mark.parametrize("seed", range(40))
def test_projection_and_diagonal_properties(seed):
    g, e = _random_embedded_graph(seed)
    assert verify_embedding(g, e).valid
    for size in range(1, 5):
        for c in cliques_of_size(g, size):
            p, q, host_cliques = projection_profile(e, c)
            assert host_cliques and p * q >= len(c)
            classes = {edge_class(e.map[u], e.map[v]) for u, v in combinations(c, 2)}
            diagonal = is_diagonal_clique(e, c)
            assert diagonal == ((p, q) == (size, size))
            if size >= 2:
                assert diagonal == (classes == {"diagonal"})
                assert diagonal == all(
                    projection_profile(e, set(c) - {v})[:2] == (p - 1, q - 1) for v in c
                )


def magnetic_instance():
    """Clique C = {0, 1} with attachments x = 2, y = 3, z = 4."""
    h1 = Digraph(4, [(0, 1), (0, 2), (2, 1), (0, 3), (1, 3)], oriented=True)
    h2 = Digraph(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)], oriented=True)
    coords = [(0, 0), (1, 1), (2, 0), (1, 2), (3, 3)]
    g = Graph(5, [(0, 1)] + [(v, c) for v in (2, 3, 4) for c in (0, 1)])
    return g, Embedding(h1, h2, coords)


def test_magnetic_configuration():
    g, e = magnetic_instance()
    assert verify_embedding(g, e).valid
    d = clique_diagnostics(g, e, [0, 1])
    assert d.attached == (2, 3, 4) and d.attachment_count == 3
    assert not d.magnetic1[2] and not d.diagonal[2]
    assert d.magnetic2[3] and not d.magnetic1[3]
    assert d.diagonal[4] and not (d.magnetic1[4] or d.magnetic2[4])
    assert d.bad_vertices() == [3, 4]


def test_redundancy_flags():
    h = transitive_tournament(3)
    g = Graph.complete(3)
    e = Embedding(h, h, [(0, 0), (0, 1), (1, 2)])
    d = clique_diagnostics(g, e, [0, 1, 2])
    assert d.redundant1 == {0: True, 1: True, 2: False}
    assert d.redundant2 == {0: False, 1: False, 2: False}
    assert not any(d.redundant(v) for v in (0, 1, 2))
    with pytest.raises(NotAClique):
        clique_diagnostics(Graph.path(3), Embedding(h, h, [(0, 0), (1, 1), (2, 2)]), [0, 1, 2])


@pytest.mark.parametrize("seed", range(60))
def test_magnetic_attachment_lemma(seed):
    g, e = _random_embedded_graph(seed, size=14)
    for size in (1, 2, 3):
        for c in cliques_of_size(g, size):
            d = clique_diagnostics(g, e, c)
            for v in c:
                for w in d.attached:
                    if d.attractive1[v] and d.magnetic2[w]:
                        assert e.map[v][0] == e.map[w][0]
                    if d.attractive2[v] and d.magnetic1[w]:
                        assert e.map[v][1] == e.map[w][1]


def test_bad_vertices_property_randomized():
    """Every k-clique with enough attachments has a diagonal or magnetic one."""
    rng = random.Random(3)
    checked = 0
    for trial in range(60):
        k = rng.choice((1, 2))
        s, t = rng.choice(((1, 1), (1, 2), (2, 1)))
        n1, n2 = rng.randint(6, 12), rng.randint(6, 12)
        d1, d2 = bounded_digraph(rng, n1, s, 0.9), bounded_digraph(rng, n2, t, 0.9)
        g, e = product_guest(d1, d2, product(range(n1), range(n2)))
        f = bad_vertex_threshold(max(1, max_indegree(d1)), max(1, max_indegree(d2)), k)
        for c in cliques_of_size(g, k):
            d = clique_diagnostics(g, e, c)
            if d.attachment_count >= f:
                checked += 1
                assert d.bad_vertices(), (trial, c)
    assert checked > 0


def test_big_diagonal_edge_examples():
    g2 = Graph.complete(2)
    e = Embedding(ARC, ARC, [(0, 0), (1, 1)])
    assert big_diagonal_edge(g2, e, [0, 1]) == ((0, 1), ((0, 1), (1, 0)))
    tt = transitive_tournament(4)
    g3 = Graph.complete(3)
    e3 = Embedding(tt, tt, [(1, 1), (2, 2), (3, 3)])
    assert big_diagonal_edge(g3, e3, [0, 1, 2]).edge == (1, 2)
    with pytest.raises(NotDiagonal):
        big_diagonal_edge(g3, Embedding(tt, ARC, [(0, 0), (1, 0), (1, 1)]), [0, 1, 2])
    cyc = Digraph(3, [(0, 1), (1, 2), (2, 0)], oriented=True)
    with pytest.raises(ProjectionsNotTransitive):
        big_diagonal_edge(g3, Embedding(cyc, tt, [(0, 0), (1, 1), (2, 2)]), [0, 1, 2])


def test_dot_exports():
    text = product_to_dot(ARC, ARC, [(0, 0)])
    assert text.startswith("digraph") and "red" in text
    e = Embedding(ARC, ARC, [(0, 0), (1, 1)])
    assert "digraph" in embedding_to_dot(e)


@given(graphs(6))
def test_verify_never_raises(g):
    e = Embedding(ARC, Digraph(max(1, g.n)), [(0, v) for v in range(g.n)])
    r = verify_embedding(g, e)
    assert r.valid == (g.m == 0)
