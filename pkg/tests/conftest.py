from __future__ import annotations

from functools import lru_cache

import networkx as nx
import pytest
from hypothesis import strategies as st

from psk.graph import Digraph, Graph


# one line per acceptance criterion, printed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


@lru_cache(maxsize=None)
def atlas(max_nodes: int = 7, connected_only: bool = False) -> tuple[Graph, ...]:
    """Every graph on 1..max_nodes vertices up to isomorphism (networkx atlas)."""
    out = []
    for h in nx.graph_atlas_g()[1:]:
        if h.number_of_nodes() > max_nodes:
            continue
        if connected_only and not nx.is_connected(h):
            continue
        out.append(Graph(h.number_of_nodes(), h.edges()))
    return tuple(out)


def kbar(k: int) -> Graph:
    """K_{k,3} with the k-side completed, built by hand (independent of instances)."""
    s = list(range(k))
    b = [k, k + 1, k + 2]
    edges = [(i, j) for i in s for j in s if i < j] + [(i, j) for i in s for j in b]
    return Graph(k + 3, edges)


@st.composite
def graphs(draw, max_n: int = 8, min_n: int = 0) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


@st.composite
def digraphs(draw, max_n: int = 5, min_n: int = 1, oriented: bool = False) -> Digraph:
    n = draw(st.integers(min_n, max_n))
    slots = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.sampled_from(slots), unique=True)) if slots else []
    if oriented:
        kept = set()
        for u, v in chosen:
            if (v, u) not in kept:
                kept.add((u, v))
        chosen = sorted(kept)
    return Digraph(n, chosen, oriented=oriented)


@pytest.fixture
def triangle() -> Graph:
    return Graph.complete(3)


def bounded_digraph(rng, n: int, s: int, density: float = 0.7) -> Digraph:
    """Random oriented digraph with every indegree at most ``s``."""
    arcs = set()
    for v in rng.sample(range(n), n):
        sources = [u for u in range(n) if u != v and (v, u) not in arcs]
        rng.shuffle(sources)
        for u in sources[:s]:
            if rng.random() < density:
                arcs.add((u, v))
    return Digraph(n, sorted(arcs), oriented=True)


def product_guest(d1: Digraph, d2: Digraph, coords):
    """Induced subgraph of the directed product on ``coords``, with its embedding."""
    from psk.products import Embedding, in_directed_product

    coords = list(coords)
    edges = [
        (i, j)
        for i in range(len(coords))
        for j in range(i + 1, len(coords))
        if in_directed_product(d1, d2, coords[i], coords[j])
    ]
    g = Graph(len(coords), edges)
    return g, Embedding(d1, d2, coords, guest=g)
