"""Constructive embeddings into directed products.

* :func:`embed_simple_treewidth` places a simple k-tree, vertex by vertex, in
  the directed product of two oriented digraphs with indegree and treewidth at
  most ``k-1``.
* :func:`embed_outerplanar` is the ``k = 2`` case for (not necessarily
  maximal) outerplanar graphs, whose hosts come out as oriented trees.
* :func:`embed_unbounded_indegree` splits a k-tree by a rainbow colouring and
  hangs each part under a dominant vertex.

Every embedder returns an :class:`~psk.products.Embedding` carrying witness
decompositions for the underlying hosts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import networkx as nx

from .decomposition import (
    ConstructionTrace,
    TreeDecomposition,
    ktree_decomposition,
    rainbow_color_ktree,
    recognize_simple_ktree,
)
from .errors import (
    ArityMismatch,
    InvalidTrace,
    InvariantBroken,
    NotAPartition,
    NotOuterplanar,
    ParameterRange,
)
from .graph import Digraph, Graph

Coord = tuple[int, int]


@dataclass
class SiblingLedger:
    """Big siblings of every diagonal k-clique seen so far, plus used coordinates."""

    diagonal_record: dict[tuple[int, ...], tuple[Coord, Coord]] = field(default_factory=dict)
    used_set: set[Coord] = field(default_factory=set)

    def record(self, clique: Iterable[int], siblings: tuple[Coord, Coord]) -> None:
        self.diagonal_record[tuple(sorted(clique))] = siblings

    def check(self, adj: dict[int, set[int]], at: dict[Coord, int]) -> None:
        """Assert that used siblings see their whole clique and unused ones are not shared."""
        owner: dict[Coord, tuple[int, ...]] = {}
        for clique, siblings in self.diagonal_record.items():
            for s in siblings:
                if s in self.used_set:
                    g = at[s]
                    if any(c != g and c not in adj[g] for c in clique):
                        raise InvariantBroken(f"used big sibling {s} misses part of {clique}")
                else:
                    if s in owner and owner[s] != clique:
                        raise InvariantBroken(
                            f"unused big sibling {s} shared by {owner[s]} and {clique}"
                        )
                    owner[s] = clique


class _Host:
    """A growing oriented digraph together with a witness decomposition."""

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]], bags: list[set[int]]) -> None:
        self.n = n
        self.arcs: list[tuple[int, int]] = list(arcs)
        self.succ: list[set[int]] = [set() for _ in range(n)]
        self.pred: list[set[int]] = [set() for _ in range(n)]
        for u, v in self.arcs:
            self.succ[u].add(v)
            self.pred[v].add(u)
        self.bags: list[frozenset[int]] = [frozenset(b) for b in bags]
        self.tree_edges: list[tuple[int, int]] = [(i, i + 1) for i in range(len(bags) - 1)]

    def sink(self, members: set[int]) -> int:
        sinks = [u for u in members if not (self.succ[u] & members)]
        if len(sinks) != 1:
            raise InvariantBroken(f"projection {sorted(members)} has {len(sinks)} sinks")
        return sinks[0]

    def big_arc(self, members: set[int]) -> tuple[int, int]:
        sink = self.sink(members)
        return self.sink(members - {sink}), sink

    def is_transitive_tournament(self, members: set[int]) -> bool:
        for u, v in combinations(members, 2):
            if (v in self.succ[u]) == (u in self.succ[v]):
                return False
        outdeg = {len(self.succ[u] & members) for u in members}
        return len(outdeg) == len(members)

    def grow(self, sources: set[int]) -> int:
        """Add a vertex with arcs from every vertex of the clique ``sources``."""
        x = self.n
        self.n += 1
        self.succ.append(set())
        self.pred.append(set(sources))
        for u in sorted(sources):
            self.arcs.append((u, x))
            self.succ[u].add(x)
        home = next(i for i, b in enumerate(self.bags) if sources <= b)
        self.bags.append(frozenset(sources) | {x})
        self.tree_edges.append((home, len(self.bags) - 1))
        return x

    def digraph(self) -> Digraph:
        return Digraph(self.n, self.arcs, oriented=True)

    def witness(self) -> TreeDecomposition:
        return TreeDecomposition(self.bags, self.tree_edges, root=0)


def _adjacent(h1: _Host, h2: _Host, x: Coord, y: Coord) -> bool:
    (a, b), (a2, b2) = x, y
    if a == a2:
        return b2 in h2.succ[b] or b in h2.succ[b2]
    if b == b2:
        return a2 in h1.succ[a] or a in h1.succ[a2]
    return (a2 in h1.succ[a] and b2 in h2.succ[b]) or (a in h1.succ[a2] and b in h2.succ[b2])


def _run(trace: ConstructionTrace, check_invariants: bool):
    """Engine shared by both bounded-indegree embedders.

    Returns ``(host1, host2, positions, ledger, case_counts)``.
    """
    k = trace.k
    h1 = _Host(k, combinations(range(k), 2), [set(range(k))])
    h2 = _Host(2, [(0, 1)], [{0, 1}])
    pos: dict[int, Coord] = {}
    at: dict[Coord, int] = {}
    base = trace.base
    for i, v in enumerate(base[:-1]):
        pos[v] = (i, 0)
    pos[base[-1]] = (k - 1, 1)
    for v, c in pos.items():
        at[c] = v
    ledger = SiblingLedger(used_set=set(at))
    adj: dict[int, set[int]] = {v: set(base) - {v} for v in base}
    cases = {"case1": 0, "case2": 0}

    for g, clique in trace.steps:
        coords = [pos[c] for c in clique]
        p1 = {c[0] for c in coords}
        p2 = {c[1] for c in coords}
        if len(p1) == k and len(p2) == k:
            cases["case2"] += 1
            (vi, vj), (wi, wj) = h1.big_arc(p1), h2.big_arc(p2)
            first, second = (vi, wj), (vj, wi)
            if first not in at:
                spot = first
            elif second not in at:
                spot = second
            else:
                raise InvariantBroken(f"both big siblings of {clique} are used")
        else:
            cases["case1"] += 1
            pair = next(
                (i, j)
                for i, j in combinations(range(k), 2)
                if coords[i][0] == coords[j][0] or coords[i][1] == coords[j][1]
            )
            i, j = pair
            if coords[i][0] == coords[j][0]:
                spot = (h1.grow(p1), h2.sink(p2))
            else:
                spot = (h1.sink(p1), h2.grow(p2))
        pos[g] = spot
        at[spot] = g
        ledger.used_set.add(spot)
        adj[g] = set(clique)
        for c in clique:
            adj[c].add(g)

        # new k-cliques all contain g; record the diagonal ones
        for drop in clique:
            new = [c for c in clique if c != drop] + [g]
            q1 = {pos[c][0] for c in new}
            q2 = {pos[c][1] for c in new}
            if check_invariants:
                for c in new[:-1]:
                    if not _adjacent(h1, h2, pos[c], spot):
                        raise InvariantBroken(f"edge {c}-{g} not in the product")
                if not (h1.is_transitive_tournament(q1) and h2.is_transitive_tournament(q2)):
                    raise InvariantBroken(f"projections of {sorted(new)} not transitive")
            if len(q1) == k and len(q2) == k:
                (vi, vj), (wi, wj) = h1.big_arc(q1), h2.big_arc(q2)
                ledger.record(new, ((vi, wj), (vj, wi)))
        if check_invariants:
            limit = k - 1
            if max(len(h1.pred[spot[0]]), len(h2.pred[spot[1]])) > limit:
                raise InvariantBroken(f"indegree above {limit} after placing {g}")
            ledger.check(adj, at)
    return h1, h2, pos, ledger, cases


def embed_simple_treewidth(
    trace: ConstructionTrace, check_invariants: bool = False
):
    """Embed the simple k-tree of ``trace`` (``k >= 2``).

    Both hosts are oriented with indegree at most ``k-1``; the returned
    witnesses are tree-decompositions of the underlying hosts of width at most
    ``k-1``.  With ``check_invariants`` every step re-asserts the construction
    invariants, the sibling ledger included.
    """
    from .products import Embedding

    if trace.k < 2:
        raise ParameterRange("hosts with indegree k-1 = 0 cannot carry any edge; need k >= 2")
    seen = set()
    for _, clique in trace.steps:
        if clique in seen:
            raise InvalidTrace(f"attachment clique {list(clique)} used twice; trace is not simple")
        seen.add(clique)
    h1, h2, pos, _, _ = _run(trace, check_invariants)
    mapping = [pos[v] for v in range(trace.n)]
    return Embedding(
        h1.digraph(), h2.digraph(), mapping, h1.witness(), h2.witness(), trace.graph
    )


def sibling_ledger(trace: ConstructionTrace) -> SiblingLedger:
    """The final sibling ledger of :func:`embed_simple_treewidth` on ``trace``."""
    return _run(trace, False)[3]


def case_counts(trace: ConstructionTrace) -> dict[str, int]:
    return _run(trace, False)[4]


def _triangulate_polygon(cycle: list[int], chords: set[frozenset[int]], out: list[tuple[int, int]]) -> None:
    # split on an existing chord if there is one, otherwise fan from cycle[0]
    stack = [cycle]
    while stack:
        poly = stack.pop()
        if len(poly) <= 3:
            continue
        split = None
        for i, j in combinations(range(len(poly)), 2):
            if j - i >= 2 and not (i == 0 and j == len(poly) - 1):
                if frozenset((poly[i], poly[j])) in chords:
                    split = (i, j)
                    break
        if split is None:
            split = (0, 2)
            out.append((poly[0], poly[2]))
        i, j = split
        stack.append(poly[i : j + 1])
        stack.append(poly[j:] + poly[: i + 1])


def maximal_outerplanar_supergraph(g: Graph) -> Graph:
    """An edge-maximal outerplanar graph on ``V(g)`` containing ``g`` (``n >= 3``).

    ``g`` is outerplanar iff ``g`` plus an apex is planar; the apex rotation
    gives a circular order in which the chords of ``g`` do not cross.
    """
    apex = g.n
    h = nx.Graph()
    h.add_nodes_from(range(g.n + 1))
    h.add_edges_from(g.edges)
    h.add_edges_from((apex, v) for v in g.vertices())
    planar, emb = nx.check_planarity(h)
    if not planar:
        raise NotOuterplanar("graph plus an apex vertex is not planar")
    order = list(emb.neighbors_cw_order(apex))
    edges = set(g.edges)
    for a, b in zip(order, order[1:] + order[:1]):
        edges.add((min(a, b), max(a, b)))
    chords = {frozenset(e) for e in edges}
    extra: list[tuple[int, int]] = []
    _triangulate_polygon(order, chords, extra)
    return Graph(g.n, list(edges) + extra)


def embed_outerplanar(g: Graph, check_invariants: bool = False):
    """Embed an outerplanar graph into the directed product of two oriented trees.

    Both hosts have indegree at most 1.  Non-maximal inputs are first completed
    to a maximal outerplanar graph on the same vertices.
    """
    from .products import Embedding

    if g.n <= 2:
        arc = Digraph(2, [(0, 1)], oriented=True)
        wit = TreeDecomposition([{0, 1}])
        return Embedding(arc, arc, [(0, 0), (1, 0)][: g.n], wit, wit, g)
    full = maximal_outerplanar_supergraph(g)
    trace = recognize_simple_ktree(full, 2)
    if trace is None:
        raise NotOuterplanar("completion is not a simple 2-tree")
    h1, h2, pos, _, _ = _run(trace, check_invariants)
    if check_invariants:
        for h in (h1, h2):
            if len(h.arcs) != h.n - 1 or max(len(p) for p in h.pred) > 1:
                raise InvariantBroken("host is not an in-tree of indegree at most 1")
    mapping = [pos[v] for v in range(g.n)]
    return Embedding(h1.digraph(), h2.digraph(), mapping, h1.witness(), h2.witness(), g)


def partition_by_treewidth(
    trace: ConstructionTrace, p: int, q: int
) -> tuple[list[int], list[int], TreeDecomposition, TreeDecomposition]:
    """Split a k-tree (``k = p+q+1``) into parts of treewidth at most ``p`` and ``q``.

    ``V1`` holds the vertices with rainbow colour at most ``p``.  The witnesses
    are decompositions of ``G[V1]`` and ``G[V2]`` relabelled to ``0..|Vi|-1`` in
    increasing vertex order.
    """
    if p < 0 or q < 0 or trace.k != p + q + 1:
        raise ArityMismatch(f"k={trace.k} but p+q+1={p + q + 1}")
    colour = rainbow_color_ktree(trace)
    v1 = [v for v in range(trace.n) if colour[v] <= p]
    v2 = [v for v in range(trace.n) if colour[v] > p]
    td = ktree_decomposition(trace)
    return v1, v2, _restrict(td, v1), _restrict(td, v2)


def _restrict(td: TreeDecomposition, part: list[int]) -> TreeDecomposition:
    index = {v: i for i, v in enumerate(part)}
    bags = [{index[v] for v in b if v in index} for b in td.bags]
    return TreeDecomposition(bags, td.tree_edges, td.root)


def _with_root(td: TreeDecomposition, r: int) -> TreeDecomposition:
    return TreeDecomposition([b | {r} for b in td.bags], td.tree_edges, td.root)


def embed_dominant(
    g: Graph,
    v1: Iterable[int],
    v2: Iterable[int],
    witness1: TreeDecomposition | None = None,
    witness2: TreeDecomposition | None = None,
):
    """Embed ``g`` into oriented ``G[V1]+`` and ``G[V2]+`` via dominant vertices.

    Host ``i`` is ``G[Vi]`` relabelled to ``0..|Vi|-1`` plus the dominant
    vertex ``ri = |Vi|``.  Arcs leave ``r1``, enter ``r2``, and otherwise point
    from lower to higher id.  ``x`` in ``V1`` sits at ``(x, r2)`` and ``y`` in
    ``V2`` at ``(r1, y)``.  Optional witnesses for ``G[Vi]`` are extended by
    the dominant vertex.
    """
    from .products import Embedding

    part1, part2 = sorted(set(v1)), sorted(set(v2))
    if len(part1) + len(part2) != g.n or set(part1) | set(part2) != set(g.vertices()):
        raise NotAPartition("v1 and v2 must partition the vertex set")
    sub1, _ = g.induced(part1)
    sub2, _ = g.induced(part2)
    r1, r2 = len(part1), len(part2)
    host1 = Digraph(r1 + 1, sub1.sorted_edges() + [(r1, x) for x in range(r1)], oriented=True)
    host2 = Digraph(r2 + 1, sub2.sorted_edges() + [(y, r2) for y in range(r2)], oriented=True)
    mapping: list[Coord] = [(0, 0)] * g.n
    for i, x in enumerate(part1):
        mapping[x] = (i, r2)
    for j, y in enumerate(part2):
        mapping[y] = (r1, j)
    w1 = _with_root(witness1, r1) if witness1 is not None else None
    w2 = _with_root(witness2, r2) if witness2 is not None else None
    return Embedding(host1, host2, mapping, w1, w2, g)


def embed_unbounded_indegree(trace: ConstructionTrace, p: int, q: int):
    """Embed a k-tree with host treewidths at most ``p`` and ``q`` (``p+q >= k+1``).

    Uses a partition into parts of treewidth ``p' = min(p-1, k-1)`` and
    ``q' = k-1-p'`` and then :func:`embed_dominant`.
    """
    k = trace.k
    if p < 1 or q < 1 or p + q < k + 1:
        raise ArityMismatch(f"need p, q >= 1 and p+q >= {k + 1}, got p={p}, q={q}")
    p1 = min(p - 1, k - 1)
    q1 = k - 1 - p1
    v1, v2, w1, w2 = partition_by_treewidth(trace, p1, q1)
    return embed_dominant(trace.graph, v1, v2, w1, w2)
