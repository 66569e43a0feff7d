"""Undirected graphs and digraphs with clique and tournament predicates.

Vertices are dense integer ids ``0..n-1``.  Both graph types are immutable;
derived structures (adjacency sets) are computed lazily and cached.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvalidInput, NotTransitiveTournament, TooSmall

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Finite simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "__dict__")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()) -> None:
        if n < 0:
            raise InvalidInput(f"vertex count must be nonnegative, got {n}")
        normalized = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise InvalidInput(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInput(f"edge {(u, v)} out of range for n={n}")
            normalized.add(_edge(u, v))
        self.n = n
        self.edges: frozenset[Edge] = frozenset(normalized)

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, combinations(range(n), 2))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls(n, [(i, (i + 1) % n) for i in range(n)] if n >= 3 else ())

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def add_edges(self, extra: Iterable[Sequence[int]]) -> Graph:
        return Graph(self.n, list(self.edges) + [tuple(e) for e in extra])

    def add_vertices(self, count: int) -> Graph:
        return Graph(self.n + count, self.edges)

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph relabelled to ``0..len-1``; returns it with the old ids."""
        order = sorted(set(vertices))
        index = {v: i for i, v in enumerate(order)}
        sub = [
            (index[u], index[v]) for u, v in self.edges if u in index and v in index
        ]
        return Graph(len(order), sub), order

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in self.adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_dict(cls, doc: dict) -> Graph:
        try:
            return cls(int(doc["n"]), doc["edges"])
        except (KeyError, TypeError, IndexError) as exc:
            raise InvalidInput(f"malformed graph document: {exc}") from exc

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class Digraph:
    """Finite digraph without self-loops.

    Anti-parallel arcs are allowed unless ``oriented`` is set, in which case
    the claim is validated at construction.
    """

    __slots__ = ("n", "arcs", "oriented", "__dict__")

    def __init__(
        self, n: int, arcs: Iterable[Sequence[int]] = (), oriented: bool = False
    ) -> None:
        if n < 0:
            raise InvalidInput(f"vertex count must be nonnegative, got {n}")
        normalized = set()
        for a in arcs:
            u, v = int(a[0]), int(a[1])
            if u == v:
                raise InvalidInput(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInput(f"arc {(u, v)} out of range for n={n}")
            normalized.add((u, v))
        if oriented:
            for u, v in normalized:
                if (v, u) in normalized:
                    raise InvalidInput(f"anti-parallel pair {u}<->{v} in oriented digraph")
        self.n = n
        self.arcs: frozenset[Edge] = frozenset(normalized)
        self.oriented = bool(oriented)

    @cached_property
    def succ(self) -> tuple[frozenset[int], ...]:
        out: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.arcs:
            out[u].add(v)
        return tuple(frozenset(s) for s in out)

    @cached_property
    def pred(self) -> tuple[frozenset[int], ...]:
        inc: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.arcs:
            inc[v].add(u)
        return tuple(frozenset(s) for s in inc)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def indegree(self, v: int) -> int:
        return len(self.pred[v])

    def is_oriented(self) -> bool:
        """Whether the arc set actually has no anti-parallel pair."""
        return all((v, u) not in self.arcs for u, v in self.arcs)

    def sorted_arcs(self) -> list[Edge]:
        return sorted(self.arcs)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "arcs": [list(a) for a in self.sorted_arcs()],
            "oriented": self.oriented,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> Digraph:
        try:
            return cls(int(doc["n"]), doc["arcs"], bool(doc.get("oriented", False)))
        except (KeyError, TypeError, IndexError) as exc:
            raise InvalidInput(f"malformed digraph document: {exc}") from exc

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return (self.n, self.arcs, self.oriented) == (other.n, other.arcs, other.oriented)

    def __hash__(self) -> int:
        return hash((self.n, self.arcs, self.oriented))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={len(self.arcs)}, oriented={self.oriented})"


def transitive_tournament(n: int) -> Digraph:
    """Arcs ``i -> j`` for all ``i < j``."""
    return Digraph(n, combinations(range(n), 2), oriented=True)


def underlying(d: Digraph) -> Graph:
    return Graph(d.n, d.arcs)


def max_indegree(d: Digraph) -> int:
    return max((len(p) for p in d.pred), default=0)


def is_clique(g: Graph, s: Iterable[int]) -> bool:
    members = list(s)
    adj = g.adj
    return all(v in adj[u] for u, v in combinations(members, 2))


def maximal_cliques(g: Graph) -> list[tuple[int, ...]]:
    """All maximal cliques (Bron-Kerbosch with Tomita pivoting), sorted."""
    adj = g.adj
    found: list[tuple[int, ...]] = []
    # explicit stack: (R, P, X)
    stack: list[tuple[list[int], set[int], set[int]]] = [([], set(g.vertices()), set())]
    while stack:
        r, p, x = stack.pop()
        if not p:
            if not x:
                found.append(tuple(sorted(r)))
            continue
        pivot = max(p | x, key=lambda u: (len(adj[u] & p), -u))
        for v in sorted(p - adj[pivot]):
            stack.append((r + [v], p & adj[v], x & adj[v]))
            p = p - {v}
            x = x | {v}
    found.sort()
    return found


def cliques_of_size(g: Graph, k: int) -> list[tuple[int, ...]]:
    """All ``k``-cliques, each sorted, in lexicographic order."""
    if k < 1:
        raise InvalidInput(f"clique size must be >= 1, got {k}")
    out: set[tuple[int, ...]] = set()
    for c in maximal_cliques(g):
        if len(c) >= k:
            out.update(combinations(c, k))
    return sorted(out)


def is_transitive_tournament(d: Digraph, s: Iterable[int]) -> bool:
    members = sorted(set(s))
    if len(members) <= 1:
        return True
    for u, v in combinations(members, 2):
        if d.has_arc(u, v) == d.has_arc(v, u):
            return False
    # a tournament is transitive iff its outdegrees are pairwise distinct
    inside = set(members)
    outdeg = [len(d.succ[u] & inside) for u in members]
    return len(set(outdeg)) == len(members)


def sink_of(d: Digraph, s: Iterable[int]) -> int:
    members = set(s)
    if not members or not is_transitive_tournament(d, members):
        raise NotTransitiveTournament(f"{sorted(members)} does not induce a transitive tournament")
    return next(v for v in sorted(members) if not (d.succ[v] & members))


def big_arc(d: Digraph, s: Iterable[int]) -> Edge:
    """The arc into the sink from the unique vertex of outdegree 1."""
    members = set(s)
    if len(members) < 2:
        raise TooSmall("big arc needs at least two vertices")
    sink = sink_of(d, members)
    source = sink_of(d, members - {sink})
    return (source, sink)


def graph_to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in g.vertices()]
    lines += [f"  {u} -- {v};" for u, v in g.sorted_edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def digraph_to_dot(d: Digraph, name: str = "D") -> str:
    lines = [f"digraph {name} {{"]
    lines += [f"  {v};" for v in range(d.n)]
    lines += [f"  {u} -> {v};" for u, v in d.sorted_arcs()]
    lines.append("}")
    return "\n".join(lines) + "\n"
