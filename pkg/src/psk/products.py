"""Strong and directed products, plus embeddings into them with clique diagnostics.

Product vertices are numbered row-major: coordinate ``(a, b)`` of
``H1 x H2`` is vertex ``a * |V(H2)| + b``.  An edge between two coordinates
is *vertical* when they share the second coordinate, *horizontal* when they
share the first, and *diagonal* otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .decomposition import TreeDecomposition, _validity_violation
from .errors import (
    InvalidInput,
    NotAClique,
    NotDiagonal,
    ProjectionsNotTransitive,
)
from .graph import (
    Digraph,
    Graph,
    big_arc,
    is_clique,
    is_transitive_tournament,
    max_indegree,
    underlying,
)

Coord = tuple[int, int]


def coord_to_id(a: int, b: int, n2: int) -> int:
    return a * n2 + b


def id_to_coord(x: int, n2: int) -> Coord:
    return divmod(x, n2)


def strong_product(g1: Graph, g2: Graph) -> Graph:
    n2 = g2.n
    edges = []
    for a in g1.vertices():
        for b, b2 in g2.edges:
            edges.append((a * n2 + b, a * n2 + b2))
    for a, a2 in g1.edges:
        for b in g2.vertices():
            edges.append((a * n2 + b, a2 * n2 + b))
        for b, b2 in g2.edges:
            edges.append((a * n2 + b, a2 * n2 + b2))
            edges.append((a * n2 + b2, a2 * n2 + b))
    return Graph(g1.n * n2, edges)


def directed_product(d1: Digraph, d2: Digraph) -> Digraph:
    n2 = d2.n
    arcs = []
    for a in range(d1.n):
        for b, b2 in d2.arcs:
            arcs.append((a * n2 + b, a * n2 + b2))
    for a, a2 in d1.arcs:
        for b in range(n2):
            arcs.append((a * n2 + b, a2 * n2 + b))
        for b, b2 in d2.arcs:
            arcs.append((a * n2 + b, a2 * n2 + b2))
    # anti-parallel pairs can only come from anti-parallel factor arcs
    return Digraph(d1.n * n2, arcs, oriented=d1.oriented and d2.oriented)


def edge_class(x: Coord, y: Coord) -> str:
    if x == y:
        raise InvalidInput(f"coordinates {x} coincide")
    if x[0] == y[0]:
        return "horizontal"
    if x[1] == y[1]:
        return "vertical"
    return "diagonal"


def in_directed_product(d1: Digraph, d2: Digraph, x: Coord, y: Coord) -> bool:
    """Whether ``x`` and ``y`` are adjacent in the underlying directed product."""
    (a, b), (a2, b2) = x, y
    if a == a2:
        return b != b2 and (d2.has_arc(b, b2) or d2.has_arc(b2, b))
    if b == b2:
        return d1.has_arc(a, a2) or d1.has_arc(a2, a)
    return (d1.has_arc(a, a2) and d2.has_arc(b, b2)) or (
        d1.has_arc(a2, a) and d2.has_arc(b2, b)
    )


def in_strong_product(g1: Graph, g2: Graph, x: Coord, y: Coord) -> bool:
    (a, b), (a2, b2) = x, y
    if x == y:
        return False
    return (a == a2 or g1.has_edge(a, a2)) and (b == b2 or g2.has_edge(b, b2))


class Embedding:
    """Injective map of guest vertices into ``V(host1) x V(host2)``.

    ``map[v]`` is the coordinate of guest vertex ``v``.  ``guest`` is optional
    and only carried so a serialized embedding can be re-verified on its own.
    """

    __slots__ = ("host1", "host2", "map", "witness1", "witness2", "guest")

    def __init__(
        self,
        host1: Digraph,
        host2: Digraph,
        mapping: Sequence[Sequence[int]],
        witness1: TreeDecomposition | None = None,
        witness2: TreeDecomposition | None = None,
        guest: Graph | None = None,
        check: bool = True,
    ) -> None:
        self.host1 = host1
        self.host2 = host2
        self.map: tuple[Coord, ...] = tuple((int(c[0]), int(c[1])) for c in mapping)
        self.witness1 = witness1
        self.witness2 = witness2
        self.guest = guest
        for v, (a, b) in enumerate(self.map):
            if not (0 <= a < host1.n and 0 <= b < host2.n):
                raise InvalidInput(f"vertex {v} mapped outside the hosts to {(a, b)}")
        if check and len(set(self.map)) != len(self.map):
            raise InvalidInput("embedding map is not injective")

    def p1(self, vertices: Iterable[int]) -> frozenset[int]:
        return frozenset(self.map[v][0] for v in vertices)

    def p2(self, vertices: Iterable[int]) -> frozenset[int]:
        return frozenset(self.map[v][1] for v in vertices)

    def used(self) -> frozenset[Coord]:
        return frozenset(self.map)

    def restrict(self, n: int, guest: Graph | None = None) -> Embedding:
        """Keep guest vertices ``0..n-1``."""
        return Embedding(
            self.host1, self.host2, self.map[:n], self.witness1, self.witness2, guest
        )

    def to_dict(self) -> dict:
        doc = {
            "host1": self.host1.to_dict(),
            "host2": self.host2.to_dict(),
            "map": [[v, list(c)] for v, c in enumerate(self.map)],
            "witness1": self.witness1.to_dict() if self.witness1 else None,
            "witness2": self.witness2.to_dict() if self.witness2 else None,
        }
        if self.guest is not None:
            doc["guest"] = self.guest.to_dict()
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> Embedding:
        try:
            pairs = sorted((int(v), c) for v, c in doc["map"])
            if [v for v, _ in pairs] != list(range(len(pairs))):
                raise InvalidInput("map must cover guest vertices 0..n-1 exactly once")
            w1, w2 = doc.get("witness1"), doc.get("witness2")
            guest = doc.get("guest")
            return cls(
                Digraph.from_dict(doc["host1"]),
                Digraph.from_dict(doc["host2"]),
                [c for _, c in pairs],
                TreeDecomposition.from_dict(w1) if w1 else None,
                TreeDecomposition.from_dict(w2) if w2 else None,
                Graph.from_dict(guest) if guest else None,
                check=False,
            )
        except (KeyError, TypeError, IndexError) as exc:
            raise InvalidInput(f"malformed embedding document: {exc}") from exc

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Embedding):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self) -> str:
        return f"Embedding(guest={len(self.map)}, host1={self.host1.n}, host2={self.host2.n})"


@dataclass
class EmbeddingReport:
    valid: bool
    injective: bool
    size_matches: bool
    unembedded_edges: list[tuple[int, int]]
    edge_classes: dict[tuple[int, int], str]
    indegree1: int
    indegree2: int
    witness1_width: int | None = None
    witness2_width: int | None = None
    violations: list[str] = field(default_factory=list)

    def class_counts(self) -> dict[str, int]:
        counts = {"horizontal": 0, "vertical": 0, "diagonal": 0}
        for c in self.edge_classes.values():
            counts[c] += 1
        return counts

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "injective": self.injective,
            "size_matches": self.size_matches,
            "unembedded_edges": [list(e) for e in self.unembedded_edges],
            "class_counts": self.class_counts(),
            "indegree1": self.indegree1,
            "indegree2": self.indegree2,
            "witness1_width": self.witness1_width,
            "witness2_width": self.witness2_width,
            "violations": list(self.violations),
        }


def _verify(g: Graph, e: Embedding, adjacent) -> EmbeddingReport:
    violations = []
    size_matches = len(e.map) == g.n
    if not size_matches:
        violations.append(f"map has {len(e.map)} entries for {g.n} guest vertices")
    injective = len(set(e.map)) == len(e.map)
    if not injective:
        violations.append("map is not injective")
    missing = []
    classes = {}
    if size_matches:
        for u, v in g.sorted_edges():
            x, y = e.map[u], e.map[v]
            if x == y or not adjacent(x, y):
                missing.append((u, v))
            else:
                classes[(u, v)] = edge_class(x, y)
    if missing:
        violations.append(f"{len(missing)} guest edges not in the product, first {missing[0]}")
    widths = []
    for name, host, wit in (("witness1", e.host1, e.witness1), ("witness2", e.host2, e.witness2)):
        if wit is None:
            widths.append(None)
            continue
        problem = _validity_violation(underlying(host), wit)
        if problem is not None:
            violations.append(f"{name}: {problem}")
        widths.append(wit.width())
    return EmbeddingReport(
        valid=not violations,
        injective=injective,
        size_matches=size_matches,
        unembedded_edges=missing,
        edge_classes=classes,
        indegree1=max_indegree(e.host1),
        indegree2=max_indegree(e.host2),
        witness1_width=widths[0],
        witness2_width=widths[1],
        violations=violations,
    )


def verify_embedding(g: Graph, e: Embedding) -> EmbeddingReport:
    """Certificate check against the underlying directed product of the hosts."""
    return _verify(g, e, lambda x, y: in_directed_product(e.host1, e.host2, x, y))


def verify_strong_embedding(g: Graph, e: Embedding) -> EmbeddingReport:
    """Same check against the strong product of the underlying hosts."""
    h1, h2 = underlying(e.host1), underlying(e.host2)
    return _verify(g, e, lambda x, y: in_strong_product(h1, h2, x, y))


class ProjectionProfile(NamedTuple):
    p: int
    q: int
    host_cliques: bool


def projection_profile(e: Embedding, c: Iterable[int]) -> ProjectionProfile:
    """``(|P1(c)|, |P2(c)|)`` and whether both projections are host cliques."""
    members = list(c)
    a, b = e.p1(members), e.p2(members)
    cliques = is_clique(underlying(e.host1), a) and is_clique(underlying(e.host2), b)
    return ProjectionProfile(len(a), len(b), cliques)


def is_diagonal_clique(e: Embedding, c: Iterable[int]) -> bool:
    members = list(c)
    return len(e.p1(members)) == len(members) == len(e.p2(members))


def attached_vertices(g: Graph, c: Iterable[int]) -> list[int]:
    members = set(c)
    if not members:
        return [v for v in g.vertices()]
    first = min(members)
    return sorted(
        v for v in g.adj[first] if v not in members and all(v in g.adj[w] for w in members)
    )


def attachment_count(g: Graph, c: Iterable[int]) -> int:
    return len(attached_vertices(g, c))


def _attractive(d: Digraph, proj: frozenset[int], target: int) -> bool:
    """Every arc between ``proj - target`` and ``target`` points at ``target``."""
    return not any(d.has_arc(target, z) for z in proj if z != target)


@dataclass
class CliqueDiagnostics:
    clique: tuple[int, ...]
    profile: tuple[int, int]
    redundant1: dict[int, bool]
    redundant2: dict[int, bool]
    attractive1: dict[int, bool]
    attractive2: dict[int, bool]
    attached: tuple[int, ...]
    diagonal: dict[int, bool]
    magnetic1: dict[int, bool]
    magnetic2: dict[int, bool]

    @property
    def attachment_count(self) -> int:
        return len(self.attached)

    def redundant(self, v: int) -> bool:
        return self.redundant1[v] and self.redundant2[v]

    def bad_vertices(self) -> list[int]:
        """Attached vertices that are diagonal or magnetic."""
        return [
            v for v in self.attached if self.diagonal[v] or self.magnetic1[v] or self.magnetic2[v]
        ]

    def to_dict(self) -> dict:
        def flags(d: dict[int, bool]) -> list[int]:
            return sorted(v for v, f in d.items() if f)

        return {
            "clique": list(self.clique),
            "profile": list(self.profile),
            "attachment_count": self.attachment_count,
            "redundant1": flags(self.redundant1),
            "redundant2": flags(self.redundant2),
            "attractive1": flags(self.attractive1),
            "attractive2": flags(self.attractive2),
            "attached": list(self.attached),
            "diagonal": flags(self.diagonal),
            "magnetic1": flags(self.magnetic1),
            "magnetic2": flags(self.magnetic2),
        }


def clique_diagnostics(g: Graph, e: Embedding, c: Iterable[int]) -> CliqueDiagnostics:
    """Redundant/attractive flags on ``c`` and diagonal/magnetic flags on its attachments."""
    members = tuple(sorted(set(c)))
    if not members or not is_clique(g, members):
        raise NotAClique(f"{list(members)} is not a clique")
    pos = e.map
    a, b = e.p1(members), e.p2(members)
    red1 = {v: any(w != v and pos[w][0] == pos[v][0] for w in members) for v in members}
    red2 = {v: any(w != v and pos[w][1] == pos[v][1] for w in members) for v in members}
    att1 = {v: _attractive(e.host1, a, pos[v][0]) for v in members}
    att2 = {v: _attractive(e.host2, b, pos[v][1]) for v in members}
    attached = tuple(attached_vertices(g, members))
    diag, mag1, mag2 = {}, {}, {}
    for v in attached:
        x, y = pos[v]
        in1, in2 = x in a, y in b
        diag[v] = not in1 and not in2
        outside_box = not (in1 and in2)
        # (C,P1)-magnetic: in the P2(C)-strip and (C+v, P1)-attractive
        mag1[v] = outside_box and in2 and _attractive(e.host1, a | {x}, x)
        mag2[v] = outside_box and in1 and _attractive(e.host2, b | {y}, y)
    return CliqueDiagnostics(
        clique=members,
        profile=(len(a), len(b)),
        redundant1=red1,
        redundant2=red2,
        attractive1=att1,
        attractive2=att2,
        attached=attached,
        diagonal=diag,
        magnetic1=mag1,
        magnetic2=mag2,
    )


class BigDiagonalEdge(NamedTuple):
    edge: tuple[int, int]
    siblings: tuple[Coord, Coord]


def big_diagonal_edge(g: Graph, e: Embedding, d: Iterable[int]) -> BigDiagonalEdge:
    """The edge of diagonal clique ``d`` whose factor arcs are both big arcs.

    ``siblings`` lists ``(v_i, w_j)`` then ``(v_j, w_i)`` for the edge
    ``(v_i, w_i)(v_j, w_j)`` with ``v_i -> v_j`` the big arc of host 1.
    """
    members = sorted(set(d))
    if not is_clique(g, members):
        raise NotAClique(f"{members} is not a clique")
    if len(members) < 2 or not is_diagonal_clique(e, members):
        raise NotDiagonal(f"{members} is not a diagonal clique")
    a, b = e.p1(members), e.p2(members)
    if not (is_transitive_tournament(e.host1, a) and is_transitive_tournament(e.host2, b)):
        raise ProjectionsNotTransitive(f"projections of {members} are not transitive tournaments")
    vi, vj = big_arc(e.host1, a)
    wi, wj = big_arc(e.host2, b)
    where = {e.map[v]: v for v in members}
    if (vi, wi) not in where or (vj, wj) not in where:
        raise InvalidInput(f"big arcs of {members} do not meet in a clique edge")
    u, v = where[(vi, wi)], where[(vj, wj)]
    return BigDiagonalEdge((min(u, v), max(u, v)), ((vi, wj), (vj, wi)))


def product_to_dot(d1: Digraph, d2: Digraph, highlight: Iterable[Coord] = ()) -> str:
    """Directed product as DOT, diagonal arcs red, highlighted coordinates filled."""
    n2 = d2.n
    marked = set(highlight)
    prod = directed_product(d1, d2)
    lines = ["digraph P {", "  node [shape=box];"]
    for x in range(prod.n):
        a, b = id_to_coord(x, n2)
        style = ' style=filled fillcolor="lightblue"' if (a, b) in marked else ""
        lines.append(f'  {x} [label="({a},{b})"{style}];')
    for x, y in prod.sorted_arcs():
        colour = ' [color="red"]' if edge_class(id_to_coord(x, n2), id_to_coord(y, n2)) == "diagonal" else ""
        lines.append(f"  {x} -> {y}{colour};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def embedding_to_dot(e: Embedding) -> str:
    return product_to_dot(e.host1, e.host2, e.map)


__all__ = [
    "BigDiagonalEdge",
    "CliqueDiagnostics",
    "Embedding",
    "EmbeddingReport",
    "ProjectionProfile",
    "attached_vertices",
    "attachment_count",
    "big_diagonal_edge",
    "clique_diagnostics",
    "coord_to_id",
    "directed_product",
    "edge_class",
    "embedding_to_dot",
    "id_to_coord",
    "in_directed_product",
    "in_strong_product",
    "is_diagonal_clique",
    "product_to_dot",
    "projection_profile",
    "strong_product",
    "verify_embedding",
    "verify_strong_embedding",
]

