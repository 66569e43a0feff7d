"""Tree-decompositions, (simple) k-tree construction traces and conversions.

The central routine is :func:`normalize_to_smooth_simple`, which turns any
k-simple tree-decomposition into a normal, k-simple, k-smooth one by local
improvement of a depth-weighted score.  Its companions convert such a
decomposition into a simple k-tree supergraph and back.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .errors import (
    InvalidInput,
    InvalidTrace,
    NormalizationStuck,
    NotSimple,
    ParameterRange,
    PreconditionViolated,
    TooSmall,
    Unrooted,
    WidthExceeded,
)
from .graph import Graph, is_clique


class TreeDecomposition:
    """A tree whose nodes ``0..node_count-1`` carry bags of graph vertices.

    Only the tree structure is validated here; whether the bags decompose a
    particular graph is checked by :func:`verify_decomposition`.
    """

    __slots__ = ("bags", "tree_edges", "root", "__dict__")

    def __init__(
        self,
        bags: Sequence[Iterable[int]],
        tree_edges: Iterable[Sequence[int]] = (),
        root: int | None = None,
    ) -> None:
        self.bags: tuple[frozenset[int], ...] = tuple(frozenset(int(v) for v in b) for b in bags)
        n = len(self.bags)
        if n == 0:
            raise InvalidInput("a tree-decomposition needs at least one node")
        edges = set()
        for e in tree_edges:
            x, y = int(e[0]), int(e[1])
            if x == y or not (0 <= x < n and 0 <= y < n):
                raise InvalidInput(f"bad tree edge {(x, y)}")
            edges.add((min(x, y), max(x, y)))
        if len(edges) != n - 1:
            raise InvalidInput(f"{n} nodes need {n - 1} tree edges, got {len(edges)}")
        self.tree_edges: frozenset[tuple[int, int]] = frozenset(edges)
        if root is not None and not 0 <= root < n:
            raise InvalidInput(f"root {root} out of range")
        self.root = root
        if len(self._bfs(0)[0]) != n:
            raise InvalidInput("tree edges do not form a connected tree")

    @property
    def node_count(self) -> int:
        return len(self.bags)

    @cached_property
    def nbrs(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.bags]
        for x, y in self.tree_edges:
            out[x].append(y)
            out[y].append(x)
        return tuple(tuple(sorted(s)) for s in out)

    def _bfs(self, start: int) -> tuple[list[int], dict[int, int | None]]:
        nbrs: dict[int, list[int]] = {i: [] for i in range(len(self.bags))}
        for x, y in self.tree_edges:
            nbrs[x].append(y)
            nbrs[y].append(x)
        order = [start]
        parent: dict[int, int | None] = {start: None}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in sorted(nbrs[x]):
                if y not in parent:
                    parent[y] = x
                    order.append(y)
                    queue.append(y)
        return order, parent

    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1

    def rooted(self, root: int) -> TreeDecomposition:
        return TreeDecomposition(self.bags, self.tree_edges, root)

    def bfs_order(self) -> tuple[list[int], dict[int, int | None]]:
        """BFS from the root (node 0 if unrooted), children visited by id."""
        return self._bfs(self.root if self.root is not None else 0)

    def depths(self) -> list[int]:
        order, parent = self.bfs_order()
        depth = [0] * self.node_count
        for x in order[1:]:
            depth[x] = depth[parent[x]] + 1
        return depth

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.tree_edges)

    def to_dict(self) -> dict:
        return {
            "nodes": self.node_count,
            "tree_edges": [list(e) for e in self.sorted_edges()],
            "bags": [sorted(b) for b in self.bags],
            "root": self.root,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> TreeDecomposition:
        try:
            bags = doc["bags"]
            if int(doc["nodes"]) != len(bags):
                raise InvalidInput("'nodes' disagrees with number of bags")
            return cls(bags, doc["tree_edges"], doc.get("root"))
        except (KeyError, TypeError, IndexError) as exc:
            raise InvalidInput(f"malformed decomposition document: {exc}") from exc

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TreeDecomposition):
            return NotImplemented
        return (self.bags, self.tree_edges, self.root) == (other.bags, other.tree_edges, other.root)

    def __hash__(self) -> int:
        return hash((self.bags, self.tree_edges, self.root))

    def __repr__(self) -> str:
        return f"TreeDecomposition(nodes={self.node_count}, width={self.width()}, root={self.root})"


class ConstructionTrace:
    """Build order of a k-tree: a base (k+1)-clique, then (vertex, k-clique) steps.

    With ``simple=True`` no attachment clique may be used twice.
    """

    __slots__ = ("k", "base", "steps", "simple", "__dict__")

    def __init__(
        self,
        k: int,
        base: Iterable[int],
        steps: Iterable[tuple[int, Iterable[int]]] = (),
        simple: bool = True,
    ) -> None:
        self.k = int(k)
        self.base: tuple[int, ...] = tuple(sorted(int(v) for v in base))
        self.steps: tuple[tuple[int, tuple[int, ...]], ...] = tuple(
            (int(v), tuple(sorted(int(c) for c in clique))) for v, clique in steps
        )
        self.simple = bool(simple)
        self._validate()

    def _validate(self) -> None:
        k = self.k
        if k < 1:
            raise InvalidTrace(f"k must be >= 1, got {k}")
        if len(set(self.base)) != k + 1:
            raise InvalidTrace(f"base must have {k + 1} distinct vertices")
        placed = set(self.base)
        adj: dict[int, set[int]] = {v: set(placed) - {v} for v in placed}
        used: set[tuple[int, ...]] = set()
        for v, clique in self.steps:
            if v in placed:
                raise InvalidTrace(f"vertex {v} added twice")
            if len(set(clique)) != k:
                raise InvalidTrace(f"attachment of {v} is not a {k}-set")
            if any(c not in placed for c in clique):
                raise InvalidTrace(f"attachment of {v} uses unplaced vertices")
            if any(b not in adj[a] for a, b in combinations(clique, 2)):
                raise InvalidTrace(f"attachment {clique} of {v} is not a clique")
            if self.simple and clique in used:
                raise InvalidTrace(f"clique {clique} used twice in a simple trace")
            used.add(clique)
            placed.add(v)
            adj[v] = set(clique)
            for c in clique:
                adj[c].add(v)
        if placed != set(range(len(placed))):
            raise InvalidTrace("trace vertices must be exactly 0..n-1")

    @property
    def n(self) -> int:
        return self.k + 1 + len(self.steps)

    def order(self) -> list[int]:
        return list(self.base) + [v for v, _ in self.steps]

    @cached_property
    def graph(self) -> Graph:
        edges = list(combinations(self.base, 2))
        for v, clique in self.steps:
            edges.extend((v, c) for c in clique)
        return Graph(self.n, edges)

    def prefix(self, t: int) -> ConstructionTrace:
        """Trace of the first ``t`` steps (vertex ids must stay dense, so relabel)."""
        vertices = self.order()[: self.k + 1 + t]
        index = {v: i for i, v in enumerate(sorted(vertices))}
        return ConstructionTrace(
            self.k,
            [index[v] for v in self.base],
            [(index[v], [index[c] for c in cl]) for v, cl in self.steps[:t]],
            self.simple,
        )

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "base": list(self.base),
            "steps": [{"v": v, "clique": list(c)} for v, c in self.steps],
            "simple": self.simple,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> ConstructionTrace:
        try:
            steps = [(s["v"], s["clique"]) for s in doc["steps"]]
            return cls(doc["k"], doc["base"], steps, bool(doc.get("simple", True)))
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed trace document: {exc}") from exc

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConstructionTrace):
            return NotImplemented
        return (self.k, self.base, self.steps, self.simple) == (
            other.k,
            other.base,
            other.steps,
            other.simple,
        )

    def __hash__(self) -> int:
        return hash((self.k, self.base, self.steps, self.simple))

    def __repr__(self) -> str:
        return f"ConstructionTrace(k={self.k}, n={self.n}, simple={self.simple})"


@dataclass
class DecompositionReport:
    is_valid: bool
    width: int
    is_normal: bool
    is_k_simple: bool
    is_k_smooth: bool
    is_k_fine: bool
    violations: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "is_valid": self.is_valid,
            "width": self.width,
            "is_normal": self.is_normal,
            "is_k_simple": self.is_k_simple,
            "is_k_smooth": self.is_k_smooth,
            "is_k_fine": self.is_k_fine,
            "violations": dict(sorted(self.violations.items())),
        }


def _validity_violation(g: Graph, td: TreeDecomposition) -> str | None:
    for x, bag in enumerate(td.bags):
        bad = [v for v in bag if not 0 <= v < g.n]
        if bad:
            return f"bag {x} holds non-vertex {bad[0]}"
    holders: list[list[int]] = [[] for _ in range(g.n)]
    for x, bag in enumerate(td.bags):
        for v in bag:
            holders[v].append(x)
    for v in g.vertices():
        nodes = holders[v]
        if not nodes:
            return f"vertex {v} is in no bag"
        inside = set(nodes)
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            x = stack.pop()
            for y in td.nbrs[x]:
                if y in inside and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(inside):
            return f"bags holding vertex {v} are disconnected"
    for u, v in g.sorted_edges():
        if not any(u in b and v in b for b in td.bags):
            return f"edge {(u, v)} is not covered"
    return None


def _normality_violation(td: TreeDecomposition) -> str | None:
    for x, y in combinations(range(td.node_count), 2):
        if td.bags[x] <= td.bags[y] or td.bags[y] <= td.bags[x]:
            return f"bags {x} and {y} are nested"
    return None


def _simplicity_violation(td: TreeDecomposition, k: int) -> str | None:
    if td.width() > k:
        return f"width {td.width()} exceeds {k}"
    counts: Counter[tuple[int, ...]] = Counter()
    for bag in td.bags:
        counts.update(combinations(sorted(bag), k))
    for s, c in sorted(counts.items()):
        if c > 2:
            return f"{k}-set {list(s)} lies in {c} bags"
    return None


def _smoothness_violation(td: TreeDecomposition, k: int) -> str | None:
    for x, bag in enumerate(td.bags):
        if len(bag) != k + 1:
            return f"bag {x} has size {len(bag)}"
    for x, y in td.sorted_edges():
        if len(td.bags[x] & td.bags[y]) != k:
            return f"adjacent bags {x},{y} share {len(td.bags[x] & td.bags[y])} vertices"
    return None


def verify_decomposition(g: Graph, td: TreeDecomposition, k: int) -> DecompositionReport:
    """Check the decomposition axioms and the normal/simple/smooth/fine flags.

    For an unrooted decomposition ``is_k_fine`` reports whether some node could
    serve as a k-fine root, i.e. whether any bag has size ``k+1``.
    """
    violations: dict[str, str] = {}
    checks = {
        "is_valid": _validity_violation(g, td),
        "is_normal": _normality_violation(td),
        "is_k_simple": _simplicity_violation(td, k),
        "is_k_smooth": _smoothness_violation(td, k),
    }
    if td.root is not None:
        size = len(td.bags[td.root])
        checks["is_k_fine"] = None if size == k + 1 else f"root bag has size {size}"
    else:
        fine = any(len(b) == k + 1 for b in td.bags)
        checks["is_k_fine"] = None if fine else f"no bag of size {k + 1}"
    for name, problem in checks.items():
        if problem is not None:
            violations[name] = problem
    return DecompositionReport(
        is_valid=checks["is_valid"] is None,
        width=td.width(),
        is_normal=checks["is_normal"] is None,
        is_k_simple=checks["is_k_simple"] is None,
        is_k_smooth=checks["is_k_smooth"] is None,
        is_k_fine=checks["is_k_fine"] is None,
        violations=violations,
    )


def nodes_containing(td: TreeDecomposition, s: Iterable[int]) -> frozenset[int]:
    target = frozenset(s)
    return frozenset(x for x, bag in enumerate(td.bags) if target <= bag)


def score(td: TreeDecomposition) -> int:
    """Sum over nodes of ``(depth + 1) * |bag|``."""
    if td.root is None:
        raise Unrooted("score needs a rooted decomposition")
    return sum((d + 1) * len(b) for d, b in zip(td.depths(), td.bags))


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------


class _Work:
    """Mutable tree-decomposition used by the normalizer."""

    def __init__(self, td: TreeDecomposition, k: int) -> None:
        self.k = k
        self.bags: dict[int, set[int]] = {i: set(b) for i, b in enumerate(td.bags)}
        self.nbrs: dict[int, set[int]] = {i: set() for i in self.bags}
        for x, y in td.tree_edges:
            self.nbrs[x].add(y)
            self.nbrs[y].add(x)
        self.next_id = td.node_count
        self.counts: Counter[frozenset[int]] = Counter()
        for bag in self.bags.values():
            self._count(bag, +1)
        self.root: int | None = None
        self.parent: dict[int, int | None] = {}
        self.children: dict[int, set[int]] = {}

    def _count(self, bag: Iterable[int], sign: int) -> None:
        for s in combinations(sorted(bag), self.k):
            self.counts[frozenset(s)] += sign

    def simple_after_growth(self, old: set[int], new: set[int]) -> bool:
        """Would replacing bag ``old`` by ``new`` (a superset) keep k-simplicity?"""
        if len(new) > self.k + 1:
            return False
        for s in combinations(sorted(new), self.k):
            fs = frozenset(s)
            if not fs <= old and self.counts[fs] + 1 > 2:
                return False
        return True

    def set_bag(self, x: int, bag: set[int]) -> None:
        self._count(self.bags[x], -1)
        self.bags[x] = bag
        self._count(bag, +1)

    # phase (a)
    def contract_nested(self) -> bool:
        for x in sorted(self.bags):
            for y in sorted(self.nbrs[x]):
                if self.bags[x] <= self.bags[y]:
                    self._absorb(x, y)
                    return True
        return False

    def _absorb(self, x: int, y: int) -> None:
        for z in self.nbrs.pop(x):
            self.nbrs[z].discard(x)
            if z != y:
                self.nbrs[z].add(y)
                self.nbrs[y].add(z)
        self._count(self.bags.pop(x), -1)

    # phase (b)
    def grow_to_full(self) -> None:
        while max(len(b) for b in self.bags.values()) <= self.k:
            size = max(len(b) for b in self.bags.values())
            x = min(i for i, b in self.bags.items() if len(b) == size)
            y = min(self.nbrs[x])
            v = min(self.bags[y] - self.bags[x])
            grown = self.bags[x] | {v}
            if not self.simple_after_growth(self.bags[x], grown):
                raise NormalizationStuck("bag growth broke k-simplicity")
            self.set_bag(x, grown)
            while self.contract_nested():
                pass

    def compact(self) -> None:
        ids = sorted(self.bags)
        index = {old: new for new, old in enumerate(ids)}
        self.bags = {index[i]: self.bags[i] for i in ids}
        self.nbrs = {index[i]: {index[j] for j in self.nbrs[i]} for i in ids}
        self.next_id = len(ids)

    def set_root(self, root: int) -> None:
        self.root = root
        self.parent = {root: None}
        self.children = {x: set() for x in self.bags}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in sorted(self.nbrs[x]):
                if y not in self.parent:
                    self.parent[y] = x
                    self.children[x].add(y)
                    queue.append(y)

    def _link(self, child: int, parent: int) -> None:
        self.parent[child] = parent
        self.children[parent].add(child)
        self.nbrs[child].add(parent)
        self.nbrs[parent].add(child)

    def _unlink(self, child: int) -> None:
        parent = self.parent[child]
        self.children[parent].discard(child)
        self.nbrs[child].discard(parent)
        self.nbrs[parent].discard(child)

    def depths_and_weights(self) -> tuple[dict[int, int], dict[int, int]]:
        depth = {self.root: 0}
        order = [self.root]
        for x in order:
            for c in self.children[x]:
                depth[c] = depth[x] + 1
                order.append(c)
        weight = {}
        for x in reversed(order):
            weight[x] = len(self.bags[x]) + sum(weight[c] for c in self.children[x])
        return depth, weight

    def score(self) -> int:
        depth, _ = self.depths_and_weights()
        return sum((depth[x] + 1) * len(b) for x, b in self.bags.items())

    def is_normal_with(self, x: int, bag: set[int], against: Iterable[int]) -> bool:
        return all(not (bag <= self.bags[z] or self.bags[z] <= bag) for z in against)

    # phase (d) moves; each returns a move name when it applied one
    def try_rebalance(self, weight: dict[int, int]) -> str | None:
        for x in sorted(self.bags):
            y = self.parent[x]
            if y is None:
                continue
            sep = self.bags[x] & self.bags[y]
            for z in sorted(self.children[x]):
                if not sep <= self.bags[z]:
                    continue
                gain = weight[x] - weight[z] - weight[z]
                if gain > 0:
                    self._unlink(x)
                    self._unlink(z)
                    self._link(z, y)
                    self._link(x, z)
                    return "rebalance-rehang"
        return None

    def try_deepen(self) -> str | None:
        for x in sorted(self.bags):
            y = self.parent[x]
            if y is None:
                continue
            sep = self.bags[x] & self.bags[y]
            for z in sorted(self.children[y]):
                if z != x and sep <= self.bags[z]:
                    self._unlink(x)
                    self._link(x, z)
                    return "deepen-rehang"
        return None

    def try_fill(self) -> str | None:
        for x in sorted(self.bags):
            y = self.parent[x]
            if y is None or len(self.bags[x]) > self.k:
                continue
            for v in sorted(self.bags[y] - self.bags[x]):
                grown = self.bags[x] | {v}
                if not self.is_normal_with(x, grown, self.nbrs[x]):
                    continue
                if not self.simple_after_growth(self.bags[x], grown):
                    continue
                self.set_bag(x, grown)
                return "bag-fill"
        return None

    def try_subdivide(self) -> str | None:
        for x in sorted(self.bags):
            y = self.parent[x]
            if y is None:
                continue
            bx, by = self.bags[x], self.bags[y]
            only_x, only_y = sorted(bx - by), sorted(by - bx)
            if len(only_x) < 2 or len(only_y) < 2:
                continue
            sep = bx & by
            for u in only_x:
                for v in only_y:
                    new = sep | {u, v}
                    if len(new) > self.k + 1:
                        continue
                    if not self.is_normal_with(-1, new, (x, y)):
                        continue
                    if not self.simple_after_growth(set(), new):
                        continue
                    z = self.next_id
                    self.next_id += 1
                    self.bags[z] = new
                    self._count(new, +1)
                    self.nbrs[z] = set()
                    self.children[z] = set()
                    self._unlink(x)
                    self._link(z, y)
                    self._link(x, z)
                    return "edge-subdivision"
        return None

    def freeze(self) -> TreeDecomposition:
        ids = sorted(self.bags)
        index = {old: new for new, old in enumerate(ids)}
        edges = {
            (min(index[x], index[y]), max(index[x], index[y]))
            for x in ids
            for y in self.nbrs[x]
        }
        root = index[self.root] if self.root is not None else None
        return TreeDecomposition([self.bags[i] for i in ids], edges, root)


def normalize_to_smooth_simple(
    g: Graph,
    td: TreeDecomposition,
    k: int,
    log: list[tuple[str, int]] | None = None,
) -> TreeDecomposition:
    """Turn a k-simple decomposition into a normal, k-simple, k-smooth rooted one.

    Phases: contract nested neighbours; grow a bag to ``k+1`` if none is that
    large; root at the lowest-id full bag; then apply score-increasing moves
    (rebalance-rehang, deepen-rehang, bag-fill, edge-subdivision) until none
    applies.  If ``log`` is given, every applied move is appended together with
    the score after it (score is ``-1`` before a root is chosen).
    """
    if k < 1:
        raise ParameterRange(f"k must be >= 1, got {k}")
    if g.n <= k:
        raise TooSmall(f"need at least {k + 1} vertices, graph has {g.n}")
    problem = _validity_violation(g, td)
    if problem is not None:
        raise InvalidInput(f"not a tree-decomposition of the graph: {problem}")
    problem = _simplicity_violation(td, k)
    if problem is not None:
        raise NotSimple(problem)

    work = _Work(td, k)
    while work.contract_nested():
        if log is not None:
            log.append(("contraction", -1))
    before = len(work.bags)
    work.grow_to_full()
    if log is not None and len(work.bags) != before:
        log.append(("bag-growth", -1))
    work.compact()
    work.set_root(min(x for x, b in work.bags.items() if len(b) == k + 1))

    bound = (k + 1) * g.n * (g.n + 1)
    current = work.score()
    while True:
        _, weight = work.depths_and_weights()
        move = (
            work.try_rebalance(weight)
            or work.try_deepen()
            or work.try_fill()
            or work.try_subdivide()
        )
        if move is None:
            break
        new_score = work.score()
        if new_score <= current or new_score > bound:
            raise NormalizationStuck(f"{move} moved score {current} -> {new_score}")
        current = new_score
        if log is not None:
            log.append((move, new_score))

    out = work.freeze()
    report = verify_decomposition(g, out, k)
    if not (report.is_valid and report.is_normal and report.is_k_simple and report.is_k_smooth):
        raise NormalizationStuck(f"fixed point fails verification: {report.violations}")
    return out


def decomposition_to_simple_ktree(
    g: Graph, td: TreeDecomposition, k: int
) -> tuple[Graph, ConstructionTrace]:
    """Fill every bag into a clique; read off a simple k-tree trace in BFS order."""
    report = verify_decomposition(g, td, k)
    for flag in ("is_valid", "is_normal", "is_k_simple", "is_k_smooth"):
        if not getattr(report, flag):
            raise PreconditionViolated(f"{flag} fails: {report.violations.get(flag)}")
    order, parent = td.bfs_order()
    steps = []
    for x in order[1:]:
        bag, up = td.bags[x], td.bags[parent[x]]
        (v,) = bag - up
        steps.append((v, bag & up))
    trace = ConstructionTrace(k, td.bags[order[0]], steps, simple=True)
    extra = [e for bag in td.bags for e in combinations(sorted(bag), 2)]
    return g.add_edges(extra), trace


def _trace_decomposition(trace: ConstructionTrace) -> TreeDecomposition:
    k = trace.k
    bags: list[frozenset[int]] = [frozenset(trace.base)]
    edges = []
    home: dict[frozenset[int], int] = {}
    for s in combinations(trace.base, k):
        home.setdefault(frozenset(s), 0)
    for v, clique in trace.steps:
        node = len(bags)
        bag = frozenset(clique) | {v}
        edges.append((home[frozenset(clique)], node))
        bags.append(bag)
        for s in combinations(sorted(bag), k):
            home.setdefault(frozenset(s), node)
    return TreeDecomposition(bags, edges, root=0)


def simple_ktree_to_decomposition(trace: ConstructionTrace) -> TreeDecomposition:
    """One bag per trace step, hung below the first bag holding its clique."""
    if not trace.simple:
        seen = set()
        for _, clique in trace.steps:
            if clique in seen:
                raise InvalidTrace(f"clique {list(clique)} used twice")
            seen.add(clique)
    return _trace_decomposition(trace)


def ktree_decomposition(trace: ConstructionTrace) -> TreeDecomposition:
    """Decomposition of the traced k-tree (simplicity not required)."""
    return _trace_decomposition(trace)


def recognize_ktree(g: Graph, k: int) -> ConstructionTrace | None:
    """Greedy lowest-id simplicial elimination; ``None`` if ``g`` is not a k-tree."""
    if k < 1 or g.n < k + 1:
        return None
    if g.m != comb(k + 1, 2) + (g.n - k - 1) * k:
        return None
    adj = {v: set(g.adj[v]) for v in g.vertices()}
    removed: list[tuple[int, tuple[int, ...]]] = []
    while len(adj) > k + 1:
        for v in sorted(adj):
            if len(adj[v]) == k and is_clique(g, adj[v]):
                break
        else:
            return None
        removed.append((v, tuple(sorted(adj[v]))))
        for w in adj.pop(v):
            adj[w].discard(v)
    base = sorted(adj)
    if not is_clique(g, base):
        return None
    return ConstructionTrace(k, base, reversed(removed), simple=False)


def recognize_simple_ktree(g: Graph, k: int) -> ConstructionTrace | None:
    trace = recognize_ktree(g, k)
    if trace is None:
        return None
    td = _trace_decomposition(trace)
    if _simplicity_violation(td, k) is not None:
        return None
    return ConstructionTrace(k, trace.base, trace.steps, simple=True)


def ktree_completion(
    g: Graph, td: TreeDecomposition, k: int
) -> tuple[Graph, ConstructionTrace]:
    """A k-tree on ``V(g)`` containing ``g``, from a decomposition of width <= k."""
    problem = _validity_violation(g, td)
    if problem is not None:
        raise InvalidInput(f"not a tree-decomposition of the graph: {problem}")
    if td.width() > k:
        raise WidthExceeded(f"width {td.width()} exceeds {k}")
    if g.n <= k:
        raise TooSmall(f"a {k}-tree needs at least {k + 1} vertices")

    work = _Work(td, 0)
    while work.contract_nested():
        pass
    # grow every bag to k+1 by borrowing from a neighbour
    changed = True
    while changed:
        changed = False
        for x in sorted(work.bags):
            if len(work.bags[x]) <= k:
                y = min(work.nbrs[x])
                v = min(work.bags[y] - work.bags[x])
                work.bags[x] = work.bags[x] | {v}
                while work.contract_nested():
                    pass
                changed = True
                break
    # interpolate between neighbours sharing fewer than k vertices
    for x, y in sorted({(min(a, b), max(a, b)) for a in work.bags for b in work.nbrs[a]}):
        prev = x
        bag = set(work.bags[x])
        target = work.bags[y]
        if len(bag & target) == k:
            continue
        work.nbrs[x].discard(y)
        work.nbrs[y].discard(x)
        for u, v in zip(sorted(bag - target), sorted(target - bag)):
            bag = (bag - {u}) | {v}
            if bag == target:
                break
            z = work.next_id
            work.next_id += 1
            work.bags[z] = set(bag)
            work.nbrs[z] = {prev}
            work.nbrs[prev].add(z)
            prev = z
        work.nbrs[prev].add(y)
        work.nbrs[y].add(prev)
    work.compact()
    work.root = 0
    smooth = work.freeze()
    order, parent = smooth.bfs_order()
    steps = []
    for node in order[1:]:
        bag, up = smooth.bags[node], smooth.bags[parent[node]]
        (v,) = bag - up
        steps.append((v, bag & up))
    trace = ConstructionTrace(k, smooth.bags[order[0]], steps, simple=False)
    return g.add_edges(trace.graph.edges), trace


def rainbow_color_ktree(trace: ConstructionTrace) -> list[int]:
    """Proper (k+1)-colouring in which every (k+1)-clique is rainbow."""
    colour = [-1] * trace.n
    for c, v in enumerate(trace.base):
        colour[v] = c
    palette = set(range(trace.k + 1))
    for v, clique in trace.steps:
        missing = palette - {colour[c] for c in clique}
        if len(missing) != 1 or any(colour[c] < 0 for c in clique):
            raise InvalidTrace(f"cannot colour {v}: attachment is not rainbow")
        colour[v] = missing.pop()
    return colour
