"""Brute-force ground truth for small graphs.

Nothing here reuses the constructive machinery of the rest of the package,
except the plain graph types and the embedding certificate format.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb

import numpy as np

from .decomposition import ConstructionTrace, TreeDecomposition
from .errors import BudgetTooLarge, ParameterRange, TooLarge
from .graph import Digraph, Graph

TW_LIMIT = 14
STW_LIMIT = 9
OMEGA_LIMIT = 30


# ---------------------------------------------------------------------------
# treewidth
# ---------------------------------------------------------------------------


def _masks(g: Graph) -> list[int]:
    return [sum(1 << w for w in g.adj[v]) for v in g.vertices()]


def _q_size(nbr: list[int], s: int, v: int) -> int:
    """Vertices outside ``s + v`` reachable from ``v`` through ``s``."""
    comp = 1 << v
    frontier = comp
    while frontier:
        reach = 0
        f = frontier
        while f:
            low = f & -f
            reach |= nbr[low.bit_length() - 1]
            f ^= low
        new = reach & s & ~comp
        comp |= new
        frontier = new
    boundary = 0
    c = comp
    while c:
        low = c & -c
        boundary |= nbr[low.bit_length() - 1]
        c ^= low
    return bin(boundary & ~comp & ~s).count("1")


def exact_treewidth_witness(g: Graph, limit: int = TW_LIMIT) -> tuple[int, TreeDecomposition]:
    """Exact treewidth by subset DP over elimination orders, with a decomposition."""
    n = g.n
    if n > limit:
        raise TooLarge(f"{n} vertices exceeds the treewidth oracle limit {limit}")
    if n == 0:
        return -1, TreeDecomposition([()])
    nbr = _masks(g)
    full = (1 << n) - 1
    best = [0] * (1 << n)
    choice = [0] * (1 << n)
    best[0] = -1
    for s in range(1, full + 1):
        value = n
        pick = -1
        rest = s
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            prev = s ^ low
            cand = max(best[prev], _q_size(nbr, prev, v))
            if cand < value:
                value, pick = cand, v
        best[s] = value
        choice[s] = pick
    order = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s ^= 1 << v
    order.reverse()
    return best[full], _elimination_decomposition(g, order)


def _elimination_decomposition(g: Graph, order: list[int]) -> TreeDecomposition:
    position = {v: i for i, v in enumerate(order)}
    adj = {v: set(g.adj[v]) for v in g.vertices()}
    bags = []
    parents: list[int | None] = []
    for v in order:
        later = {w for w in adj[v] if position[w] > position[v]}
        bags.append(later | {v})
        parents.append(min((position[w] for w in later), default=None))
        for a, b in combinations(later, 2):
            adj[a].add(b)
            adj[b].add(a)
    last = len(order) - 1
    edges = [(i, p if p is not None else last) for i, p in enumerate(parents) if i != last]
    return TreeDecomposition(bags, edges)


def exact_treewidth(g: Graph, limit: int = TW_LIMIT) -> int:
    return exact_treewidth_witness(g, limit)[0]


# ---------------------------------------------------------------------------
# simple treewidth
# ---------------------------------------------------------------------------


def simple_ktree_cover(g: Graph, k: int, limit: int = STW_LIMIT) -> ConstructionTrace | None:
    """A simple k-tree trace on ``V(g)`` whose graph contains ``g``, or None.

    Needs ``n >= k+1``.  The first cover in the fixed search order is returned.
    """
    n = g.n
    if k < 1 or n < k + 1:
        raise ParameterRange(f"need k >= 1 and n >= k+1, got k={k}, n={n}")
    if n > limit:
        raise TooLarge(f"{n} vertices exceeds the simple treewidth oracle limit {limit}")
    adj = g.adj
    others = list(range(1, n))
    # some bag holds vertex 0, and a simple k-tree can be grown from any of its bags
    for rest in combinations(others, k):
        base = (0,) + rest
        placed = set(base)
        pool = {frozenset(c) for c in combinations(base, k)}
        steps: list[tuple[int, frozenset[int]]] = []
        if _extend(adj, n, k, placed, pool, set(), -1, steps):
            return ConstructionTrace(k, base, [(v, sorted(c)) for v, c in steps])
    return None


def _extend(adj, n, k, placed, pool, used, prev, steps) -> bool:
    if len(placed) == n:
        return True
    for v in range(n):
        if v in placed:
            continue
        need = adj[v] & placed
        for c in sorted(pool - used, key=sorted):
            if not need <= c:
                continue
            # independent consecutive steps must come in increasing vertex order
            if prev not in c and v < prev:
                continue
            placed.add(v)
            used.add(c)
            steps.append((v, c))
            fresh = [frozenset(s) | {v} for s in combinations(sorted(c), k - 1)]
            pool.update(fresh)
            if _extend(adj, n, k, placed, pool, used, v, steps):
                return True
            pool.difference_update(fresh)
            steps.pop()
            used.discard(c)
            placed.discard(v)
    return False


def exact_simple_treewidth(g: Graph, limit: int = STW_LIMIT) -> int:
    """Least k such that ``g`` has a k-simple tree-decomposition.

    For ``n <= k`` one bag holding everything is k-simple; otherwise this asks
    for a simple k-tree on ``V(g)`` containing ``E(g)``, searched over
    construction orders.  The edgeless graphs on at most two vertices are the
    only graphs of simple treewidth 0.
    """
    n, m = g.n, g.m
    if n > limit:
        raise TooLarge(f"{n} vertices exceeds the simple treewidth oracle limit {limit}")
    if m == 0 and n <= 2:
        return 0
    lower = max(1, clique_number(g) - 1)
    for k in range(lower, n + 1):
        if n <= k:
            return k
        if m > comb(k + 1, 2) + (n - k - 1) * k:
            continue
        if simple_ktree_cover(g, k, limit) is not None:
            return k
    raise AssertionError("unreachable: n <= k eventually holds")


# ---------------------------------------------------------------------------
# clique number
# ---------------------------------------------------------------------------


def clique_number(g: Graph, limit: int = OMEGA_LIMIT) -> int:
    """Maximum clique size by branch and bound with a greedy colouring bound."""
    if g.n > limit:
        raise TooLarge(f"{g.n} vertices exceeds the clique oracle limit {limit}")
    nbr = _masks(g)
    best = 0

    def colour_bound(cand: int) -> list[tuple[int, int]]:
        # greedy sequential colouring; returns (vertex, colour) in colour order
        out = []
        colour = 0
        left = cand
        while left:
            colour += 1
            avail = left
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail &= ~low & ~nbr[v]
                left &= ~low
                out.append((v, colour))
        return out

    def expand(size: int, cand: int) -> None:
        nonlocal best
        for v, c in reversed(colour_bound(cand)):
            if size + c <= best:
                return
            expand(size + 1, cand & nbr[v])
            cand &= ~(1 << v)
        if size > best:
            best = size

    expand(0, (1 << g.n) - 1)
    return best


# ---------------------------------------------------------------------------
# embedding search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Budget:
    max_host_size: int
    max_indegree1: int
    max_indegree2: int
    max_tw1: int
    max_tw2: int
    oriented_only: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SearchResult:
    embeddable: bool
    embedding: object | None
    budget: Budget
    host_pairs: int
    search_nodes: int

    @property
    def verdict(self) -> str:
        return "EMBEDDABLE" if self.embeddable else "NON_EMBEDDABLE"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "embedding": self.embedding.to_dict() if self.embedding is not None else None,
            "budget": self.budget.to_dict(),
            "host_pairs": self.host_pairs,
            "search_nodes": self.search_nodes,
        }


def _slots(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(n) if u != v]


def _encode(n: int, arcs: frozenset[tuple[int, int]]) -> int:
    return sum(1 << i for i, a in enumerate(_slots(n)) if a in arcs)


@lru_cache(maxsize=None)
def canonical_digraphs(n: int) -> tuple[frozenset[tuple[int, int]], ...]:
    """One representative (minimum slot encoding) per isomorphism class on ``n`` vertices."""
    slots = _slots(n)
    perms = list(permutations(range(n)))
    seen: set[int] = set()
    reps = []
    for mask in range(1 << len(slots)):
        arcs = frozenset(a for i, a in enumerate(slots) if mask >> i & 1)
        code = min(_encode(n, frozenset((p[u], p[v]) for u, v in arcs)) for p in perms)
        if code in seen:
            continue
        seen.add(code)
        reps.append(frozenset(a for i, a in enumerate(slots) if code >> i & 1))
    return tuple(reps)


def _admissible(n: int, arcs: frozenset, max_in: int, max_tw: int, oriented: bool) -> bool:
    if oriented and any((v, u) in arcs for u, v in arcs):
        return False
    indeg = [0] * n
    for _, v in arcs:
        indeg[v] += 1
    if max(indeg, default=0) > max_in:
        return False
    return exact_treewidth(Graph(n, arcs)) <= max_tw


def _hosts(budget: Budget, side: int) -> list[tuple[int, frozenset]]:
    max_in = budget.max_indegree1 if side == 1 else budget.max_indegree2
    max_tw = budget.max_tw1 if side == 1 else budget.max_tw2
    out = []
    for n in range(1, budget.max_host_size + 1):
        for arcs in canonical_digraphs(n):
            if _admissible(n, arcs, max_in, max_tw, budget.oriented_only):
                out.append((n, arcs))
    return out


def _product_adjacency(n1: int, a1: frozenset, n2: int, a2: frozenset) -> np.ndarray:
    n = n1 * n2
    adj = np.zeros((n, n), dtype=bool)
    for a in range(n1):
        for b in range(n2):
            x = a * n2 + b
            for a2_ in range(n1):
                for b2 in range(n2):
                    y = a2_ * n2 + b2
                    if x == y:
                        continue
                    if a == a2_:
                        hit = (b, b2) in a2 or (b2, b) in a2
                    elif b == b2:
                        hit = (a, a2_) in a1 or (a2_, a) in a1
                    else:
                        hit = ((a, a2_) in a1 and (b, b2) in a2) or (
                            (a2_, a) in a1 and (b2, b) in a2
                        )
                    adj[x, y] = hit
    return adj


def _inject(g: Graph, adj: np.ndarray) -> tuple[list[int] | None, int]:
    """Backtracking search for an injective edge-preserving map into ``adj``."""
    n, size = g.n, adj.shape[0]
    order = sorted(g.vertices(), key=lambda v: (-g.degree(v), v))
    image = [-1] * n
    taken = [False] * size
    nodes = 0

    def go(i: int) -> bool:
        nonlocal nodes
        if i == n:
            return True
        v = order[i]
        for x in range(size):
            if taken[x]:
                continue
            nodes += 1
            if all(image[w] < 0 or adj[x, image[w]] for w in g.adj[v]):
                image[v] = x
                taken[x] = True
                if go(i + 1):
                    return True
                image[v] = -1
                taken[x] = False
        return False

    found = go(0)
    return (list(image) if found else None), nodes


def _omega_small(n: int, arcs: frozenset) -> int:
    return clique_number(Graph(n, arcs))


def _search_pair(args) -> tuple[list[int] | None, int]:
    g, n1, a1, n2, a2 = args
    return _inject(g, _product_adjacency(n1, a1, n2, a2))


def exhaustive_embedding_search(g: Graph, budget: Budget, jobs: int = 1) -> SearchResult:
    """Search host pairs (canonical forms, in a fixed order) for an embedding of ``g``.

    Pairs are ordered by host sizes and then by canonical representative; the
    first embeddable pair wins.  Pairs whose clique numbers multiply to less
    than ``omega(g)`` are skipped, since a clique ``C`` needs
    ``|P1(C)| * |P2(C)| >= |C|``.  ``jobs > 1`` evaluates pairs in a process
    pool; the reduction is in the same fixed order, so results are identical.
    """
    from .products import Embedding

    if g.n > 6:
        raise BudgetTooLarge(f"guest has {g.n} vertices; the search allows at most 6")
    if budget.max_host_size > 4:
        raise BudgetTooLarge("host size above 4 is beyond the feasibility wall")
    if g.n == 0:
        empty = Digraph(1)
        return SearchResult(True, Embedding(empty, empty, [], guest=g), budget, 0, 0)
    omega = clique_number(g)
    side1, side2 = _hosts(budget, 1), _hosts(budget, 2)
    pairs = [
        (h1, h2)
        for h1 in side1
        for h2 in side2
        if h1[0] * h2[0] >= g.n and _omega_small(*h1) * _omega_small(*h2) >= omega
    ]
    pairs.sort(key=lambda p: (p[0][0], p[1][0]))
    tasks = [(g, h1[0], h1[1], h2[0], h2[1]) for h1, h2 in pairs]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_search_pair, tasks, chunksize=8))
    else:
        results = []
        for t in tasks:
            results.append(_search_pair(t))
            if results[-1][0] is not None:
                break
    nodes = 0
    for i, (image, count) in enumerate(results):
        nodes += count
        if image is not None:
            (n1, a1), (n2, a2) = pairs[i]
            mapping = [divmod(x, n2) for x in image]
            emb = Embedding(
                Digraph(n1, a1, oriented=budget.oriented_only),
                Digraph(n2, a2, oriented=budget.oriented_only),
                mapping,
                guest=g,
            )
            return SearchResult(True, emb, budget, i + 1, nodes)
    return SearchResult(False, None, budget, len(pairs), nodes)


def digraphs_up_to(n: int, max_indegree: int | None = None) -> list[Digraph]:
    """Canonical digraphs on ``1..n`` vertices, optionally filtered by indegree."""
    out = []
    for size in range(1, n + 1):
        for arcs in canonical_digraphs(size):
            d = Digraph(size, arcs)
            if max_indegree is None or max((len(p) for p in d.pred), default=0) <= max_indegree:
                out.append(d)
    return out


__all__ = [
    "Budget",
    "SearchResult",
    "canonical_digraphs",
    "clique_number",
    "digraphs_up_to",
    "exact_simple_treewidth",
    "exact_treewidth",
    "exact_treewidth_witness",
    "exhaustive_embedding_search",
    "simple_ktree_cover",
]
