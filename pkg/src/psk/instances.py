"""Seeded generators for the graph families used in tests and experiments.

Randomness comes from numpy's PCG64 bit generator, read through
``random_raw`` and reduced by rejection sampling, so a seed pins down the
output independently of numpy's higher-level sampling routines.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .decomposition import ConstructionTrace, TreeDecomposition, _Work
from .errors import Explosion, InvalidInput, ParameterRange, PreconditionViolated
from .graph import Graph, cliques_of_size

DEFAULT_CAP = 10**6


class SeededRng:
    """Uniform integers from a PCG64 stream."""

    def __init__(self, seed: int) -> None:
        if seed < 0:
            raise ParameterRange(f"seed must be nonnegative, got {seed}")
        self._bits = np.random.PCG64(seed)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ParameterRange("empty range")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            x = int(self._bits.random_raw())
            if x < limit:
                return x % n


def bad_vertex_threshold(s: int, t: int, k: int) -> int:
    """Attachment count beyond which some attached vertex is diagonal or magnetic."""
    if min(s, t, k) < 1:
        raise ParameterRange("s, t, k must all be >= 1")
    return 2 * k * k * max(s, t) + k * k + 1


def gen_kbar3(k: int) -> Graph:
    """``K_{k,3}`` with the k-side made a clique: ``S = 0..k-1``, ``b = k, k+1, k+2``."""
    if k < 1:
        raise ParameterRange(f"k must be >= 1, got {k}")
    edges = list(combinations(range(k), 2))
    edges += [(s, b) for s in range(k) for b in range(k, k + 3)]
    return Graph(k + 3, edges)


def _random_trace(k: int, n: int, seed: int, simple: bool) -> ConstructionTrace:
    if k < 1:
        raise ParameterRange(f"k must be >= 1, got {k}")
    if n < k + 1:
        raise ParameterRange(f"need n >= k+1 = {k + 1}, got {n}")
    rng = SeededRng(seed)
    base = list(range(k + 1))
    pool = list(combinations(base, k))
    steps = []
    for v in range(k + 1, n):
        i = rng.below(len(pool))
        clique = pool[i]
        if simple:
            pool[i] = pool[-1]
            pool.pop()
        steps.append((v, clique))
        pool.extend(tuple(sorted(s + (v,))) for s in combinations(clique, k - 1))
    return ConstructionTrace(k, base, steps, simple=simple)


def gen_random_simple_ktree(k: int, n: int, seed: int) -> ConstructionTrace:
    """Each step attaches to a uniformly chosen, not yet used k-clique."""
    return _random_trace(k, n, seed, simple=True)


def gen_random_ktree(k: int, n: int, seed: int) -> ConstructionTrace:
    """Each step attaches to a uniformly chosen k-clique, reuse allowed."""
    return _random_trace(k, n, seed, simple=False)


def gen_max_outerplanar(n: int, seed: int) -> Graph:
    """Paste triangles on uniformly chosen outer edges, starting from a triangle."""
    if n < 3:
        raise ParameterRange(f"need n >= 3, got {n}")
    rng = SeededRng(seed)
    outer = [(0, 1), (1, 2), (2, 0)]
    edges = [(0, 1), (1, 2), (0, 2)]
    for w in range(3, n):
        i = rng.below(len(outer))
        u, v = outer[i]
        outer[i] = (u, w)
        outer.append((w, v))
        edges += [(u, w), (v, w)]
    return Graph(n, edges)


def gen_attachment_closure(
    g0: Graph, k: int, copies: int, rounds: int, cap: int = DEFAULT_CAP
) -> Graph:
    """Each round, give every k-clique ``copies`` new vertices attached to exactly it."""
    if rounds < 1 or copies < 1:
        raise ParameterRange("rounds and copies must be >= 1")
    g = g0
    for _ in range(rounds):
        cliques = cliques_of_size(g, k)
        if not cliques:
            raise PreconditionViolated(f"graph has no {k}-clique")
        total = g.n + len(cliques) * copies
        if total > cap:
            raise Explosion(f"next round would reach {total} vertices (cap {cap})")
        edges = list(g.edges)
        nxt = g.n
        for c in cliques:
            for _ in range(copies):
                edges.extend((nxt, w) for w in c)
                nxt += 1
        g = Graph(nxt, edges)
    return g


def _dedupe(td: TreeDecomposition) -> tuple[list[frozenset[int]], list[tuple[int, int]]]:
    work = _Work(td, 0)
    while work.contract_nested():
        pass
    work.compact()
    bags = [frozenset(work.bags[i]) for i in sorted(work.bags)]
    edges = sorted({(min(x, y), max(x, y)) for x in work.nbrs for y in work.nbrs[x]})
    return bags, edges


def stw_lowerbound_witness(
    k: int,
    base: Graph | None = None,
    base_td: TreeDecomposition | None = None,
    cap: int = DEFAULT_CAP,
) -> tuple[Graph, TreeDecomposition]:
    """The two-stage graph together with a k-simple tree-decomposition of it.

    Stage 1 hangs two new vertices on every k-clique of ``base``; stage 2 hangs
    ``(k-1)^2 + 1`` new vertices on every (k-1)-clique of the stage-1 graph.
    ``base`` defaults to ``K_k`` and needs a decomposition of width ``k-1``; if
    none is given one is computed by the exact treewidth oracle.
    """
    if k < 3:
        raise ParameterRange(f"k must be >= 3, got {k}")
    if base is None:
        base = Graph.complete(k)
        base_td = TreeDecomposition([range(k)])
    if base_td is None:
        from .oracle import exact_treewidth_witness

        _, base_td = exact_treewidth_witness(base)
    if base_td.width() > k - 1:
        raise PreconditionViolated(f"base decomposition has width {base_td.width()} > {k - 1}")

    first = cliques_of_size(base, k)
    n1 = base.n + 2 * len(first)
    if n1 > cap:
        raise Explosion(f"stage 1 reaches {n1} vertices (cap {cap})")
    bags, tree_edges = _dedupe(base_td)
    bags = [set(b) for b in bags]
    edges = list(base.edges)
    nxt = base.n
    home = {frozenset(b): i for i, b in enumerate(bags)}
    for c in first:
        v1, v2 = nxt, nxt + 1
        nxt += 2
        edges.extend((v, w) for v in (v1, v2) for w in c)
        x = home[frozenset(c)]
        bags[x].add(v1)
        bags.append(set(c) | {v2})
        tree_edges.append((x, len(bags) - 1))
    g1 = Graph(nxt, edges)

    second = cliques_of_size(g1, k - 1)
    batch = (k - 1) ** 2 + 1
    total = g1.n + batch * len(second)
    if total > cap:
        raise Explosion(f"stage 2 reaches {total} vertices (cap {cap})")
    frozen = [frozenset(b) for b in bags]
    for c in second:
        cs = frozenset(c)
        x = next(i for i, b in enumerate(frozen) if cs <= b)
        for _ in range(batch):
            edges.extend((nxt, w) for w in c)
            bags.append(set(c) | {nxt})
            tree_edges.append((x, len(bags) - 1))
            nxt += 1
    return Graph(nxt, edges), TreeDecomposition(bags, tree_edges)


def gen_stw_lowerbound(k: int, base: Graph | None = None, cap: int = DEFAULT_CAP) -> Graph:
    """Two-stage attachment graph of simple treewidth at most ``k``."""
    if k < 3:
        raise ParameterRange(f"k must be >= 3, got {k}")
    g0 = base if base is not None else Graph.complete(k)
    first = cliques_of_size(g0, k)
    n1 = g0.n + 2 * len(first)
    if n1 > cap:
        raise Explosion(f"stage 1 reaches {n1} vertices (cap {cap})")
    g1 = gen_attachment_closure(g0, k, 2, 1, cap) if first else g0
    if not cliques_of_size(g1, k - 1):
        return g1
    return gen_attachment_closure(g1, k - 1, (k - 1) ** 2 + 1, 1, cap)


FAMILIES = (
    "kbar3",
    "simple-ktree",
    "ktree",
    "max-outerplanar",
    "attachment-closure",
    "stw-lowerbound",
)


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    k: int | None = None
    n: int | None = None
    seed: int = 0
    copies: int = 1
    rounds: int = 1

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise InvalidInput(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")

    def _need(self, name: str) -> int:
        value = getattr(self, name)
        if value is None:
            raise ParameterRange(f"family {self.family} needs --{name}")
        return value

    def generate(self) -> Graph | ConstructionTrace:
        f = self.family
        if f == "kbar3":
            return gen_kbar3(self._need("k"))
        if f == "simple-ktree":
            return gen_random_simple_ktree(self._need("k"), self._need("n"), self.seed)
        if f == "ktree":
            return gen_random_ktree(self._need("k"), self._need("n"), self.seed)
        if f == "max-outerplanar":
            return gen_max_outerplanar(self._need("n"), self.seed)
        k = self._need("k")
        if f == "attachment-closure":
            return gen_attachment_closure(Graph.complete(k + 1), k, self.copies, self.rounds)
        return gen_stw_lowerbound(k)
