"""A fixed corpus of generated artifacts, used to check run-to-run determinism."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

from .embedders import embed_outerplanar, embed_simple_treewidth, embed_unbounded_indegree
from .graph import Graph
from .instances import (
    gen_kbar3,
    gen_max_outerplanar,
    gen_random_ktree,
    gen_random_simple_ktree,
)
from .io import dumps
from .oracle import Budget, exact_simple_treewidth, exact_treewidth, exhaustive_embedding_search

TASKS: tuple[tuple, ...] = (
    *(("outerplanar", n, seed) for n, seed in ((3, 0), (12, 1), (40, 2), (90, 3))),
    *(("simple-stw", k, 30 + 10 * k, seed) for k in (2, 3, 4, 5) for seed in (0, 1)),
    *(("unbounded", k, 25, seed, p, k + 1 - p) for k in (2, 3, 4) for seed in (0,) for p in range(1, k + 1)),
    *(("widths", k) for k in (1, 2)),
    ("search", 4, True),
    ("search", 4, False),
)


def run_task(task: tuple) -> tuple[str, str]:
    kind = task[0]
    name = "-".join(str(x) for x in task)
    if kind == "outerplanar":
        _, n, seed = task
        return name, dumps(embed_outerplanar(gen_max_outerplanar(n, seed)).to_dict())
    if kind == "simple-stw":
        _, k, n, seed = task
        return name, dumps(embed_simple_treewidth(gen_random_simple_ktree(k, n, seed)).to_dict())
    if kind == "unbounded":
        _, k, n, seed, p, q = task
        return name, dumps(embed_unbounded_indegree(gen_random_ktree(k, n, seed), p, q).to_dict())
    if kind == "widths":
        g = gen_kbar3(task[1])
        return name, dumps({"tw": exact_treewidth(g), "stw": exact_simple_treewidth(g)})
    if kind == "search":
        _, size, oriented = task
        budget = Budget(2, 1, 1, 1, 1, oriented)
        return name, dumps(exhaustive_embedding_search(Graph.complete(size), budget).to_dict())
    raise ValueError(f"unknown corpus task {task!r}")


def build_corpus(jobs: int = 1) -> dict[str, str]:
    """Every corpus artifact as canonical JSON, keyed by task name."""
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            pairs = list(pool.map(run_task, TASKS))
    else:
        pairs = [run_task(t) for t in TASKS]
    return dict(pairs)
