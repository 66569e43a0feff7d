"""``psk`` command line: generate, embed, verify, normalize, product, oracle, diagnose.

Input and output are newline-delimited JSON.  Exit codes: 0 success, 1 a
check failed (or the input was semantically rejected), 2 malformed input,
3 a size or budget limit was hit.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

from . import embedders
from .decomposition import (
    ConstructionTrace,
    decomposition_to_simple_ktree,
    normalize_to_smooth_simple,
    recognize_ktree,
    recognize_simple_ktree,
    verify_decomposition,
)
from .errors import InvalidInput, LimitExceeded, PSKError
from .graph import Digraph, Graph, graph_to_dot
from .instances import FAMILIES, GeneratorSpec
from .io import as_bundle, as_graph, dumps, kind_of, read_documents
from .oracle import (
    Budget,
    clique_number,
    exact_simple_treewidth,
    exact_treewidth,
    exhaustive_embedding_search,
)
from .products import (
    Embedding,
    big_diagonal_edge,
    clique_diagnostics,
    directed_product,
    embedding_to_dot,
    product_to_dot,
    strong_product,
    verify_embedding,
    verify_strong_embedding,
)


class CheckFailed(Exception):
    """A requested verification did not pass (exit code 1)."""


def _trace_for(doc: dict, k: int | None, simple: bool) -> ConstructionTrace:
    if kind_of(doc) == "trace":
        return ConstructionTrace.from_dict(doc)
    g = as_graph(doc)
    if k is None:
        raise InvalidInput("a graph input needs --k so it can be recognized as a k-tree")
    trace = recognize_simple_ktree(g, k) if simple else recognize_ktree(g, k)
    if trace is None:
        raise CheckFailed(f"input is not a {'simple ' if simple else ''}{k}-tree")
    return trace


def _embed_one(doc: dict, opts: dict) -> tuple[str, str | None]:
    method = opts["method"]
    check = opts["check_invariants"]
    if method == "outerplanar":
        emb = embedders.embed_outerplanar(as_graph(doc), check)
    elif method == "simple-stw":
        emb = embedders.embed_simple_treewidth(_trace_for(doc, opts["k"], True), check)
    else:
        if opts["p"] is None or opts["q"] is None:
            raise InvalidInput("--method unbounded needs --p and --q")
        emb = embedders.embed_unbounded_indegree(
            _trace_for(doc, opts["k"], False), opts["p"], opts["q"]
        )
    report = verify_embedding(emb.guest, emb)
    if not report.valid:
        raise CheckFailed(f"embedding failed self-verification: {report.violations}")
    return dumps(emb.to_dict()), embedding_to_dot(emb)


def _oracle_one(doc: dict, opts: dict) -> tuple[str, str | None]:
    what = opts["what"]
    g = as_graph(doc)
    if what == "tw":
        return str(exact_treewidth(g)), None
    if what == "stw":
        return str(exact_simple_treewidth(g)), None
    if what == "omega":
        return str(clique_number(g)), None
    budget = Budget(
        opts["max_host_size"],
        opts["max_indegree1"],
        opts["max_indegree2"],
        opts["max_tw1"],
        opts["max_tw2"],
        opts["oriented_only"],
    )
    result = exhaustive_embedding_search(g, budget, jobs=opts["jobs"])
    if result.embedding is not None:
        report = verify_embedding(g, result.embedding)
        if not report.valid:
            raise CheckFailed(f"search certificate failed verification: {report.violations}")
    return dumps(result.to_dict()), None


def _map_docs(
    fn: Callable[[dict, dict], tuple[str, str | None]], docs: list[dict], opts: dict, jobs: int
) -> list[tuple[str, str | None]]:
    if jobs > 1 and len(docs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, docs, [opts] * len(docs)))
    return [fn(d, opts) for d in docs]


def _emit(args, outputs: list[tuple[str, str | None]], out) -> None:
    for text, _ in outputs:
        out.write(text + "\n")
    if getattr(args, "dot", None):
        dots = [d for _, d in outputs if d]
        with open(args.dot, "w") as fh:
            fh.write("".join(dots))


def cmd_generate(args, docs, out) -> int:
    seed = int(os.environ["PSK_SEED"]) if "PSK_SEED" in os.environ else args.seed
    spec = GeneratorSpec(args.family, args.k, args.n, seed, args.copies, args.rounds)
    made = spec.generate()
    dot = graph_to_dot(made if isinstance(made, Graph) else made.graph)
    _emit(args, [(dumps(made.to_dict()), dot)], out)
    return 0


def cmd_embed(args, docs, out) -> int:
    opts = {
        "method": args.method,
        "p": args.p,
        "q": args.q,
        "k": args.k,
        "check_invariants": args.check_invariants,
    }
    _emit(args, _map_docs(_embed_one, docs, opts, args.jobs), out)
    return 0


def cmd_verify(args, docs, out) -> int:
    ok = True
    outputs = []
    for doc in docs:
        kind = kind_of(doc)
        if kind == "bundle":
            if args.k is None:
                raise InvalidInput("verifying a decomposition needs --k")
            g, td = as_bundle(doc)
            report = verify_decomposition(g, td, args.k)
            ok &= report.is_valid
            outputs.append((dumps(report.to_dict()), None))
            continue
        if kind != "embedding":
            raise InvalidInput(f"cannot verify a {kind} document")
        emb = Embedding.from_dict(doc)
        if emb.guest is None:
            raise InvalidInput("embedding document carries no 'guest' graph")
        report = (verify_strong_embedding if args.strong else verify_embedding)(emb.guest, emb)
        ok &= report.valid
        outputs.append((dumps(report.to_dict()), embedding_to_dot(emb)))
    _emit(args, outputs, out)
    return 0 if ok else 1


def cmd_normalize(args, docs, out) -> int:
    outputs = []
    for doc in docs:
        g, td = as_bundle(doc)
        smooth = normalize_to_smooth_simple(g, td, args.k)
        if args.to_trace:
            full, trace = decomposition_to_simple_ktree(g, smooth, args.k)
            outputs.append((dumps({"graph": full.to_dict(), "trace": trace.to_dict()}), None))
        else:
            outputs.append((dumps(smooth.to_dict()), None))
    _emit(args, outputs, out)
    return 0


def cmd_product(args, docs, out) -> int:
    if len(docs) != 2:
        raise InvalidInput(f"product needs exactly two factor documents, got {len(docs)}")
    if args.strong:
        g1, g2 = (as_graph(d) for d in docs)
        prod = strong_product(g1, g2)
        _emit(args, [(dumps(prod.to_dict()), graph_to_dot(prod))], out)
    else:
        d1, d2 = (Digraph.from_dict(d) for d in docs)
        prod = directed_product(d1, d2)
        _emit(args, [(dumps(prod.to_dict()), product_to_dot(d1, d2))], out)
    return 0


def cmd_oracle(args, docs, out) -> int:
    opts = {
        "what": args.what,
        "max_host_size": args.max_host_size,
        "max_indegree1": args.max_indegree1,
        "max_indegree2": args.max_indegree2,
        "max_tw1": args.max_tw1,
        "max_tw2": args.max_tw2,
        "oriented_only": args.oriented_only,
        "jobs": args.jobs if len(docs) == 1 else 1,
    }
    _emit(args, _map_docs(_oracle_one, docs, opts, args.jobs if len(docs) > 1 else 1), out)
    return 0


def cmd_diagnose(args, docs, out) -> int:
    outputs = []
    clique = [int(x) for x in args.clique.split(",") if x.strip()]
    for doc in docs:
        emb = Embedding.from_dict(doc)
        if emb.guest is None:
            raise InvalidInput("embedding document carries no 'guest' graph")
        record = clique_diagnostics(emb.guest, emb, clique).to_dict()
        if args.big_edge:
            edge, siblings = big_diagonal_edge(emb.guest, emb, clique)
            record["big_diagonal_edge"] = list(edge)
            record["big_siblings"] = [list(s) for s in siblings]
        outputs.append((dumps(record), None))
    _emit(args, outputs, out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psk", description="Embed bounded (simple) treewidth graphs into graph products."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, jobs: bool = False) -> None:
        p.add_argument("-i", "--input", help="input file (default stdin)")
        p.add_argument("-o", "--output", help="output file (default stdout)")
        p.add_argument("--dot", help="also write a DOT rendering to this file")
        if jobs:
            p.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = sub.add_parser("generate", help="emit a generated graph or trace")
    common(p)
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=0, help="overridden by $PSK_SEED")
    p.add_argument("--copies", type=int, default=1)
    p.add_argument("--rounds", type=int, default=1)
    p.set_defaults(func=cmd_generate, reads_input=False)

    p = sub.add_parser("embed", help="embed graphs or traces into a directed product")
    common(p, jobs=True)
    p.add_argument("--method", required=True, choices=("outerplanar", "simple-stw", "unbounded"))
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--k", type=int, help="recognize graph inputs as (simple) k-trees")
    p.add_argument("--check-invariants", action="store_true")
    p.set_defaults(func=cmd_embed, reads_input=True)

    p = sub.add_parser("verify", help="re-check embeddings or decomposition bundles")
    common(p)
    p.add_argument("--strong", action="store_true", help="check against the strong product")
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_verify, reads_input=True)

    p = sub.add_parser("normalize", help="normal k-simple k-smooth decomposition")
    common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--to-trace", action="store_true", help="emit the simple k-tree instead")
    p.set_defaults(func=cmd_normalize, reads_input=True)

    p = sub.add_parser("product", help="product of two factor documents")
    common(p)
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--strong", action="store_true")
    kind.add_argument("--directed", action="store_true")
    p.set_defaults(func=cmd_product, reads_input=True)

    p = sub.add_parser("oracle", help="exact width oracles or exhaustive embedding search")
    common(p, jobs=True)
    p.add_argument("what", choices=("tw", "stw", "omega", "search"))
    p.add_argument("--max-host-size", type=int, default=2)
    p.add_argument("--max-indegree1", type=int, default=1)
    p.add_argument("--max-indegree2", type=int, default=1)
    p.add_argument("--max-tw1", type=int, default=1)
    p.add_argument("--max-tw2", type=int, default=1)
    p.add_argument("--oriented-only", action="store_true")
    p.set_defaults(func=cmd_oracle, reads_input=True)

    p = sub.add_parser("diagnose", help="clique diagnostics on an embedding")
    common(p)
    p.add_argument("--clique", required=True, help="comma-separated guest vertices")
    p.add_argument("--big-edge", action="store_true", help="also report the big diagonal edge")
    p.set_defaults(func=cmd_diagnose, reads_input=True)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        docs = []
        if args.reads_input:
            if args.input:
                with open(args.input) as fh:
                    docs = read_documents(fh)
            else:
                docs = read_documents(sys.stdin)
        if args.output:
            with open(args.output, "w") as out:
                return args.func(args, docs, out)
        return args.func(args, docs, sys.stdout)
    except InvalidInput as exc:
        print(f"psk: malformed input: {exc}", file=sys.stderr)
        return 2
    except LimitExceeded as exc:
        print(f"psk: limit exceeded: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except CheckFailed as exc:
        print(f"psk: check failed: {exc}", file=sys.stderr)
        return 1
    except PSKError as exc:
        print(f"psk: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"psk: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
