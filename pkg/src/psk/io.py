"""Newline-delimited JSON documents and their type detection."""

from __future__ import annotations

import json
from typing import Iterable, TextIO

from .decomposition import ConstructionTrace, TreeDecomposition
from .errors import InvalidInput
from .graph import Digraph, Graph


def dumps(doc: object) -> str:
    """Canonical one-line encoding; byte-identical for equal documents."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def read_documents(stream: TextIO) -> list[dict]:
    """Parse a stream holding one JSON object per line (or one pretty-printed object)."""
    text = stream.read()
    if not text.strip():
        raise InvalidInput("no input documents")
    try:
        return _as_objects([json.loads(line) for line in text.splitlines() if line.strip()])
    except json.JSONDecodeError:
        pass
    try:
        return _as_objects([json.loads(text)])
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"input is not JSON: {exc}") from exc


def _as_objects(docs: Iterable[object]) -> list[dict]:
    out = []
    for d in docs:
        if not isinstance(d, dict):
            raise InvalidInput("every input document must be a JSON object")
        out.append(d)
    return out


def kind_of(doc: dict) -> str:
    if "host1" in doc:
        return "embedding"
    if "graph" in doc and "decomposition" in doc:
        return "bundle"
    if "bags" in doc:
        return "decomposition"
    if "steps" in doc and "base" in doc:
        return "trace"
    if "arcs" in doc:
        return "digraph"
    if "edges" in doc and "n" in doc:
        return "graph"
    if "verdict" in doc:
        return "search"
    raise InvalidInput(f"unrecognized document with keys {sorted(doc)}")


def as_graph(doc: dict) -> Graph:
    """A graph document, or the graph traced by a trace document."""
    kind = kind_of(doc)
    if kind == "graph":
        return Graph.from_dict(doc)
    if kind == "trace":
        return ConstructionTrace.from_dict(doc).graph
    if kind == "digraph":
        return Graph(Digraph.from_dict(doc).n, Digraph.from_dict(doc).arcs)
    raise InvalidInput(f"expected a graph, got a {kind} document")


def as_bundle(doc: dict) -> tuple[Graph, TreeDecomposition]:
    if kind_of(doc) != "bundle":
        raise InvalidInput('expected {"graph": ..., "decomposition": ...}')
    return Graph.from_dict(doc["graph"]), TreeDecomposition.from_dict(doc["decomposition"])
