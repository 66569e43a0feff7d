"""Embeddings of bounded (simple) treewidth graphs into directed and strong products."""

from .decomposition import (
    ConstructionTrace,
    DecompositionReport,
    TreeDecomposition,
    decomposition_to_simple_ktree,
    ktree_completion,
    nodes_containing,
    normalize_to_smooth_simple,
    rainbow_color_ktree,
    recognize_ktree,
    recognize_simple_ktree,
    score,
    simple_ktree_to_decomposition,
    verify_decomposition,
)
from .embedders import (
    SiblingLedger,
    embed_dominant,
    embed_outerplanar,
    embed_simple_treewidth,
    embed_unbounded_indegree,
    partition_by_treewidth,
)
from .graph import (
    Digraph,
    Graph,
    big_arc,
    cliques_of_size,
    is_clique,
    is_transitive_tournament,
    max_indegree,
    sink_of,
    transitive_tournament,
    underlying,
)
from .instances import (
    GeneratorSpec,
    bad_vertex_threshold,
    gen_attachment_closure,
    gen_kbar3,
    gen_max_outerplanar,
    gen_random_ktree,
    gen_random_simple_ktree,
    gen_stw_lowerbound,
)
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
    projection_profile,
    strong_product,
    verify_embedding,
)

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "ConstructionTrace",
    "DecompositionReport",
    "Digraph",
    "Embedding",
    "GeneratorSpec",
    "Graph",
    "SiblingLedger",
    "TreeDecomposition",
    "__version__",
    "bad_vertex_threshold",
    "big_arc",
    "big_diagonal_edge",
    "clique_diagnostics",
    "clique_number",
    "cliques_of_size",
    "decomposition_to_simple_ktree",
    "directed_product",
    "embed_dominant",
    "embed_outerplanar",
    "embed_simple_treewidth",
    "embed_unbounded_indegree",
    "exact_simple_treewidth",
    "exact_treewidth",
    "exhaustive_embedding_search",
    "gen_attachment_closure",
    "gen_kbar3",
    "gen_max_outerplanar",
    "gen_random_ktree",
    "gen_random_simple_ktree",
    "gen_stw_lowerbound",
    "is_clique",
    "is_transitive_tournament",
    "ktree_completion",
    "max_indegree",
    "nodes_containing",
    "normalize_to_smooth_simple",
    "partition_by_treewidth",
    "projection_profile",
    "rainbow_color_ktree",
    "recognize_ktree",
    "recognize_simple_ktree",
    "score",
    "simple_ktree_to_decomposition",
    "sink_of",
    "strong_product",
    "transitive_tournament",
    "underlying",
    "verify_decomposition",
    "verify_embedding",
]
