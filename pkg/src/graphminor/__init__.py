"""Heuristic graph-minor embedding into sparse hardware graphs such as Chimera."""
from graphminor.embedder import EmbedOutcome, EmbedParams, find_embedding
from graphminor.generators import (
    ChimeraSpec,
    chimera_graph,
    complete_graph,
    grid_graph,
    path_graph,
    random_cubic_graph,
)
from graphminor.graph import Graph, build_graph, diameter
from graphminor.verify import verify_decomposition, verify_embedding

__all__ = [
    "ChimeraSpec",
    "EmbedOutcome",
    "EmbedParams",
    "Graph",
    "build_graph",
    "chimera_graph",
    "complete_graph",
    "diameter",
    "find_embedding",
    "grid_graph",
    "path_graph",
    "random_cubic_graph",
    "verify_decomposition",
    "verify_embedding",
]
