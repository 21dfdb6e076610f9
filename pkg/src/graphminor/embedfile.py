"""Versioned YAML documents holding chains plus run metadata."""
from __future__ import annotations

from dataclasses import asdict
from pathlib import Path

import yaml

from graphminor.embedder import EmbedOutcome, EmbedParams
from graphminor.graph import Graph, GraphError

FORMAT_VERSION = 1


def outcome_document(outcome: EmbedOutcome, g: Graph, h: Graph, params: EmbedParams,
                     g_source: str = "", timing: bool = True) -> dict:
    stats = outcome.stats
    metric = stats.metric
    doc = {
        "format": FORMAT_VERSION,
        "success": outcome.success,
        "kind": "embedding" if outcome.success else "decomposition",
        "g": {"source": g_source, "vertex_count": g.vertex_count, "edge_count": g.edge_count},
        "h": {"vertex_count": h.vertex_count, "edge_count": h.edge_count},
        "params": asdict(params),
        "stats": {
            "tries": stats.tries,
            "rounds": stats.rounds,
            "pops": stats.pops,
            "max_occupancy": metric.max_occupancy if metric else None,
            "total_chain_size": metric.total_chain_size if metric else None,
        },
        "chains": {x: [int(v) for v in c] for x, c in enumerate(outcome.chains)},
    }
    if timing:
        doc["stats"]["wall_time_s"] = round(stats.wall_time, 3)
    return doc


def dumps(doc: dict) -> str:
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None, width=100)


def loads(text: str, g: Graph | None = None) -> dict:
    """Parse a document; with ``g`` given, check that chain ids fit it."""
    doc = yaml.safe_load(text)
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_VERSION:
        raise GraphError(f"not a format-{FORMAT_VERSION} embedding file")
    chains = doc.get("chains") or {}
    n_h = doc["h"]["vertex_count"]
    if sorted(chains) != list(range(n_h)):
        raise GraphError("chains must be keyed by H-vertices 0..n-1")
    doc["chains"] = {int(x): [int(v) for v in c] for x, c in chains.items()}
    if g is not None:
        if doc["g"]["vertex_count"] != g.vertex_count:
            raise GraphError("embedding file was written for a different G")
        for c in doc["chains"].values():
            if any(not 0 <= v < g.vertex_count for v in c):
                raise GraphError("chain vertex outside G")
    return doc


def chains_of(doc: dict) -> list[list[int]]:
    return [doc["chains"][x] for x in range(len(doc["chains"]))]


def write(doc: dict, path: str | Path) -> None:
    Path(path).write_text(dumps(doc))


def read(path: str | Path, g: Graph | None = None) -> dict:
    return loads(Path(path).read_text(), g)
