"""Vertex-weighted shortest paths from vertex sets.

Weights live on vertices: a path costs the sum of the weights of the
vertices it enters, so the source set itself contributes nothing.  This is
Dijkstra on the directed graph whose arcs carry the weight of their head,
seeded with every source-set member at distance zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from graphminor import _kernels
from graphminor.graph import Graph, GraphError

INF = math.inf

#: largest weight exponent kept; beyond it weights saturate
MAX_WEIGHT_LOG2 = 500


class SearchError(GraphError):
    pass


def vertex_weights(occupancy: np.ndarray, base: float) -> np.ndarray:
    """``base ** occupancy`` as float64, saturating above ``2**MAX_WEIGHT_LOG2``.

    The exponent is clipped before exponentiation, so ordering between
    small occupancies is exact and huge ones never overflow.
    """
    occupancy = np.asarray(occupancy)
    if base <= 1:
        return np.ones(occupancy.shape, dtype=np.float64)
    kmax = int(MAX_WEIGHT_LOG2 // math.log2(base))
    table = float(base) ** np.arange(kmax + 1, dtype=np.float64)
    return table[np.minimum(occupancy, kmax)]


def _flatten(sources: Sequence[Iterable[int]], n: int) -> tuple[np.ndarray, np.ndarray]:
    ptr = [0]
    ids: list[int] = []
    for s in sources:
        members = sorted(set(int(v) for v in s))
        if not members:
            raise SearchError("source sets must be nonempty")
        if members[0] < 0 or members[-1] >= n:
            raise SearchError("source vertex out of range")
        ids.extend(members)
        ptr.append(len(ids))
    if len(ptr) == 1:
        raise SearchError("at least one source set is required")
    return np.array(ptr, dtype=np.int64), np.array(ids, dtype=np.int64)


def _as_weights(g: Graph, weights) -> np.ndarray:
    w = np.ascontiguousarray(weights, dtype=np.float64)
    if w.shape != (g.vertex_count,):
        raise SearchError(f"need {g.vertex_count} weights, got shape {w.shape}")
    return w


def _walk(parent: np.ndarray, v: int) -> list[int]:
    path = [v]
    while parent[v] >= 0:
        v = int(parent[v])
        path.append(v)
    return path


@dataclass
class DistanceTable:
    """Best distances and shortest-path-tree parents from one source set."""
    dist: np.ndarray
    parent: np.ndarray
    pops: int = 0

    def path(self, v: int) -> list[int]:
        """Vertices from ``v`` back to (and including) a source-set member."""
        if not math.isfinite(self.dist[v]):
            raise SearchError(f"vertex {v} is unreachable")
        return _walk(self.parent, v)


@dataclass
class MultisourceResult:
    """Outcome of a simultaneous search from several source sets.

    ``winner`` is the first vertex reached from every source, or None when
    no such vertex exists.  Rows of ``dist``/``parent`` are per source;
    ``explored[i, v]`` says whether ``v`` was settled for source ``i``.
    """
    winner: int | None
    dist: np.ndarray
    parent: np.ndarray
    explored: np.ndarray
    pops: int

    @property
    def reachable(self) -> bool:
        return self.winner is not None

    @property
    def max_distance(self) -> float:
        if self.winner is None:
            return INF
        return float(self.dist[:, self.winner].max())

    def path(self, source: int, v: int | None = None) -> list[int]:
        v = self.winner if v is None else v
        if v is None or not self.explored[source, v]:
            raise SearchError(f"vertex {v} was not reached from source {source}")
        return _walk(self.parent[source], v)


def _rank(g: Graph, rank) -> np.ndarray:
    if rank is None:
        return np.arange(g.vertex_count, dtype=np.int64)
    rank = np.ascontiguousarray(rank, dtype=np.int64)
    if rank.shape != (g.vertex_count,):
        raise SearchError("rank needs one entry per vertex")
    return rank


def weighted_sssp_from_set(g: Graph, weights, source_set: Iterable[int], rank=None) -> DistanceTable:
    """Dijkstra from a vertex set; ties settle by ``rank`` (default: vertex id)."""
    indptr, indices = g.csr
    ptr, ids = _flatten([source_set], g.vertex_count)
    dist, parent, pops = _kernels.sssp_many(
        indptr, indices, _as_weights(g, weights), _rank(g, rank), ptr, ids
    )
    return DistanceTable(dist[0], parent[0], pops)


def weighted_sssp_many(g: Graph, weights, source_sets: Sequence[Iterable[int]], rank=None):
    """Batch form of :func:`weighted_sssp_from_set`: ``(dist, parent, pops)`` with one row per set."""
    indptr, indices = g.csr
    ptr, ids = _flatten(source_sets, g.vertex_count)
    return _kernels.sssp_many(indptr, indices, _as_weights(g, weights), _rank(g, rank), ptr, ids)


def _result(raw) -> MultisourceResult:
    winner, dist, parent, explored, pops = raw
    return MultisourceResult(None if winner < 0 else int(winner), dist, parent, explored, int(pops))


def multisource_dijkstra(g: Graph, weights, sources: Sequence[Iterable[int]]) -> MultisourceResult:
    indptr, indices = g.csr
    ptr, ids = _flatten(sources, g.vertex_count)
    return _result(_kernels.multisource_dijkstra(indptr, indices, _as_weights(g, weights), ptr, ids))


def multisource_astar(g: Graph, weights, sources: Sequence[Iterable[int]], heuristic=None) -> MultisourceResult:
    """Multisource A*; ``heuristic`` defaults to all zeros.

    With the heuristic set to hop distance from a target vertex, and every
    weight at least 1, the heuristic is consistent and each
    (vertex, source) pair is settled at most once.
    """
    indptr, indices = g.csr
    ptr, ids = _flatten(sources, g.vertex_count)
    if heuristic is None:
        h = np.zeros(g.vertex_count)
    else:
        h = np.ascontiguousarray(heuristic, dtype=np.float64)
        if h.shape != (g.vertex_count,) or not np.all(np.isfinite(h)) or (h < 0).any():
            raise SearchError("heuristic must be finite, non-negative, one value per vertex")
    return _result(_kernels.multisource_astar(indptr, indices, _as_weights(g, weights), ptr, ids, h))
