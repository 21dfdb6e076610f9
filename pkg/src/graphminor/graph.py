"""Immutable undirected simple graphs on dense integer vertex ids.

Both the host graph G and the guest graph H use this type.  Vertices are
``0..n-1``; adjacency lists are sorted tuples.  Compressed (CSR) arrays
and the all-pairs hop-distance matrix are derived lazily and cached, so
the search kernels can index plain arrays.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from graphminor import _kernels

log = logging.getLogger(__name__)

#: hop distance reported for vertices that cannot be reached
UNREACHABLE = -1


class GraphError(ValueError):
    """Raised for malformed graph input or unsatisfied preconditions."""


class DisconnectedGraphError(GraphError):
    pass


@dataclass(frozen=True, eq=False)
class Graph:
    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]
    #: number of self-loops and duplicate edges dropped at construction
    dropped: int = field(default=0, compare=False)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.adjacency == other.adjacency

    def __hash__(self):
        return hash((self.vertex_count, self.adjacency))

    def __len__(self):
        return self.vertex_count

    def __repr__(self):
        return f"Graph(vertex_count={self.vertex_count}, edge_count={self.edge_count})"

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjacency_sets[u]

    @cached_property
    def _adjacency_sets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(a) for a in self.adjacency)

    @cached_property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``."""
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """``(indptr, indices)`` arrays of the adjacency lists."""
        indptr = np.zeros(self.vertex_count + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(a) for a in self.adjacency])
        indices = np.fromiter(
            (v for a in self.adjacency for v in a), dtype=np.int64, count=int(indptr[-1])
        )
        return indptr, indices

    @cached_property
    def hop_distances(self) -> np.ndarray:
        """All-pairs unweighted distance matrix (int32, ``UNREACHABLE`` = -1)."""
        indptr, indices = self.csr
        return _kernels.all_pairs_bfs(indptr, indices)


def build_graph(vertex_count: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a simple graph, collapsing duplicate edges and dropping self-loops.

    >>> build_graph(4, [(0, 1), (1, 0), (1, 2)]).edge_count
    2
    """
    if vertex_count < 0:
        raise GraphError(f"vertex_count must be non-negative, got {vertex_count}")
    nbrs: list[set[int]] = [set() for _ in range(vertex_count)]
    dropped = 0
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise GraphError(f"edge ({u}, {v}) out of range for {vertex_count} vertices")
        if u == v or v in nbrs[u]:
            dropped += 1
            continue
        nbrs[u].add(v)
        nbrs[v].add(u)
    if dropped:
        log.debug("dropped %d self-loops/duplicate edges", dropped)
    return Graph(vertex_count, tuple(tuple(sorted(a)) for a in nbrs), dropped)


def bfs_distances(g: Graph, source: int) -> list[int]:
    """Hop counts from ``source``; unreachable vertices get ``UNREACHABLE``."""
    if not 0 <= source < g.vertex_count:
        raise GraphError(f"source {source} out of range")
    dist = [UNREACHABLE] * g.vertex_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in g.adjacency[u]:
            if dist[v] == UNREACHABLE:
                dist[v] = du
                queue.append(v)
    return dist


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Vertex sets of the connected components, ordered by smallest member."""
    seen = [False] * g.vertex_count
    parts = []
    for s in range(g.vertex_count):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for v in g.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    stack.append(v)
        parts.append(frozenset(comp))
    return parts


def is_connected(g: Graph) -> bool:
    return g.vertex_count > 0 and len(connected_components(g)) == 1


def diameter(g: Graph) -> int:
    """Largest hop distance between two vertices of a connected graph.

    A single vertex has diameter 1 by convention so that exponential vertex
    weights ``D**k`` never collapse to zero.
    """
    if g.vertex_count == 0:
        raise GraphError("diameter of an empty graph is undefined")
    dist = g.hop_distances
    if (dist == UNREACHABLE).any():
        raise DisconnectedGraphError("diameter requires a connected graph")
    return max(int(dist.max()), 1)


# -- edge-list text format ----------------------------------------------------

def format_edgelist(g: Graph) -> str:
    lines = [f"p {g.vertex_count} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str) -> Graph:
    """Parse the ``p <n> <m>`` edge-list format (0-indexed, ``#`` comments)."""
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "p":
                if header is not None or len(parts) != 3:
                    raise GraphError(f"line {lineno}: bad header {raw!r}")
                header = (int(parts[1]), int(parts[2]))
            elif len(parts) == 2 and header is not None:
                edges.append((int(parts[0]), int(parts[1])))
            else:
                raise GraphError(f"line {lineno}: cannot parse {raw!r}")
        except ValueError as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"line {lineno}: cannot parse {raw!r}") from exc
    if header is None:
        raise GraphError("missing 'p <vertex_count> <edge_count>' header")
    g = build_graph(header[0], edges)
    if len(edges) != header[1]:
        log.warning("header declares %d edges, found %d lines", header[1], len(edges))
    return g


def read_edgelist(path: str | Path) -> Graph:
    return parse_edgelist(Path(path).read_text())


def write_edgelist(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_edgelist(g))
