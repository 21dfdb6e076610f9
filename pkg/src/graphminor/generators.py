"""Chimera hardware graphs and the benchmark guest families."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from graphminor.graph import Graph, GraphError, build_graph


@dataclass(frozen=True)
class ChimeraSpec:
    """An ``rows x cols`` grid of ``K_{L,L}`` unit cells with optional broken qubits.

    Qubit ``k`` on shore ``u`` (0 = vertical, 1 = horizontal) of cell
    ``(i, j)`` has linear index ``((i*cols + j)*2 + u)*L + k`` before masking.
    """
    rows: int
    cols: int | None = None
    shore: int = 4
    broken: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.cols is None:
            object.__setattr__(self, "cols", self.rows)
        object.__setattr__(self, "broken", frozenset(int(v) for v in self.broken))
        if min(self.rows, self.cols, self.shore) < 1:
            raise GraphError("Chimera rows, cols and shore size must be >= 1")
        bad = [v for v in self.broken if not 0 <= v < self.full_size]
        if bad:
            raise GraphError(f"broken qubits out of range: {sorted(bad)[:5]}")

    @property
    def full_size(self) -> int:
        return 2 * self.shore * self.rows * self.cols

    def linear_index(self, i: int, j: int, u: int, k: int) -> int:
        return ((i * self.cols + j) * 2 + u) * self.shore + k

    def relabel(self) -> dict[int, int]:
        """Map from unmasked linear index to the compacted vertex id."""
        keep = (v for v in range(self.full_size) if v not in self.broken)
        return {old: new for new, old in enumerate(keep)}

    def __str__(self):
        return f"C({self.rows},{self.cols},{self.shore})"


def chimera_edges(m: int, n: int, l: int) -> list[tuple[int, int]]:
    """Edges of the unmasked Chimera graph in linear indices."""
    def q(i, j, u, k):
        return ((i * n + j) * 2 + u) * l + k

    edges = []
    for i in range(m):
        for j in range(n):
            for a in range(l):
                for b in range(l):
                    edges.append((q(i, j, 0, a), q(i, j, 1, b)))
            for k in range(l):
                if i + 1 < m:
                    edges.append((q(i, j, 0, k), q(i + 1, j, 0, k)))
                if j + 1 < n:
                    edges.append((q(i, j, 1, k), q(i, j + 1, 1, k)))
    return edges


def chimera_graph(spec: ChimeraSpec | int, cols: int | None = None, shore: int = 4) -> Graph:
    """Build the Chimera graph; broken qubits are deleted and ids compacted.

    Accepts a :class:`ChimeraSpec` or the ``(rows, cols, shore)`` numbers.
    """
    if not isinstance(spec, ChimeraSpec):
        spec = ChimeraSpec(spec, cols, shore)
    edges = chimera_edges(spec.rows, spec.cols, spec.shore)
    if not spec.broken:
        return build_graph(spec.full_size, edges)
    new = spec.relabel()
    kept = [(new[u], new[v]) for u, v in edges if u in new and v in new]
    return build_graph(len(new), kept)


def read_mask(path: str | Path) -> frozenset[int]:
    out = set()
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.add(int(line))
    return frozenset(out)


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return build_graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def grid_graph(rows: int, cols: int | None = None) -> Graph:
    """Orthogonal ``rows x cols`` grid, vertex ``r*cols + c``."""
    cols = rows if cols is None else cols
    if rows < 1 or cols < 1:
        raise GraphError("grid dimensions must be >= 1")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return build_graph(rows * cols, edges)


def path_graph(n: int) -> Graph:
    return build_graph(n, ((v, v + 1) for v in range(n - 1)))


def random_cubic_graph(n: int, seed: int | None = None, max_attempts: int = 10_000) -> Graph:
    """Uniform random 3-regular simple graph via the pairing model.

    Stubs are shuffled and paired; any pairing with a loop or a repeated
    edge is rejected whole and redrawn.
    """
    if n < 4 or n % 2:
        raise GraphError("random cubic graphs need an even n >= 4")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), 3)
    for _ in range(max_attempts):
        pairs = rng.permutation(stubs).reshape(-1, 2)
        pairs.sort(axis=1)
        if (pairs[:, 0] == pairs[:, 1]).any():
            continue
        if len(np.unique(pairs, axis=0)) < len(pairs):
            continue
        return build_graph(n, pairs.tolist())
    raise GraphError(f"no simple pairing found in {max_attempts} attempts")
