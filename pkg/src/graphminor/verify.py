"""Check embeddings and G-decompositions against the model definition.

A model maps each H-vertex to a chain of G-vertices.  It is an embedding
when every chain is nonempty and connected, chains are disjoint, and every
H-edge is realised by a G-edge between the two chains.  A G-decomposition
drops disjointness; two overlapping chains are then considered in contact.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from graphminor.graph import Graph, GraphError

EMPTY = "empty-chain"
DISCONNECTED = "disconnected-chain"
OVERLAP = "overlap"
MISSING_EDGE = "missing-edge"


@dataclass(frozen=True)
class Violation:
    kind: str
    h_vertices: tuple[int, ...]
    witness: tuple[int, ...] = ()

    def __str__(self):
        return f"{self.kind} h={list(self.h_vertices)} g={list(self.witness)}"


def _chains(g: Graph, h: Graph, phi) -> list[frozenset[int]]:
    if isinstance(phi, Mapping):
        if set(phi) - set(range(h.vertex_count)):
            raise GraphError("model has keys that are not H-vertices")
        phi = [phi.get(x, ()) for x in range(h.vertex_count)]
    if len(phi) != h.vertex_count:
        raise GraphError(f"model has {len(phi)} chains for {h.vertex_count} H-vertices")
    chains = [frozenset(int(v) for v in c) for c in phi]
    for c in chains:
        for v in c:
            if not 0 <= v < g.vertex_count:
                raise GraphError(f"chain vertex {v} not in G")
    return chains


def _split(g: Graph, chain: frozenset[int]) -> list[int]:
    """Vertices of ``chain`` not reachable from its smallest member inside the chain."""
    start = min(chain)
    seen = {start}
    todo = [start]
    while todo:
        u = todo.pop()
        for v in g.adjacency[u]:
            if v in chain and v not in seen:
                seen.add(v)
                todo.append(v)
    return sorted(chain - seen)


def _touching(g: Graph, a: frozenset[int], b: frozenset[int], allow_shared: bool):
    """A witness ``(u, v)`` with ``u`` in ``a``, ``v`` in ``b`` and ``uv`` an edge, else None."""
    if allow_shared:
        common = a & b
        if common:
            v = min(common)
            return (v, v)
    if len(a) > len(b):
        a, b = b, a
        flip = True
    else:
        flip = False
    for u in sorted(a):
        for v in g.adjacency[u]:
            if v in b:
                return (v, u) if flip else (u, v)
    return None


def _check(g: Graph, h: Graph, phi, disjoint: bool) -> list[Violation]:
    chains = _chains(g, h, phi)
    out = []
    for x, c in enumerate(chains):
        if not c:
            out.append(Violation(EMPTY, (x,)))
            continue
        rest = _split(g, c)
        if rest:
            out.append(Violation(DISCONNECTED, (x,), tuple(rest)))
    if disjoint:
        owner: dict[int, int] = {}
        for x, c in enumerate(chains):
            for v in sorted(c):
                if v in owner:
                    out.append(Violation(OVERLAP, (owner[v], x), (v,)))
                else:
                    owner[v] = x
    for x, y in h.edges():
        if not chains[x] or not chains[y]:
            continue
        if _touching(g, chains[x], chains[y], allow_shared=not disjoint) is None:
            out.append(Violation(MISSING_EDGE, (x, y)))
    return out


def verify_embedding(g: Graph, h: Graph, phi) -> list[Violation]:
    """All violations of the minor-model conditions; empty means H is a minor of G."""
    return _check(g, h, phi, disjoint=True)


def verify_decomposition(g: Graph, h: Graph, phi) -> list[Violation]:
    """Violations of chain connectivity and edge coverage, overlaps allowed."""
    return _check(g, h, phi, disjoint=False)


def is_embedding(g: Graph, h: Graph, phi: Sequence) -> bool:
    return not verify_embedding(g, h, phi)
