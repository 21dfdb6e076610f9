"""Heuristic minor embedding by repeated chain rip-up and reroute.

Each H-vertex is represented by a chain of G-vertices.  Chains are allowed
to overlap while the search runs; a G-vertex used by ``k`` other chains
weighs ``D**k`` (``D`` the diameter of G), so weighted shortest paths steer
new chains away from congestion.  One *round* visits every H-vertex in a
fixed random order, tears out its chain and regrows it from a root that
minimises the summed weighted distance to the neighbouring chains.  Rounds
repeat until no G-vertex is shared, or until the metric
``(max occupancy, total chain size)`` has not improved for ``patience``
rounds.

In *localized* mode the root is found by multisource A* instead: the search
grows from all neighbour chains at once, biased toward the chain's previous
root, and stops at the first vertex every chain has reached.
"""
from __future__ import annotations

import logging
import math
import time
from dataclasses import asdict, dataclass, field
from functools import total_ordering
from typing import Iterable

import numpy as np

from graphminor import search
from graphminor.graph import UNREACHABLE, Graph, GraphError
from graphminor.verify import verify_embedding

log = logging.getLogger(__name__)


@dataclass
class EmbedParams:
    seed: int = 0
    patience: int = 10
    max_rounds: int = 1000
    tries: int = 10
    localized: bool = False
    randomize_order: bool = True
    root_sampling: bool = True
    sampling_scale: float = 1.0

    def __post_init__(self):
        for name in ("patience", "max_rounds", "tries"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if not self.sampling_scale > 0:
            raise ValueError("sampling_scale must be positive")


@total_ordering
@dataclass(frozen=True)
class ImprovementMetric:
    """Lexicographic progress measure; smaller is better."""
    max_occupancy: int
    total_chain_size: int

    def _key(self):
        return (self.max_occupancy, self.total_chain_size)

    def __lt__(self, other):
        return self._key() < other._key()


@dataclass
class EmbedStats:
    tries: int = 0
    rounds: int = 0
    pops: int = 0
    wall_time: float = 0.0
    metric: ImprovementMetric | None = None


@dataclass
class EmbedOutcome:
    """Result of :func:`find_embedding`.

    ``chains`` is a valid embedding when ``success`` is true, and otherwise
    the best G-decomposition seen (overlapping chains).
    """
    success: bool
    chains: list[list[int]]
    stats: EmbedStats = field(default_factory=EmbedStats)

    @property
    def embedding(self) -> dict[int, list[int]] | None:
        return dict(enumerate(self.chains)) if self.success else None


class Stuck(Exception):
    """No G-vertex can reach every neighbouring chain."""


def weight_base(g: Graph) -> int:
    """The ``D`` in ``D**occupancy``: hop diameter of G, at least 2.

    Disconnected graphs use the largest finite distance.
    """
    hop = g.hop_distances
    return max(int(hop.max()) if hop.size else 0, 2)


class EmbedderState:
    """Chains, per-G-vertex occupancy and per-H-vertex previous roots."""

    def __init__(self, g: Graph, h: Graph, rng: np.random.Generator, base: float | None = None):
        self.g = g
        self.h = h
        self.rng = rng
        self.base = weight_base(g) if base is None else base
        self.chains: list[set[int]] = [set() for _ in range(h.vertex_count)]
        self.occupancy = np.zeros(g.vertex_count, dtype=np.int64)
        self.previous_root: list[int | None] = [None] * h.vertex_count
        self.stage = 1
        self.pops = 0

    def tear_out(self, x: int) -> None:
        chain = self.chains[x]
        if chain:
            self.occupancy[list(chain)] -= 1
            chain.clear()

    def extend(self, x: int, vertices: Iterable[int]) -> None:
        chain = self.chains[x]
        for v in vertices:
            if v not in chain:
                chain.add(v)
                self.occupancy[v] += 1

    def compute_weights(self, excluded: int | None = None) -> np.ndarray:
        occ = self.occupancy
        if excluded is not None and self.chains[excluded]:
            occ = occ.copy()
            occ[list(self.chains[excluded])] -= 1
        return search.vertex_weights(occ, self.base)

    def metric(self) -> ImprovementMetric:
        return ImprovementMetric(
            int(self.occupancy.max()) if self.occupancy.size else 0,
            sum(len(c) for c in self.chains),
        )

    def audit(self) -> bool:
        """Recount occupancy from the chains and compare."""
        fresh = np.zeros_like(self.occupancy)
        for c in self.chains:
            fresh[list(c)] += 1
        return bool((fresh == self.occupancy).all())

    def snapshot(self) -> list[list[int]]:
        return [sorted(c) for c in self.chains]


def compute_weights(state: EmbedderState, excluded: int | None = None) -> np.ndarray:
    """Vertex weights ``D**k`` with ``k`` counting chains other than ``excluded``'s."""
    return state.compute_weights(excluded)


def sample_root(costs: np.ndarray, rng: np.random.Generator | None = None,
                sampling: bool = True, scale: float = 1.0) -> int:
    """Pick a root from per-vertex costs.

    Without sampling this is the argmin, lowest id first on ties.  With
    sampling, vertex ``g`` is drawn with probability proportional to
    ``exp(-(cost(g) - min_cost) / scale)``; infinite costs are never drawn.
    """
    costs = np.asarray(costs, dtype=np.float64)
    finite = np.isfinite(costs)
    if not finite.any():
        raise Stuck("all root costs are infinite")
    if not sampling:
        return int(np.argmin(costs))
    idx = np.flatnonzero(finite)
    c = costs[idx]
    p = np.exp(-(c - c.min()) / scale)
    p /= p.sum()
    return int(idx[rng.choice(len(idx), p=p)])


def _assign_paths(root: int, paths: list[list[int]]) -> tuple[set[int], list[list[int]]]:
    """Split root-to-neighbour paths between the new chain and the neighbours.

    Each path starts at ``root`` and ends next to its neighbour chain.  A
    vertex lying on two or more paths belongs to the new chain, as does
    everything between it and the root, which keeps the new chain connected.
    The remaining tail of each path is handed to that path's neighbour.
    """
    seen: dict[int, int] = {}
    for p in paths:
        for v in p:
            seen[v] = seen.get(v, 0) + 1
    new_chain = {root}
    tails = []
    for p in paths:
        cut = 0
        for t, v in enumerate(p):
            if seen[v] > 1:
                cut = t
        new_chain.update(p[:cut + 1])
        tails.append(p[cut + 1:])
    return new_chain, tails


def root_costs(state: EmbedderState, sources: list[set[int]], weights: np.ndarray):
    """Total cost of every G-vertex as a root, plus the shortest-path parents.

    The cost toward one neighbour chain is the weighted distance from the
    chain, not counting the chain's own weights, or the vertex's weight if
    it lies inside that chain.
    """
    dist, parent, pops = search.weighted_sssp_many(state.g, weights, sources)
    state.pops += int(pops)
    for row, chain in zip(dist, sources):
        idx = list(chain)
        row[idx] = weights[idx]
    return dist.sum(axis=0), parent


def find_minimal_vertex_model(state: EmbedderState, target: int, weights: np.ndarray,
                              localized: bool = False, root_sampling: bool = True,
                              sampling_scale: float = 1.0) -> set[int]:
    """Grow a new chain for ``target`` against its neighbours' current chains.

    ``weights`` must already exclude the target's own chain.  Path tails
    are added to the neighbour chains in ``state``; the new chain is
    returned, not installed.  Raises :class:`Stuck` when no root exists.
    """
    g = state.g
    nbrs = [y for y in state.h.adjacency[target] if state.chains[y]]
    if not nbrs:
        root = int(state.rng.integers(g.vertex_count))
        state.previous_root[target] = root
        return {root}
    sources = [state.chains[y] for y in nbrs]

    if localized:
        prev = state.previous_root[target]
        if prev is None:
            heur = None
        else:
            heur = g.hop_distances[prev].astype(np.float64)
            heur[heur == UNREACHABLE] = 0.0
        res = search.multisource_astar(g, weights, sources, heur)
        state.pops += res.pops
        if res.winner is None:
            raise Stuck(f"no common vertex for H-vertex {target}")
        root = res.winner
        walks = [res.path(i) for i in range(len(nbrs))]
    else:
        costs, parent = root_costs(state, sources, weights)
        root = sample_root(costs, state.rng, root_sampling, sampling_scale)
        walks = [search._walk(parent[i], root) for i in range(len(nbrs))]

    # drop the endpoint inside the neighbour chain
    paths = [w[:-1] for w in walks]
    new_chain, tails = _assign_paths(root, [p for p in paths if p])
    for y, tail in zip((y for y, p in zip(nbrs, paths) if p), tails):
        state.extend(y, tail)
    state.previous_root[target] = root
    return new_chain


def _embed_once(g: Graph, h: Graph, params: EmbedParams, rng: np.random.Generator,
                base: int, stats: EmbedStats) -> tuple[bool, list[list[int]], ImprovementMetric]:
    state = EmbedderState(g, h, rng, base)
    order = list(range(h.vertex_count))
    if params.randomize_order:
        rng.shuffle(order)
    best = None
    best_chains = state.snapshot()
    stale = 0
    for rnd in range(1, params.max_rounds + 1):
        state.stage = rnd
        stuck = False
        for x in order:
            state.tear_out(x)
            weights = state.compute_weights()
            try:
                chain = find_minimal_vertex_model(
                    state, x, weights, params.localized, params.root_sampling, params.sampling_scale
                )
            except Stuck:
                stuck = True
                continue
            state.extend(x, chain)
        stats.rounds += 1
        metric = state.metric()
        if metric.max_occupancy <= 1 and all(state.chains):
            chains = state.snapshot()
            if not verify_embedding(g, h, chains):
                stats.pops += state.pops
                return True, chains, metric
            log.warning("round %d: disjoint chains failed verification", rnd)
        if not stuck and (best is None or metric < best):
            best = metric
            best_chains = state.snapshot()
            stale = 0
        else:
            stale += 1
        log.debug("round %d: %s stale=%d", rnd, metric, stale)
        if rnd >= 2 and stale >= params.patience:
            break
    stats.pops += state.pops
    return False, best_chains, best if best is not None else state.metric()


def find_embedding(g: Graph, h: Graph, params: EmbedParams | None = None, **kwargs) -> EmbedOutcome:
    """Search for H as a minor of G.

    Runs up to ``params.tries`` independent restarts, each seeded from
    ``(params.seed, try_index)``.  Returns the first verified embedding, or
    else the best G-decomposition over all restarts.
    """
    if params is None:
        params = EmbedParams(**kwargs)
    elif kwargs:
        params = EmbedParams(**{**asdict(params), **kwargs})
    if h.vertex_count < 1 or g.vertex_count < 1:
        raise GraphError("both graphs need at least one vertex")
    stats = EmbedStats()
    start = time.perf_counter()
    if h.vertex_count > g.vertex_count:
        stats.wall_time = time.perf_counter() - start
        return EmbedOutcome(False, [[] for _ in range(h.vertex_count)], stats)
    base = weight_base(g)
    best_chains = None
    best_metric = None
    for t in range(params.tries):
        rng = np.random.default_rng([params.seed, t])
        stats.tries += 1
        ok, chains, metric = _embed_once(g, h, params, rng, base, stats)
        if ok:
            stats.metric = metric
            stats.wall_time = time.perf_counter() - start
            return EmbedOutcome(True, chains, stats)
        if best_metric is None or metric < best_metric:
            best_metric, best_chains = metric, chains
    stats.metric = best_metric
    stats.wall_time = time.perf_counter() - start
    return EmbedOutcome(False, best_chains, stats)
