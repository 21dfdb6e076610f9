"""Success-rate / runtime sweeps over benchmark graph families."""
from __future__ import annotations

import csv
import io
import statistics
from dataclasses import dataclass, fields, replace
from typing import Iterable, Sequence

import numpy as np

from graphminor.embedder import EmbedParams, find_embedding
from graphminor.generators import complete_graph, grid_graph, random_cubic_graph
from graphminor.graph import Graph
from graphminor.verify import verify_embedding

FAMILIES = ("complete", "grid", "cubic")
MODES = ("global", "localized")


@dataclass
class BenchRow:
    family: str
    h_size: int
    g_spec: str
    instances: int
    trials: int
    successes: int
    success_rate: float
    median_instance_rate: float
    median_time_s: float | None
    mean_rounds: float
    mean_pops: float
    mode: str


def derive_seed(*parts: int) -> int:
    """Stable 63-bit seed from integer parts."""
    return int(np.random.SeedSequence([int(p) for p in parts]).generate_state(2, np.uint64)[0] >> 1)


def family_graph(family: str, size: int, seed: int = 0) -> Graph:
    if family == "complete":
        return complete_graph(size)
    if family == "grid":
        return grid_graph(size, size)
    if family == "cubic":
        return random_cubic_graph(size, seed)
    raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")


def run_cell(g: Graph, h: Graph, params: EmbedParams):
    """One embedder run; success only counts after independent verification."""
    out = find_embedding(g, h, params)
    ok = out.success and not verify_embedding(g, h, out.chains)
    return ok, out.stats


def bench(family: str, sizes: Iterable[int], g: Graph, g_spec: str, trials: int,
          instances: int = 1, modes: Sequence[str] = ("global",), seed: int = 0,
          params: EmbedParams | None = None) -> list[BenchRow]:
    """One row per (size, mode).

    Every mode sees the same guest instances and the same per-trial seeds.
    ``instances`` only matters for the random cubic family.
    """
    base = params or EmbedParams(tries=1)
    if family != "cubic":
        instances = 1
    rows = []
    for size in sizes:
        guests = [family_graph(family, size, derive_seed(seed, 1, size, i)) for i in range(instances)]
        for mode in modes:
            if mode not in MODES:
                raise ValueError(f"unknown mode {mode!r}")
            times, rounds, pops, rates = [], [], [], []
            successes = 0
            for i, h in enumerate(guests):
                wins = 0
                for t in range(trials):
                    p = replace(base, seed=derive_seed(seed, 2, size, i, t), localized=mode == "localized")
                    ok, stats = run_cell(g, h, p)
                    wins += ok
                    times.append(stats.wall_time)
                    rounds.append(stats.rounds)
                    pops.append(stats.pops)
                successes += wins
                rates.append(wins / trials)
            total = instances * trials
            rows.append(BenchRow(
                family=family,
                h_size=size,
                g_spec=g_spec,
                instances=instances,
                trials=total,
                successes=successes,
                success_rate=successes / total,
                median_instance_rate=statistics.median(rates),
                median_time_s=round(statistics.median(times), 3),
                mean_rounds=round(statistics.fmean(rounds), 3),
                mean_pops=round(statistics.fmean(pops), 1),
                mode=mode,
            ))
    return rows


def to_csv(rows: list[BenchRow], timing: bool = True) -> str:
    names = [f.name for f in fields(BenchRow)]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(names)
    for r in rows:
        values = [getattr(r, n) for n in names]
        if not timing:
            values[names.index("median_time_s")] = ""
        w.writerow(values)
    return buf.getvalue()
