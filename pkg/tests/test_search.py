import math
import random

import numpy as np
import pytest

from graphminor.generators import grid_graph, path_graph
from graphminor.graph import bfs_distances, build_graph
from graphminor.search import (
    SearchError,
    multisource_astar,
    multisource_dijkstra,
    vertex_weights,
    weighted_sssp_from_set,
)

from oracles import adjacency_sets, full_dijkstra_minmax, path_enumeration_distances


def random_instance(rnd, n, p=0.35, wmax=16):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rnd.random() < p]
    g = build_graph(n, edges)
    weights = [float(rnd.randint(1, wmax)) for _ in range(n)]
    return g, weights


def replay(path, weights):
    """Re-add weights from the source end outward, as the search did."""
    acc = 0.0
    for v in reversed(path[:-1]):
        acc += weights[v]
    return acc


def test_sssp_unit_path():
    t = weighted_sssp_from_set(path_graph(3), [1.0, 1.0, 1.0], {0})
    assert t.dist.tolist() == [0.0, 1.0, 2.0]


def test_sssp_weighted_path():
    t = weighted_sssp_from_set(path_graph(3), [1.0, 5.0, 1.0], {0})
    assert t.dist.tolist() == [0.0, 5.0, 6.0]
    assert t.path(2) == [2, 1, 0]


def test_sssp_set_source_excludes_own_weight():
    t = weighted_sssp_from_set(path_graph(5), [9.0, 9.0, 2.0, 3.0, 9.0], {0, 1})
    assert t.dist.tolist() == [0.0, 0.0, 2.0, 5.0, 14.0]


def test_sssp_unreachable_is_inf():
    t = weighted_sssp_from_set(build_graph(3, [(0, 1)]), np.ones(3), {0})
    assert math.isinf(t.dist[2])
    with pytest.raises(SearchError):
        t.path(2)


def test_sssp_empty_source():
    with pytest.raises(SearchError):
        weighted_sssp_from_set(path_graph(3), np.ones(3), set())


def test_sssp_matches_path_enumeration():
    rnd = random.Random(1)
    for _ in range(100):
        n = rnd.randint(1, 8)
        g, w = random_instance(rnd, n)
        sources = set(rnd.sample(range(n), rnd.randint(1, min(3, n))))
        t = weighted_sssp_from_set(g, w, sources)
        expected = path_enumeration_distances(adjacency_sets(n, g.edges()), w, sources)
        assert t.dist.tolist() == expected
        for v in range(n):
            if math.isfinite(t.dist[v]):
                assert replay(t.path(v), w) == t.dist[v]
                assert t.path(v)[-1] in sources


def test_sssp_monotone_in_weights():
    rnd = random.Random(2)
    for _ in range(50):
        g, w = random_instance(rnd, 10)
        before = weighted_sssp_from_set(g, w, {0}).dist
        w2 = list(w)
        w2[rnd.randrange(10)] += rnd.randint(1, 10)
        after = weighted_sssp_from_set(g, w2, {0}).dist
        assert (after >= before).all()


def test_vertex_weights_powers_and_cap():
    w = vertex_weights(np.array([0, 1, 3, 10**6]), 7)
    assert w[:3].tolist() == [1.0, 7.0, 343.0]
    assert math.isfinite(w[3])
    assert w[3] > w[2]


def test_multisource_dijkstra_path_midpoint():
    r = multisource_dijkstra(path_graph(5), np.ones(5), [{0}, {4}])
    assert r.winner == 2
    assert r.max_distance == 2


def test_multisource_dijkstra_adjacent_tie():
    r = multisource_dijkstra(path_graph(5), np.ones(5), [{0}, {1}])
    assert r.winner in (0, 1)
    assert r.max_distance == 1
    # localized: far end never explored
    assert not r.explored[:, 4].any()


def test_multisource_unreachable():
    g = build_graph(4, [(0, 1), (2, 3)])
    assert not multisource_dijkstra(g, np.ones(4), [{0}, {3}]).reachable
    assert multisource_astar(g, np.ones(4), [{0}, {3}]).winner is None


def test_multisource_dijkstra_matches_minmax_oracle():
    rnd = random.Random(5)
    for _ in range(100):
        g, w = random_instance(rnd, 10)
        sources = [{s} for s in rnd.sample(range(10), 3)]
        r = multisource_dijkstra(g, w, sources)
        oracle = full_dijkstra_minmax(adjacency_sets(10, g.edges()), w, sources)
        assert r.max_distance == oracle


def test_multisource_dijkstra_expansion_order():
    rnd = random.Random(6)
    for _ in range(100):
        g, w = random_instance(rnd, 12)
        sources = [set(rnd.sample(range(12), rnd.randint(1, 2))) for _ in range(3)]
        r = multisource_dijkstra(g, w, sources)
        for i in range(3):
            settled = r.dist[i][r.explored[i]]
            frontier = r.dist[i][~r.explored[i]]
            if len(settled) and len(frontier):
                assert settled.max() <= frontier.min()


def test_astar_zero_heuristic_matches_dijkstra():
    rnd = random.Random(7)
    for _ in range(100):
        g, w = random_instance(rnd, 12)
        sources = [set(rnd.sample(range(12), rnd.randint(1, 2))) for _ in range(rnd.randint(1, 4))]
        a = multisource_astar(g, w, sources)
        d = multisource_dijkstra(g, w, sources)
        assert a.max_distance == d.max_distance


def test_astar_path_midpoint_with_heuristic():
    g = path_graph(5)
    h = bfs_distances(g, 2)
    guided = multisource_astar(g, np.ones(5), [{0}, {4}], h)
    blind = multisource_astar(g, np.ones(5), [{0}, {4}])
    assert guided.winner == blind.winner == 2
    # both searches must settle v0, v1, v3, v4 and v2 twice: nothing to save
    assert guided.pops == blind.pops == 6


def test_astar_heuristic_saves_pops_on_grid():
    g = grid_graph(9, 9)
    target = 4 * 9 + 4
    h = bfs_distances(g, target)
    sources = [{4 * 9}, {4 * 9 + 8}]
    guided = multisource_astar(g, np.ones(g.vertex_count), sources, h)
    blind = multisource_astar(g, np.ones(g.vertex_count), sources)
    assert guided.winner == target
    assert guided.max_distance == blind.max_distance == 4
    assert guided.pops < blind.pops


def test_astar_parent_chain_audit():
    rnd = random.Random(8)
    for _ in range(100):
        g, w = random_instance(rnd, 12)
        target = rnd.randrange(12)
        h = [float(max(d, 0)) for d in bfs_distances(g, target)]
        sources = [set(rnd.sample(range(12), rnd.randint(1, 2))) for _ in range(3)]
        r = multisource_astar(g, w, sources, h)
        if r.winner is None:
            continue
        assert r.explored[:, r.winner].all()
        for i, src in enumerate(sources):
            path = r.path(i)
            assert path[0] == r.winner and path[-1] in src
            for a, b in zip(path, path[1:]):
                assert g.has_edge(a, b)
            assert replay(path, w) == r.dist[i, r.winner]


def test_astar_consistent_heuristic_settles_pairs_once():
    rnd = random.Random(9)
    for _ in range(100):
        g, w = random_instance(rnd, 12)
        h = [float(max(d, 0)) for d in bfs_distances(g, rnd.randrange(12))]
        sources = [{s} for s in rnd.sample(range(12), 3)]
        r = multisource_astar(g, w, sources, h)
        assert r.pops == int(r.explored.sum())


def test_astar_rejects_bad_heuristic():
    with pytest.raises(SearchError):
        multisource_astar(path_graph(3), np.ones(3), [{0}], [0.0, -1.0, 0.0])
