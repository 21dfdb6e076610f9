import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphminor.generators import chimera_graph, complete_graph, path_graph
from graphminor.graph import (
    UNREACHABLE,
    DisconnectedGraphError,
    GraphError,
    bfs_distances,
    build_graph,
    connected_components,
    diameter,
    format_edgelist,
    parse_edgelist,
    read_edgelist,
    write_edgelist,
)

from oracles import components_by_union_find, floyd_warshall_hops


@st.composite
def edge_lists(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    if n == 0:
        return 0, []
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    return n, draw(st.lists(pairs, max_size=3 * n))


def test_build_dedups_symmetric_pair():
    g = build_graph(4, [(0, 1), (1, 0), (1, 2)])
    assert g.edge_count == 2
    assert g.edges() == [(0, 1), (1, 2)]
    assert g.dropped == 1


def test_build_isolated_vertices():
    g = build_graph(3, [])
    assert g.vertex_count == 3
    assert g.edge_count == 0
    assert all(g.degree(v) == 0 for v in range(3))


def test_build_drops_self_loops():
    g = build_graph(2, [(0, 0), (0, 1)])
    assert g.edges() == [(0, 1)]
    assert g.dropped == 1


@pytest.mark.parametrize("n, edges", [(-1, []), (2, [(0, 2)]), (2, [(-1, 0)])])
def test_build_rejects_bad_input(n, edges):
    with pytest.raises(GraphError):
        build_graph(n, edges)


def test_build_chimera_edge_count():
    m, n, l = 8, 8, 4
    formula = m * n * l * l + l * (m * (n - 1) + n * (m - 1))
    g = chimera_graph(m, n, l)
    assert g.vertex_count == 512
    assert formula == 1472 == g.edge_count


@given(edge_lists())
def test_constructed_graph_invariants(data):
    n, edges = data
    g = build_graph(n, edges)
    for u in range(n):
        nbrs = g.neighbors(u)
        assert list(nbrs) == sorted(set(nbrs))
        assert u not in nbrs
        for v in nbrs:
            assert u in g.neighbors(v)
            assert 0 <= v < n
    assert sum(g.degree(v) for v in range(n)) == 2 * g.edge_count


def test_bfs_path():
    assert bfs_distances(path_graph(4), 0) == [0, 1, 2, 3]


def test_bfs_disconnected():
    g = build_graph(4, [(0, 1), (2, 3)])
    assert bfs_distances(g, 0) == [0, 1, UNREACHABLE, UNREACHABLE]


def test_bfs_source_out_of_range():
    with pytest.raises(GraphError):
        bfs_distances(path_graph(3), 3)


def test_bfs_chimera_matches_floyd_warshall():
    g = chimera_graph(2, 2, 4)
    fw = floyd_warshall_hops(g.vertex_count, g.edges())
    assert bfs_distances(g, 0) == fw[0]
    assert g.hop_distances.tolist() == fw


@given(edge_lists())
def test_bfs_edge_difference_at_most_one(data):
    n, edges = data
    g = build_graph(n, edges)
    if n == 0:
        return
    d = bfs_distances(g, 0)
    for u, v in g.edges():
        if d[u] != UNREACHABLE and d[v] != UNREACHABLE:
            assert abs(d[u] - d[v]) <= 1
        else:
            assert d[u] == d[v] == UNREACHABLE


@given(edge_lists())
@settings(max_examples=50)
def test_hop_matrix_matches_floyd_warshall(data):
    n, edges = data
    g = build_graph(n, edges)
    fw = floyd_warshall_hops(n, g.edges())
    expected = [[UNREACHABLE if x == math.inf else x for x in row] for row in fw]
    assert g.hop_distances.tolist() == expected


@pytest.mark.parametrize("g, d", [(complete_graph(4), 1), (path_graph(5), 4), (build_graph(1, []), 1)])
def test_diameter_small(g, d):
    assert diameter(g) == d


def test_diameter_chimera_c8():
    g = chimera_graph(8, 8, 4)
    brute = max(max(bfs_distances(g, s)) for s in range(g.vertex_count))
    assert diameter(g) == brute


def test_diameter_disconnected():
    with pytest.raises(DisconnectedGraphError):
        diameter(build_graph(4, [(0, 1), (2, 3)]))


def test_components_simple():
    comps = connected_components(build_graph(4, [(0, 1), (2, 3)]))
    assert comps == [frozenset({0, 1}), frozenset({2, 3})]
    assert connected_components(chimera_graph(1, 1, 4)) == [frozenset(range(8))]


def test_components_match_union_find_on_damaged_chimera():
    rnd = random.Random(3)
    g = chimera_graph(4, 4, 4)
    for _ in range(20):
        keep = [(u, v) for u, v in g.edges() if rnd.random() < 0.4]
        damaged = build_graph(g.vertex_count, keep)
        assert connected_components(damaged) == components_by_union_find(g.vertex_count, keep)


def test_edgelist_round_trip(tmp_path):
    g = chimera_graph(2, 3, 4)
    text = format_edgelist(g)
    assert text.splitlines()[0] == f"p {g.vertex_count} {g.edge_count}"
    assert parse_edgelist(text) == g
    assert format_edgelist(parse_edgelist(text)) == text
    write_edgelist(g, tmp_path / "g.txt")
    assert (tmp_path / "g.txt").read_text() == text
    assert read_edgelist(tmp_path / "g.txt") == g


def test_edgelist_comments():
    g = parse_edgelist("# a triangle\np 3 3\n0 1 # first\n1 2\n\n2 0\n")
    assert g == complete_graph(3)


@pytest.mark.parametrize("text", ["0 1\n", "p 3\n", "p 2 1\n0 x\n", "p 2 1\n0 5\n"])
def test_edgelist_errors(text):
    with pytest.raises(GraphError):
        parse_edgelist(text)
