import math

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from perr.errors import Disconnected, Unreachable
from perr.graph import (INF, Graph, bfs_shortest_path, bfs_spanning_tree, distance, eccentricity,
                        one_center, tree_diameter)
from perr.instances import random_connected_graph

from strategies import connected_graphs, seeds


def test_shortest_path_on_path_graph():
    assert bfs_shortest_path(Graph.path(4), 0, 3) == [0, 1, 2, 3]


def test_shortest_path_identity():
    assert bfs_shortest_path(Graph.path(6), 5, 5) == [5]


def test_shortest_path_lowest_id_tiebreak_on_4_cycle():
    g = Graph.cycle(4)
    assert bfs_shortest_path(g, 0, 2) == [0, 1, 2]


def test_unreachable_raises():
    g = Graph(2, [[], []])
    with pytest.raises(Unreachable):
        bfs_shortest_path(g, 0, 1)


def test_distance_examples():
    assert distance(Graph.path(3), 1, 1) == 0
    assert distance(Graph.path(3), 0, 2) == 2
    assert distance(Graph(2, [[], []]), 0, 1) == INF
    assert math.isinf(distance(Graph(2, [[], []]), 0, 1))


def test_one_center_examples():
    assert one_center(Graph.path(5)) == 2
    assert one_center(Graph.star(4)) == 0
    g = Graph.cycle(6)
    assert all(eccentricity(g, u) == 3 for u in range(6))
    assert one_center(g) == 0


def test_one_center_disconnected():
    with pytest.raises(Disconnected):
        one_center(Graph(3, [[1], [0], []]))


def test_spanning_tree_examples():
    t = bfs_spanning_tree(Graph.path(4), 0)
    assert t.edges() == [(0, 1), (1, 2), (2, 3)]
    k4 = Graph.from_edges(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    t = bfs_spanning_tree(k4, 0)
    assert all(t.parent[u] == 0 for u in (1, 2, 3))
    t = bfs_spanning_tree(Graph.cycle(4), 0)
    assert {u: t.parent[u] for u in (1, 2, 3)} == {1: 0, 2: 1, 3: 0}


def test_graph_rejects_bad_adjacency():
    with pytest.raises(ValueError):
        Graph(2, [[1], []])
    with pytest.raises(ValueError):
        Graph(1, [[0]])


def test_grid_ids_are_row_major():
    g = Graph.grid(3, 2)
    assert g.neighbors(0) == (1, 3)
    assert g.neighbors(4) == (1, 3, 5)
    assert g.edge_count == 7


def test_induced_relabels_in_order():
    g = Graph.path(5)
    sub, old = g.induced([4, 2, 3])
    assert old == [2, 3, 4]
    assert sub == Graph.path(3)


@given(connected_graphs(max_nodes=15), seeds)
def test_bfs_path_length_is_distance(g, seed):
    s, t = seed % g.node_count, (seed >> 20) % g.node_count
    p = bfs_shortest_path(g, s, t)
    assert len(p) - 1 == distance(g, s, t)
    assert p[0] == s and p[-1] == t
    assert all(g.has_edge(a, b) for a, b in zip(p, p[1:]))


@given(connected_graphs(max_nodes=15), seeds)
def test_distances_match_networkx(g, seed):
    nxg = nx.Graph(g.edges())
    nxg.add_nodes_from(range(g.node_count))
    s = seed % g.node_count
    ref = nx.single_source_shortest_path_length(nxg, s)
    assert all(g.distances_from(s)[v] == ref[v] for v in range(g.node_count))


@given(connected_graphs(max_nodes=20))
def test_spanning_tree_depth_is_distance(g):
    root = one_center(g)
    t = bfs_spanning_tree(g, root)
    assert len(t) == g.node_count
    assert len(t.edges()) == g.node_count - 1
    assert all(t.depth[v] == distance(g, root, v) for v in range(g.node_count))
    assert all(g.has_edge(*e) for e in t.edges())
    if g.node_count > 1:
        assert tree_diameter(t.as_graph(g.node_count)) <= 2 * eccentricity(g, root)


@given(st.integers(1, 50), st.integers(0, 30), seeds)
def test_one_center_minimizes_eccentricity(n, extra, seed):
    g = random_connected_graph(n, extra, seed)
    c = one_center(g)
    ecc = [eccentricity(g, u) for u in range(n)]
    assert ecc[c] == min(ecc)
    assert c == ecc.index(min(ecc))
