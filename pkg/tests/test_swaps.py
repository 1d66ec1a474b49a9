import networkx as nx
import pytest
from hypothesis import given

from perr.errors import NotShortest, StateBudgetExceeded
from perr.graph import Graph
from perr.swaps import (PathRelation, all_shortest_paths, characterization_discrepancies, classify_paths,
                        is_parallel_subset, oracle_space, potential, swap_need, swap_need_oracle, swap_risk,
                        swap_risk_oracle)

from strategies import connected_graphs, seeds

A, B, C, D, E = range(5)


# -- classification -------------------------------------------------------------

def test_classify_examples():
    assert classify_paths([A, B, C], [A, B, D]) is PathRelation.PARALLEL
    assert classify_paths([A, B, D], [D, B, C, E]) is PathRelation.ANTIPARALLEL
    assert classify_paths([0, 1], [2, 3]) is PathRelation.DISJOINT
    assert classify_paths([0, 1, 2], [3, 2]) is PathRelation.TRIVIALLY_PARALLEL


def test_classify_checks_shortness():
    with pytest.raises(NotShortest):
        classify_paths([0, 1, 2, 3, 0], [1], g=Graph.cycle(4))
    with pytest.raises(NotShortest):
        classify_paths([0, 2], [1], g=Graph.path(3))


def test_is_parallel_subset():
    assert is_parallel_subset([1, 2], [0, 1, 2, 3])
    assert not is_parallel_subset([2, 1], [0, 1, 2, 3])
    assert is_parallel_subset([0, 1, 2, 3], [0, 1, 2, 3])


# -- closed forms ------------------------------------------------------------------

def test_swap_need_examples():
    assert swap_need([0, 1, 2, 3], [1, 2], 3, 2)
    assert not swap_need([0, 1, 2], [3, 2], 2, 2)
    assert not swap_need([0, 1], [2, 3], 1, 3)


def test_swap_risk_examples():
    # head-on robots each sitting on the other's goal: no risk either way
    assert not swap_risk([0, 1], [1, 0], 1, 0)
    assert not swap_risk([1, 0], [0, 1], 0, 1)
    assert swap_risk([0, 1, 2], [3, 2], 2, 2)
    assert swap_risk([0, 1, 2, 3], [4, 3, 2, 1], 3, 1)


def test_potential_examples():
    assert potential([5], [[0, 1, 2, 3, 4, 5]]).phi == 5
    assert potential([0, 1, 2], [[0], [1], [2]]).phi == 0
    v = potential([1, 0], [[0, 1], [1, 0]])
    assert (v.distance_sum, v.risk_count, v.phi) == (2, 0, 2)


@given(connected_graphs(min_nodes=2, max_nodes=9), seeds)
def test_parallel_risks_are_directed(g, seed):
    n = g.node_count
    sa, ga, sb, gb = ((seed >> s) % n for s in (0, 8, 16, 24))
    if sa == sb or ga == gb:
        return
    for pa in all_shortest_paths(g, sa, ga)[:3]:
        for pb in all_shortest_paths(g, sb, gb)[:3]:
            if classify_paths(pa, pb) is PathRelation.PARALLEL:
                assert not (swap_risk(pa, pb, ga, gb) and swap_risk(pb, pa, gb, ga))


@given(connected_graphs(min_nodes=2, max_nodes=9), seeds)
def test_shortest_paths_never_cross_inconsistently(g, seed):
    n = g.node_count
    sa, ga, sb, gb = ((seed >> s) % n for s in (0, 8, 16, 24))
    for pa in all_shortest_paths(g, sa, ga)[:4]:
        for pb in all_shortest_paths(g, sb, gb)[:4]:
            classify_paths(pa, pb)  # must not raise


# -- oracles --------------------------------------------------------------------------

def test_need_oracle_forced_swap():
    # b parked on its goal in the middle of a's corridor: only a bully swap finishes
    assert swap_need([0, 1, 2], [1], 2, 1)
    assert swap_need_oracle(Graph.path(3), [0, 1, 2], [1])


def test_need_oracle_disjoint_corridors():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert not swap_need_oracle(g, 0, 2, 1, 3)
    assert not swap_risk_oracle(g, 0, 2, 1, 3)


def test_need_oracle_b_runs_ahead():
    # b leaves a's corridor ahead of a
    assert not swap_need_oracle(Graph.path(5), 0, 2, 2, 4)
    assert swap_need_oracle(Graph.path(5), 0, 2, 4, 3)


def test_risk_oracle_incurred_need():
    # the configuration a = [0,1,2,...], b = [3,2], extended past node 2 so
    # the goals differ: advancing b onto its goal creates a need (a, b)
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (2, 4)])
    pa, pb = [0, 1, 2, 4], [3, 2]
    assert swap_risk(pa, pb, 4, 2)
    assert swap_risk_oracle(g, pa, pb)
    assert swap_risk_oracle(g, pa, pb, detours=False)


def test_risk_oracle_on_a_need_state():
    assert swap_risk_oracle(Graph.path(3), [0, 1, 2], [1])


def test_oracle_rejects_shared_start_or_goal():
    with pytest.raises(ValueError):
        swap_need_oracle(Graph.path(3), [0, 1], [0, 1, 2])
    with pytest.raises(ValueError):
        swap_need_oracle(Graph.path(3), [0, 1], [2, 1])
    with pytest.raises(ValueError):
        swap_need_oracle(Graph.path(3), 0, 2)


def test_oracle_budget():
    with pytest.raises(StateBudgetExceeded):
        swap_risk_oracle(Graph.path(8), [0, 1, 2, 3, 4, 5, 6, 7], [7, 6, 5, 4, 3, 2, 1], budget=3)


def test_oracle_space_is_reusable():
    g = Graph.grid(3, 2)
    space = oracle_space(g, detours=False)
    first = swap_risk_oracle(g, [0, 1, 2], [5, 4, 1], space=space)
    assert swap_risk_oracle(g, [0, 1, 2], [5, 4, 1], space=space) == first


def test_all_shortest_paths_on_grid():
    assert all_shortest_paths(Graph.grid(2, 2), 0, 3) == [(0, 1, 3), (0, 2, 3)]
    assert all_shortest_paths(Graph(2, [[], []]), 0, 1) == []


def _atlas(max_nodes):
    for G in nx.graph_atlas_g()[1:]:
        if G.number_of_nodes() <= max_nodes and nx.is_connected(G):
            yield Graph.from_edges(G.number_of_nodes(), G.edges())


def test_closed_forms_match_fixed_path_oracle_small_graphs():
    for g in _atlas(4):
        checked, bad = characterization_discrepancies(g, detours=False)
        assert bad == [], (g.adj, bad[:3])


def test_detour_oracle_differs_on_4_cycle():
    # with detours, a robot blocked on one shortest path can take the other one
    g = Graph.cycle(4)
    assert swap_need([0, 1, 2], [1], 2, 1)
    assert swap_need_oracle(g, [0, 1, 2], [1], detours=False)
    assert not swap_need_oracle(g, [0, 1, 2], [1], detours=True)
