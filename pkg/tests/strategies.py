"""Hypothesis strategies shared by the test modules."""
from hypothesis import strategies as st

from perr.graph import Graph
from perr.instances import random_connected_graph, random_instance, random_tree

seeds = st.integers(min_value=0, max_value=2 ** 64 - 1)


@st.composite
def connected_graphs(draw, min_nodes=1, max_nodes=12):
    n = draw(st.integers(min_nodes, max_nodes))
    kind = draw(st.sampled_from(["path", "cycle", "star", "grid", "tree", "random"]))
    seed = draw(seeds)
    if kind == "path" or n < 3:
        return Graph.path(n)
    if kind == "cycle":
        return Graph.cycle(n)
    if kind == "star":
        return Graph.star(n - 1)
    if kind == "grid":
        w = draw(st.integers(1, 4))
        return Graph.grid(w, max(1, n // w))
    if kind == "tree":
        return random_tree(n, seed)
    return random_connected_graph(n, draw(st.integers(0, n)), seed)


@st.composite
def instances(draw, min_nodes=1, max_nodes=12, max_k=None):
    g = draw(connected_graphs(min_nodes, max_nodes))
    hi = g.node_count if max_k is None else min(max_k, g.node_count)
    k = draw(st.integers(1, hi))
    return random_instance(g, k, draw(seeds))


