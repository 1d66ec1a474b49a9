"""Undirected unit-cost graphs, BFS distances, one-center and BFS spanning trees.

Ties are always broken towards the lowest node id so every consumer is
reproducible bit for bit.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import Disconnected, Unreachable

INF = math.inf


class Graph:
    """Immutable graph on nodes ``0..node_count-1`` with sorted adjacency."""

    __slots__ = ("node_count", "adj", "_dist", "_labels")

    def __init__(self, node_count: int, adj: Sequence[Iterable[int]]):
        if len(adj) != node_count:
            raise ValueError("adjacency length must equal node_count")
        rows = []
        for u, nbrs in enumerate(adj):
            row = tuple(sorted(set(nbrs)))
            if u in row:
                raise ValueError(f"self-loop at node {u}")
            for v in row:
                if not 0 <= v < node_count:
                    raise ValueError(f"neighbor {v} of {u} out of range")
            rows.append(row)
        for u, row in enumerate(rows):
            for v in row:
                if u not in rows[v]:
                    raise ValueError(f"asymmetric edge {u}->{v}")
        self.node_count = node_count
        self.adj: tuple[tuple[int, ...], ...] = tuple(rows)
        self._dist: dict[int, list[float]] = {}
        self._labels: list[int] | None = None

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(node_count)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(node_count, adj)

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("cycle needs at least 3 nodes")
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        return cls.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))

    @classmethod
    def grid(cls, width: int, height: int) -> "Graph":
        edges = []
        for r in range(height):
            for c in range(width):
                u = r * width + c
                if c + 1 < width:
                    edges.append((u, u + 1))
                if r + 1 < height:
                    edges.append((u, u + width))
        return cls.from_edges(width * height, edges)

    def __repr__(self):
        return f"Graph(n={self.node_count}, m={self.edge_count})"

    def __eq__(self, other):
        return isinstance(other, Graph) and self.adj == other.adj

    def __hash__(self):
        return hash(self.adj)

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adj[u]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.adj[u]
        return v in row

    @property
    def edge_count(self) -> int:
        return sum(len(r) for r in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, row in enumerate(self.adj) for v in row if u < v]

    def max_degree(self) -> int:
        return max((len(r) for r in self.adj), default=0)

    def distances_from(self, s: int) -> list[float]:
        """BFS distance from ``s`` to every node (``INF`` when unreachable). Cached."""
        d = self._dist.get(s)
        if d is None:
            d = [INF] * self.node_count
            d[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                du = d[u] + 1
                for v in self.adj[u]:
                    if d[v] == INF:
                        d[v] = du
                        queue.append(v)
            self._dist[s] = d
        return d

    def component_labels(self) -> list[int]:
        """Component index of every node, numbered by lowest member. Cached."""
        if self._labels is None:
            lab = [-1] * self.node_count
            for ci, comp in enumerate(self.components()):
                for v in comp:
                    lab[v] = ci
            self._labels = lab
        return self._labels

    def components(self) -> list[list[int]]:
        seen = [False] * self.node_count
        comps = []
        for s in range(self.node_count):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for v in self.adj[u]:
                    if not seen[v]:
                        seen[v] = True
                        comp.append(v)
                        queue.append(v)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.node_count > 0 and len(self.components()) == 1

    def induced(self, nodes: Iterable[int]) -> tuple["Graph", list[int]]:
        """Subgraph on ``nodes`` relabelled ``0..m-1`` in ascending order.

        Returns the subgraph and the list mapping new ids back to old ids.
        """
        old = sorted(set(nodes))
        new_of = {u: i for i, u in enumerate(old)}
        adj = [[new_of[v] for v in self.adj[u] if v in new_of] for u in old]
        return Graph(len(old), adj), old


def distance(g: Graph, u: int, v: int) -> float:
    return g.distances_from(u)[v]


def bfs_shortest_path(g: Graph, s: int, t: int) -> list[int]:
    """Shortest path from ``s`` to ``t``; at each step back from ``t`` the
    lowest-id predecessor is taken."""
    d = g.distances_from(s)
    if d[t] == INF:
        raise Unreachable(f"node {t} unreachable from {s}")
    path = [t]
    u = t
    while u != s:
        want = d[u] - 1
        for v in g.adj[u]:
            if d[v] == want:
                u = v
                break
        path.append(u)
    path.reverse()
    return path


def eccentricity(g: Graph, u: int) -> float:
    return max(g.distances_from(u))


def one_center(g: Graph) -> int:
    if g.node_count == 0:
        raise Disconnected("empty graph")
    best, best_ecc = -1, INF
    for u in range(g.node_count):
        ecc = eccentricity(g, u)
        if ecc == INF:
            raise Disconnected("graph is not connected")
        if ecc < best_ecc:
            best, best_ecc = u, ecc
    return best


@dataclass(frozen=True)
class Tree:
    """Rooted tree over a subset of graph nodes (``parent[root] is None``)."""

    root: int
    parent: dict[int, int | None]
    depth: dict[int, int]
    children: dict[int, tuple[int, ...]] = field(default_factory=dict)

    @property
    def nodes(self) -> list[int]:
        return sorted(self.parent)

    def __len__(self):
        return len(self.parent)

    def edges(self) -> list[tuple[int, int]]:
        return sorted((min(u, p), max(u, p)) for u, p in self.parent.items() if p is not None)

    def as_graph(self, node_count: int) -> Graph:
        """The tree as a graph on the same ids; nodes outside the tree are isolated."""
        return Graph.from_edges(node_count, self.edges())

    def max_degree(self) -> int:
        return max(len(self.children[u]) + (self.parent[u] is not None) for u in self.parent)

    def height(self) -> int:
        return max(self.depth.values())


def bfs_spanning_tree(g: Graph, root: int) -> Tree:
    d = g.distances_from(root)
    if any(x == INF for x in d):
        raise Disconnected("graph is not connected")
    parent: dict[int, int | None] = {root: None}
    depth = {root: 0}
    kids: dict[int, list[int]] = {u: [] for u in range(g.node_count)}
    for u in sorted(range(g.node_count), key=lambda x: (d[x], x)):
        if u == root:
            continue
        p = next(v for v in g.adj[u] if d[v] == d[u] - 1)
        parent[u] = p
        depth[u] = int(d[u])
        kids[p].append(u)
    children = {u: tuple(sorted(c)) for u, c in kids.items()}
    return Tree(root=root, parent=parent, depth=depth, children=children)


def tree_diameter(g: Graph) -> int:
    """Diameter of a connected acyclic graph (two BFS sweeps)."""
    d0 = g.distances_from(0)
    far = max(range(g.node_count), key=lambda v: (d0[v], -v))
    return int(max(g.distances_from(far)))
