"""Exact optimal makespan by breadth-first search over joint configurations.

Only meant for tiny instances. Each timestep every robot waits or moves to a
neighbor; a successor is legal iff its end positions are pairwise distinct.
Unlike most MAPF solvers this deliberately allows two robots to traverse the
same edge in opposite directions (that is the swap) and rotations of any
length.
"""
from __future__ import annotations

import itertools
from collections import deque

import numpy as np

from .errors import StateBudgetExceeded
from .instances import Instance
from .validate import Plan

DEFAULT_STATE_BUDGET = 2_000_000


def joint_successors(options: list[tuple[int, ...]], config: tuple[int, ...]):
    """Yield every collision-free joint move from ``config``."""
    k = len(config)
    for nxt in itertools.product(*(options[v] for v in config)):
        if len(set(nxt)) == k:
            yield nxt


def optimal_makespan(inst: Instance, state_budget: int = DEFAULT_STATE_BUDGET) -> tuple[int, Plan]:
    g = inst.graph
    start, goal = inst.starts, inst.goals
    if start == goal:
        return 0, Plan(np.array([start], dtype=np.int64))
    options = [(u,) + g.adj[u] for u in range(g.node_count)]
    parent: dict[tuple[int, ...], tuple[int, ...] | None] = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nxt in joint_successors(options, cur):
            if nxt in parent:
                continue
            parent[nxt] = cur
            if nxt == goal:
                rows = [nxt]
                while parent[rows[-1]] is not None:
                    rows.append(parent[rows[-1]])
                rows.reverse()
                return len(rows) - 1, Plan(np.array(rows, dtype=np.int64))
            if len(parent) > state_budget:
                raise StateBudgetExceeded(
                    f"explored more than {state_budget} joint configurations")
            queue.append(nxt)
    # unreachable on a valid instance: every goal configuration is reachable
    # inside a connected component because swaps are allowed
    raise AssertionError("goal configuration unreachable")
