"""Sorting-network baselines emitted as plans: odd-even transposition sort on
linear arrays and shearsort on square arrays.

A robot's sort key is the rank of its goal (linear order for paths, snake
order for grids), so sorting the keys routes every robot home.
"""
from __future__ import annotations

import numpy as np

from .errors import NotPathGraph, NotSquareGrid
from .graph import Graph
from .instances import Instance, lg_ceil
from .validate import Plan


def _check_dense(inst: Instance):
    if inst.k != inst.n:
        raise ValueError(f"sorting baselines need k = n, got k={inst.k}, n={inst.n}")


def exchange_round(lines: np.ndarray, key: np.ndarray, parity: int) -> bool:
    """Compare-exchange pairs (parity+2i, parity+2i+1) of every row of
    ``lines`` (robot ids) in place; True if anything moved."""
    width = lines.shape[1]
    m = (width - parity) // 2
    if m <= 0:
        return False
    left = lines[:, parity:parity + 2 * m:2]
    right = lines[:, parity + 1:parity + 2 * m:2]
    swap = key[left] > key[right]
    if not swap.any():
        return False
    lo = np.where(swap, right, left)
    hi = np.where(swap, left, right)
    lines[:, parity:parity + 2 * m:2] = lo
    lines[:, parity + 1:parity + 2 * m:2] = hi
    return True


def _sorted_lines(lines: np.ndarray, key: np.ndarray) -> bool:
    k = key[lines]
    return bool(np.all(k[:, :-1] < k[:, 1:]))


def _positions(node_robot: np.ndarray) -> np.ndarray:
    flat = node_robot.ravel()
    pos = np.empty(len(flat), dtype=np.int64)
    pos[flat] = np.arange(len(flat))
    return pos


def odd_even_sort_plan(inst: Instance) -> Plan:
    """Parallel bubblesort on the path 0-1-...-(n-1); rounds that exchange
    nothing take no timestep, and the plan stops once every robot is home."""
    g = inst.graph
    if g != Graph.path(g.node_count):
        raise NotPathGraph("graph is not the path 0-1-...-(n-1)")
    _check_dense(inst)
    n = inst.n
    line = np.empty((1, n), dtype=np.int64)
    line[0, np.asarray(inst.starts)] = np.arange(n)
    key = np.asarray(inst.goals, dtype=np.int64)
    rows = [np.asarray(inst.starts, dtype=np.int64)]
    parity = 0
    while not _sorted_lines(line, key):
        if exchange_round(line, key, parity):
            rows.append(_positions(line))
        parity ^= 1
    return Plan(np.array(rows))


def snake_rank(side: int) -> np.ndarray:
    """Node id -> position in boustrophedon order (even rows left to right)."""
    rank = np.arange(side * side, dtype=np.int64).reshape(side, side)
    rank[1::2] = rank[1::2, ::-1]
    return rank.ravel()


def shearsort_plan(inst: Instance) -> Plan:
    """Alternating snake row phases and column phases; each phase runs odd-even
    transposition rounds on all rows (or columns) in parallel until sorted."""
    g = inst.graph
    side = int(round(g.node_count ** 0.5))
    if side * side != g.node_count or g != Graph.grid(side, side):
        raise NotSquareGrid("graph is not a row-major square grid")
    _check_dense(inst)
    n = inst.n
    key = snake_rank(side)[np.asarray(inst.goals)]
    goals = np.asarray(inst.goals)
    grid = np.empty(n, dtype=np.int64)
    grid[np.asarray(inst.starts)] = np.arange(n)
    grid = grid.reshape(side, side)
    rows = [np.asarray(inst.starts, dtype=np.int64)]
    if side == 1 or np.array_equal(rows[0], goals):
        return Plan(np.array(rows))
    for phase in range(2 * lg_ceil(n) + 1):
        if phase % 2 == 0:
            lines = grid.copy()
            lines[1::2] = lines[1::2, ::-1]
        else:
            lines = grid.T.copy()
        parity = 0
        while not _sorted_lines(lines, key):
            if exchange_round(lines, key, parity):
                if phase % 2 == 0:
                    grid = lines.copy()
                    grid[1::2] = grid[1::2, ::-1]
                else:
                    grid = lines.T.copy()
                rows.append(_positions(grid))
                if np.array_equal(rows[-1], goals):
                    return Plan(np.array(rows))
            parity ^= 1
    return Plan(np.array(rows))
