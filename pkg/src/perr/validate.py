"""Plans, plan validation under the package-exchange rules, and plan CSV."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import GoalMismatch, IllegalMove, StartMismatch, VertexCollision, PlanError
from .instances import Instance


@dataclass
class Plan:
    """Robot positions over time, shape ``(T+1, k)``; row t is the configuration at t."""

    positions: np.ndarray

    def __post_init__(self):
        self.positions = np.asarray(self.positions, dtype=np.int64)
        if self.positions.ndim != 2 or self.positions.shape[0] < 1:
            raise ValueError("plan must be a non-empty (T+1) x k matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Plan":
        return cls(np.array(rows, dtype=np.int64).reshape(len(rows), -1))

    @property
    def makespan(self) -> int:
        return self.positions.shape[0] - 1

    @property
    def k(self) -> int:
        return self.positions.shape[1]

    def rows(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in r) for r in self.positions]

    def truncated(self, goals: Sequence[int]) -> "Plan":
        """Cut the plan at the first timestep every robot sits on its goal."""
        done = np.all(self.positions == np.asarray(goals), axis=1)
        hits = np.flatnonzero(done)
        if len(hits) == 0:
            return self
        return Plan(self.positions[: hits[0] + 1].copy())


@dataclass(frozen=True)
class PlanMetrics:
    makespan: int
    swaps: int
    instance: Instance = field(repr=False, compare=False)

    @property
    def sic(self) -> int:
        return self.instance.sic


def count_swaps(positions: np.ndarray) -> int:
    """Number of 2-cycle exchanges, summed over timesteps."""
    P = np.asarray(positions)
    T1, k = P.shape
    if T1 < 2 or k < 2:
        return 0
    total = 0
    size = int(P.max()) + 1
    occ = np.full(size, -1, dtype=np.int64)
    idx = np.arange(k)
    for t in range(T1 - 1):
        cur, nxt = P[t], P[t + 1]
        occ[cur] = idx
        j = occ[nxt]
        mask = (j > idx) & (nxt != cur)
        if mask.any():
            jj = j[mask]
            total += int(np.count_nonzero(nxt[jj] == cur[mask]))
        occ[cur] = -1
    return total


def _edge_codes(g) -> np.ndarray:
    n = g.node_count
    return np.array([u * n + v for u in range(n) for v in g.adj[u]], dtype=np.int64)


def validate_plan(inst: Instance, plan: Plan) -> PlanMetrics:
    P = plan.positions
    g = inst.graph
    if P.shape[1] != inst.k:
        raise PlanError(f"plan has {P.shape[1]} robots, instance has {inst.k}")
    if np.any(P < 0) or np.any(P >= g.node_count):
        raise PlanError("plan references a node outside the graph")
    starts = np.asarray(inst.starts)
    if not np.array_equal(P[0], starts):
        raise StartMismatch(f"row 0 {P[0].tolist()} != starts {list(inst.starts)}")
    n = g.node_count
    srt = np.sort(P, axis=1)
    dup = srt[:, 1:] == srt[:, :-1]
    bad_rows = np.flatnonzero(dup.any(axis=1))
    illegal = np.zeros(P.shape, dtype=bool)
    if P.shape[0] > 1:
        a, b = P[:-1], P[1:]
        moved = a != b
        edge_codes = _edge_codes(g)
        illegal[:-1][moved] = ~np.isin(a[moved] * n + b[moved], edge_codes)
    bad_moves = np.flatnonzero(illegal.any(axis=1))
    # report whichever violation happens first in time; collisions at t
    # precede an illegal move from t to t+1
    t_col = int(bad_rows[0]) if len(bad_rows) else None
    t_mov = int(bad_moves[0]) if len(bad_moves) else None
    if t_col is not None and (t_mov is None or t_col <= t_mov):
        row = P[t_col]
        node = int(srt[t_col][np.flatnonzero(dup[t_col])[0]])
        i, j = (int(x) for x in np.flatnonzero(row == node)[:2])
        raise VertexCollision(t_col, i, j, node)
    if t_mov is not None:
        i = int(np.flatnonzero(illegal[t_mov])[0])
        raise IllegalMove(t_mov, i, int(P[t_mov, i]), int(P[t_mov + 1, i]))
    off = np.flatnonzero(P[-1] != np.asarray(inst.goals))
    if len(off):
        raise GoalMismatch(plan.makespan, off.tolist())
    return PlanMetrics(plan.makespan, count_swaps(P), inst)


def dumps_plan(plan: Plan) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t"] + [f"robot_{i}" for i in range(plan.k)])
    for t, row in enumerate(plan.positions.tolist()):
        w.writerow([t] + row)
    return buf.getvalue()


def parse_plan(text: str) -> Plan:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or not rows[0] or rows[0][0] != "t":
        raise PlanError("plan CSV must start with a 't,robot_0,...' header")
    k = len(rows[0]) - 1
    if rows[0][1:] != [f"robot_{i}" for i in range(k)]:
        raise PlanError("plan CSV header must list robot_0..robot_{k-1}")
    body = []
    for t, row in enumerate(r for r in rows[1:] if r):
        if len(row) != k + 1:
            raise PlanError(f"plan row {t} has {len(row) - 1} robots, expected {k}")
        try:
            vals = [int(x) for x in row]
        except ValueError:
            raise PlanError(f"plan row {t} has a non-integer entry") from None
        if vals[0] != t:
            raise PlanError(f"plan rows must be numbered consecutively, row {t} says {vals[0]}")
        body.append(vals[1:])
    if not body:
        raise PlanError("plan CSV has no rows")
    return Plan(np.array(body, dtype=np.int64).reshape(len(body), k))
