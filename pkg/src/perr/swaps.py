"""Relations between shortest paths and the swap-need / swap-risk predicates.

``swap_need`` and ``swap_risk`` are the closed-form characterizations used by
the potential function.  ``swap_need_oracle`` and ``swap_risk_oracle`` decide
the same questions by exhaustive search over the two-robot state space, with
everything else removed from the graph; they exist to check the closed forms.

Paths are node sequences whose head is the robot's position and whose tail is
its goal.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import NotShortest, StateBudgetExceeded
from .graph import Graph, bfs_shortest_path


class PathRelation(enum.Enum):
    DISJOINT = "disjoint"
    PARALLEL = "parallel"
    TRIVIALLY_PARALLEL = "trivially_parallel"
    ANTIPARALLEL = "antiparallel"


PARALLEL_LIKE = (PathRelation.PARALLEL, PathRelation.TRIVIALLY_PARALLEL)


def check_shortest(g: Graph, p: Sequence[int]):
    if not p:
        raise NotShortest("empty path")
    if len(p) - 1 != g.distances_from(p[0])[p[-1]]:
        raise NotShortest(f"path {list(p)} is not a shortest path")
    for u, v in zip(p, p[1:]):
        if not g.has_edge(u, v):
            raise NotShortest(f"path {list(p)} uses non-edge {u}-{v}")


def classify_paths(p: Sequence[int], q: Sequence[int], g: Graph | None = None) -> PathRelation:
    """Order relation of the common nodes of two shortest paths.

    Pass ``g`` to have both paths checked for shortness first.
    """
    if g is not None:
        check_shortest(g, p)
        check_shortest(g, q)
    qpos = {v: i for i, v in enumerate(q)}
    if len(qpos) != len(q) or len(set(p)) != len(p):
        raise NotShortest("path repeats a node")
    common = [qpos[v] for v in p if v in qpos]
    if not common:
        return PathRelation.DISJOINT
    if len(common) == 1:
        return PathRelation.TRIVIALLY_PARALLEL
    if all(a < b for a, b in zip(common, common[1:])):
        return PathRelation.PARALLEL
    if all(a > b for a, b in zip(common, common[1:])):
        return PathRelation.ANTIPARALLEL
    raise NotShortest("common nodes neither in the same nor in reversed order")


def is_parallel_subset(pj: Sequence[int], pi: Sequence[int]) -> bool:
    """True iff ``pj`` is an order-preserving subsequence of ``pi``."""
    it = iter(pi)
    return all(any(v == w for w in it) for v in pj)


def swap_need(pc: Sequence[int], pd: Sequence[int], gc: int, gd: int) -> bool:
    """Whether robot c must bully-swap robot d to reach its goal."""
    if gd not in pc:
        return False
    if classify_paths(pc, pd) not in PARALLEL_LIKE:
        return False
    return is_parallel_subset(pd, pc)


def swap_risk(pa: Sequence[int], pb: Sequence[int], ga: int, gb: int) -> bool:
    """Whether advancing a and b can create (or already has) a swap need (a, b)."""
    try:
        m = pa.index(gb)
    except ValueError:
        return False
    rel = classify_paths(pa, pb)
    if rel is PathRelation.ANTIPARALLEL:
        return m != 0
    if rel in PARALLEL_LIKE:
        pbs = set(pb)
        return not all(v in pbs for v in pa[:m])
    return False


@dataclass(frozen=True)
class PotentialValue:
    distance_sum: int
    risk_count: int

    @property
    def phi(self) -> int:
        return self.distance_sum + self.risk_count


def potential(goals: Sequence[int], paths: Sequence[Sequence[int]]) -> PotentialValue:
    """Sum of remaining path lengths plus the number of directed swap risks."""
    k = len(paths)
    dist = sum(len(p) - 1 for p in paths)
    as_lists = [list(p) for p in paths]
    sets = [set(p) for p in as_lists]
    risks = 0
    for i in range(k):
        for j in range(k):
            if i != j and goals[j] in sets[i]:
                risks += swap_risk(as_lists[i], as_lists[j], goals[i], goals[j])
    return PotentialValue(dist, risks)


# --------------------------------------------------------------------------
# brute-force oracles

DEFAULT_BUDGET = 200_000


class _TwoRobotSpace:
    """Joint moves of two robots that follow (re-plannable) shortest paths.

    A move is legal when each robot waits, advances along its path, or (with
    ``detours`` and while off-goal) steps to another neighbor and re-plans.
    Exchanging nodes is legal when both advance (a happy swap); an exchange in
    which only one robot advances is a bully swap of the other one, permitted
    only when the caller asks for it.
    """

    def __init__(self, g: Graph, detours: bool, budget: int):
        self.g = g
        self.detours = detours
        self.budget = budget
        self._need: dict[tuple, bool] = {}
        self._risk: dict[tuple, bool] = {}

    def _replan(self, w: int, path: tuple[int, ...]) -> tuple[int, ...]:
        goal = path[-1]
        if self.g.distances_from(w)[goal] == len(path):
            return (w,) + path
        return tuple(bfs_shortest_path(self.g, w, goal))

    def _options(self, path):
        """(target, kind) pairs for one robot, kind in {wait, advance, detour}."""
        u = path[0]
        opts = [(u, "wait")]
        if len(path) > 1:
            opts.append((path[1], "advance"))
            if self.detours:
                opts.extend((w, "detour") for w in self.g.adj[u] if w != path[1])
        return opts

    def successors(self, pa, pb, allow_b_bullies_a: bool, allow_a_bullies_b: bool):
        a0, b0 = pa[0], pb[0]
        for ta, ka in self._options(pa):
            for tb, kb in self._options(pb):
                if ta == tb:
                    continue
                if ta == b0 and tb == a0 and not (ka == kb == "advance"):
                    continue  # exchanges are handled below
                yield self._step(pa, ta, ka), self._step(pb, tb, kb)
        if a0 in self.g.adj[b0]:
            if allow_a_bullies_b and len(pa) > 1 and pa[1] == b0:
                if not (len(pb) > 1 and pb[1] == a0):
                    yield pa[1:], self._replan(a0, pb)
            if allow_b_bullies_a and len(pb) > 1 and pb[1] == a0:
                if not (len(pa) > 1 and pa[1] == b0):
                    yield self._replan(b0, pa), pb[1:]

    def solve_all(self, starts) -> None:
        """Settle need and risk for every state reachable from ``starts`` at once.

        The reachable state graph is built forward once; need is the
        complement of backward reachability from the finished states, and risk
        is backward reachability from the need states along non-bully moves.
        """
        index: dict[tuple, int] = {}
        states: list[tuple] = []
        rev_all: list[list[int]] = []
        rev_calm: list[list[int]] = []

        def add(st):
            i = index.get(st)
            if i is None:
                i = index[st] = len(states)
                states.append(st)
                rev_all.append([])
                rev_calm.append([])
                if len(states) > self.budget:
                    raise StateBudgetExceeded(f"more than {self.budget} states")
            return i

        for st in starts:
            add(st)
        head = 0
        while head < len(states):
            qa, qb = states[head]
            calm = set(self.successors(qa, qb, False, False))
            for nxt in self.successors(qa, qb, allow_b_bullies_a=True, allow_a_bullies_b=False):
                j = add(nxt)
                rev_all[j].append(head)
                if nxt in calm:
                    rev_calm[j].append(head)
            head += 1
        done = [len(a) == 1 and len(b) == 1 for a, b in states]
        finish = _backward(done, rev_all)
        need = [not f for f in finish]
        risk = _backward(need, rev_calm)
        for st, nd, rk in zip(states, need, risk):
            self._need[st] = nd
            self._risk[st] = rk

    def _step(self, path, target, kind):
        if kind == "wait":
            return path
        if kind == "advance":
            return path[1:]
        return self._replan(target, path)

    def need(self, pa, pb) -> bool:
        key = (pa, pb)
        hit = self._need.get(key)
        if hit is not None:
            return hit
        seen = {key}
        queue = deque([key])
        reached = False
        while queue:
            qa, qb = queue.popleft()
            if len(qa) == 1 and len(qb) == 1:
                reached = True
                break
            for nxt in self.successors(qa, qb, allow_b_bullies_a=True, allow_a_bullies_b=False):
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > self.budget:
                        raise StateBudgetExceeded(f"more than {self.budget} states")
                    queue.append(nxt)
        self._need[key] = not reached
        return not reached

    def risk(self, pa, pb) -> bool:
        start = (pa, pb)
        hit = self._risk.get(start)
        if hit is not None:
            return hit
        seen = {start}
        queue = deque([start])
        while queue:
            qa, qb = queue.popleft()
            if self.need(qa, qb):
                return True
            for nxt in self.successors(qa, qb, allow_b_bullies_a=False, allow_a_bullies_b=False):
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > self.budget:
                        raise StateBudgetExceeded(f"more than {self.budget} states")
                    queue.append(nxt)
        return False


def _backward(seed: list[bool], rev: list[list[int]]) -> list[bool]:
    mark = list(seed)
    stack = [i for i, m in enumerate(mark) if m]
    while stack:
        j = stack.pop()
        for i in rev[j]:
            if not mark[i]:
                mark[i] = True
                stack.append(i)
    return mark


def _as_paths(g, pa, pb, ga, gb):
    if isinstance(pa, int):
        if ga is None:
            raise ValueError("a start node needs a goal")
        pa = bfs_shortest_path(g, pa, ga)
    if isinstance(pb, int):
        if gb is None:
            raise ValueError("a start node needs a goal")
        pb = bfs_shortest_path(g, pb, gb)
    pa, pb = tuple(pa), tuple(pb)
    if (ga is not None and pa[-1] != ga) or (gb is not None and pb[-1] != gb):
        raise ValueError("a path must end at its robot's goal")
    check_shortest(g, pa)
    check_shortest(g, pb)
    if pa[0] == pb[0]:
        raise ValueError("robots must start on distinct nodes")
    if pa[-1] == pb[-1]:
        raise ValueError("robots must have distinct goals")
    return pa, pb


def swap_need_oracle(g: Graph, pa, pb, ga: int | None = None, gb: int | None = None, *,
                     detours: bool = True, budget: int = DEFAULT_BUDGET,
                     space: _TwoRobotSpace | None = None) -> bool:
    """Exhaustive check that a cannot reach its goal without bully-swapping b.

    ``pa``/``pb`` are either the robots' current shortest paths or their start
    nodes, in which case ``ga``/``gb`` are required and the lowest-id BFS path
    is used.  Pass a shared ``space`` to reuse memoized results across calls
    on the same graph.
    """
    pa, pb = _as_paths(g, pa, pb, ga, gb)
    space = space or _TwoRobotSpace(g, detours, budget)
    return space.need(pa, pb)


def swap_risk_oracle(g: Graph, pa, pb, ga: int | None = None, gb: int | None = None, *,
                     detours: bool = True, budget: int = DEFAULT_BUDGET,
                     space: _TwoRobotSpace | None = None) -> bool:
    """Exhaustive check that advancing a and b can reach a swap need (a, b)."""
    pa, pb = _as_paths(g, pa, pb, ga, gb)
    space = space or _TwoRobotSpace(g, detours, budget)
    return space.risk(pa, pb)


def oracle_space(g: Graph, detours: bool = True, budget: int = DEFAULT_BUDGET) -> _TwoRobotSpace:
    return _TwoRobotSpace(g, detours, budget)


def all_shortest_paths(g: Graph, s: int, t: int) -> list[tuple[int, ...]]:
    """Every shortest s-t path, in lexicographic order."""
    dt = g.distances_from(t)
    out: list[tuple[int, ...]] = []

    def extend(prefix):
        u = prefix[-1]
        if u == t:
            out.append(tuple(prefix))
            return
        for v in g.adj[u]:
            if dt[v] == dt[u] - 1:
                prefix.append(v)
                extend(prefix)
                prefix.pop()

    if dt[s] != float("inf"):
        extend([s])
    return out


@dataclass(frozen=True)
class Discrepancy:
    predicate: str  # "need" or "risk"
    pa: tuple[int, ...]
    pb: tuple[int, ...]
    closed_form: bool
    oracle: bool


def characterization_discrepancies(g: Graph, detours: bool,
                                   budget: int = DEFAULT_BUDGET) -> tuple[int, list[Discrepancy]]:
    """Compare the closed forms with the oracles on every ordered pair of
    shortest paths with distinct starts and distinct goals.

    Returns the number of pairs checked and the mismatches.
    """
    n = g.node_count
    paths = {}
    for s in range(n):
        for t in range(n):
            paths[s, t] = all_shortest_paths(g, s, t)
    space = _TwoRobotSpace(g, detours, budget)
    space.solve_all([(pa, pb) for (sa, ga), pas in paths.items() for (sb, gb), pbs in paths.items()
                     if sa != sb and ga != gb for pa in pas for pb in pbs])
    checked = 0
    bad: list[Discrepancy] = []
    for (sa, ga), pas in paths.items():
        for (sb, gb), pbs in paths.items():
            if sa == sb or ga == gb:
                continue
            for pa in pas:
                for pb in pbs:
                    checked += 1
                    need = swap_need(pa, pb, ga, gb)
                    if need != space.need(pa, pb):
                        bad.append(Discrepancy("need", pa, pb, need, not need))
                    risk = swap_risk(pa, pb, ga, gb)
                    if risk != space.risk(pa, pb):
                        bad.append(Discrepancy("risk", pa, pb, risk, not risk))
    return checked, bad
