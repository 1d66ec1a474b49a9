"""Bubbletree: route every robot across a mid node into the subtree holding
its goal, then recurse on the subtrees in parallel.

The graph is first restricted to a BFS spanning tree rooted at its
one-center. At each level a mid node ``v_m`` splits the current subtree into
child subtrees ``T_c``. Robots outside their target subtree are migrants;
they cross ``v_m`` in priority order, bully-swapping whatever is in their
way, while robots that already sit at ``v_m`` are funneled into their target
subtree by chain moves. The robot whose goal is ``v_m`` (``r_m``) is parked
there last and stays frozen while the subtrees are solved.
"""
from __future__ import annotations

import enum
import time
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import BoundExceeded, Disconnected, NoProgress
from .graph import Tree, bfs_spanning_tree, one_center
from .instances import Instance, SplitMix64, derive_seed
from .rip import in_test_mode
from .validate import Plan


class Balance(enum.Enum):
    NODE = "node"
    GOAL = "goal"


@dataclass
class BubbleConfig:
    balance: Balance = Balance.NODE
    move_all_migrants: bool = False
    postprocess: bool = False
    priority_seed: int = 0
    check_bounds: bool | None = None  # None: follow PERR_TEST_MODE

    @classmethod
    def bubbletree2(cls, priority_seed: int = 0) -> "BubbleConfig":
        return cls(Balance.GOAL, True, True, priority_seed)

    @property
    def is_basic(self) -> bool:
        return self.balance is Balance.NODE and not self.move_all_migrants


@dataclass
class LevelTrace:
    level: int
    v_m: int
    size: int
    k: int
    diam: int
    pre_duration: int
    rm_moves: int
    rm_budget: int


@dataclass
class BubbleStats:
    makespan: int = 0
    raw_makespan: int = 0  # before postprocessing
    runtime_ms: float = 0.0
    n: int = 0
    d_deg: int = 0
    diam: int = 0
    levels: list[LevelTrace] = field(default_factory=list)


def basic_bound(d_deg: int, n: int) -> int:
    return 2 * d_deg * n + 8 * n


# --------------------------------------------------------------------------
# mid node


def _rooted(nodes, tadj, root):
    """BFS order, parent and depth of the subtree ``nodes`` rooted at ``root``."""
    inside = set(nodes)
    par = {root: None}
    depth = {root: 0}
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in tadj[u]:
            if v in inside and v not in par:
                par[v] = u
                depth[v] = depth[u] + 1
                order.append(v)
                queue.append(v)
    return order, par, depth


def _mid_node(nodes, tadj, weight) -> int:
    """Descend from the lowest-id node into the unique heavy child until no
    child subtree carries more than half of the total weight."""
    order, par, _ = _rooted(nodes, tadj, min(nodes))
    size = {u: weight.get(u, 0) for u in order}
    for u in reversed(order[1:]):
        size[par[u]] += size[u]
    total = size[order[0]]
    v = order[0]
    while True:
        heavy = [c for c in tadj[v] if par.get(c) == v and 2 * size[c] > total]
        if not heavy:
            return v
        v = heavy[0]


def find_mid_node(tree: Tree, inst: Instance, balance: Balance) -> int:
    tadj = {u: tuple(sorted(tree.children[u] + ((tree.parent[u],) if tree.parent[u] is not None else ())))
            for u in tree.parent}
    if balance is Balance.NODE:
        weight = {u: 1 for u in tree.parent}
    else:
        weight = {}
        for g in inst.goals:
            weight[g] = weight.get(g, 0) + 1
    return _mid_node(tree.nodes, tadj, weight)


def _diameter(nodes, tadj) -> int:
    order, _, _ = _rooted(nodes, tadj, min(nodes))
    _, _, depth = _rooted(nodes, tadj, order[-1])
    return max(depth.values())


# --------------------------------------------------------------------------
# one level


PRIORITY, CHAIN = "priority", "chain"


class _Level:
    """Pre-recursive phase on one subtree; mutates the shared ``pos``/``occ``."""

    def __init__(self, solver: "_Solver", nodes: list[int], robots: list[int], level: int):
        self.s = solver
        self.nodes = nodes
        self.robots = robots
        self.level = level
        tadj, goals, pos = solver.tadj, solver.goals, solver.pos
        if solver.cfg.balance is Balance.NODE:
            weight = {u: 1 for u in nodes}
        else:
            weight = {}
            for r in robots:
                weight[goals[r]] = weight.get(goals[r], 0) + 1
        self.vm = vm = _mid_node(nodes, tadj, weight)
        _, self.par, self.depth = _rooted(nodes, tadj, vm)
        self.children = [c for c in tadj[vm] if c in self.par]
        self.comp = {vm: None}
        for c in self.children:
            self.comp[c] = c
        for u in sorted(self.par, key=self.depth.get):
            if u != vm and u not in self.comp:
                self.comp[u] = self.comp[self.par[u]]
        self.target = {r: self.comp[goals[r]] for r in robots}
        self.rm = next((r for r in robots if goals[r] == vm), None)
        self.migrants: dict[int, list[int]] = {}
        self.rank: dict[int, int] = {}
        for c in self.children:
            members = sorted(r for r in robots if r != self.rm
                             and self.comp[pos[r]] == c and self.target[r] != c)
            SplitMix64(derive_seed(solver.cfg.priority_seed, vm, c)).shuffle(members)
            self.migrants[c] = members
            self.rank.update((r, i) for i, r in enumerate(members))
        self.initial_migrants = {c: list(m) for c, m in self.migrants.items()}
        self.moved: set[int] = set()
        self.rm_moves = 0

    # -- primitive moves -----------------------------------------------------

    def _move(self, x, w):
        pos, occ = self.s.pos, self.s.occ
        del occ[pos[x]]
        pos[x] = w
        occ[w] = x
        self.moved.add(x)

    def _swap(self, x, y):
        pos, occ = self.s.pos, self.s.occ
        u, w = pos[x], pos[y]
        pos[x], pos[y] = w, u
        occ[w], occ[u] = x, y
        self.moved.update((x, y))

    def _step(self, x, w) -> bool:
        """Move ``x`` to ``w``, swapping an unmoved occupant back; False if blocked."""
        y = self.s.occ.get(w)
        if y is None:
            self._move(x, w)
            return True
        if y in self.moved:
            return False
        self._swap(x, y)
        return True

    # -- the three operations --------------------------------------------------

    def select_focal(self) -> tuple[int, str] | None:
        """Focal child and operation for this timestep, None once no migrants remain.

        The occupant of v_m picks its target subtree: a priority move if that
        subtree's migrant set is nonempty, a chain move otherwise. With v_m
        free (or holding r_m) the lowest-index nonempty migrant set is focal.
        """
        o = self.s.occ.get(self.vm)
        if o is not None and o != self.rm:
            c = self.target[o]
            return (c, PRIORITY) if self.migrants[c] else (c, CHAIN)
        nonempty = [c for c in self.children if self.migrants[c]]
        return (nonempty[0], PRIORITY) if nonempty else None

    def priority_move(self, c: int, focal: bool):
        occ, pos, vm = self.s.occ, self.s.pos, self.vm
        for x in self.migrants[c]:
            if x in self.moved or pos[x] == vm:
                continue
            w = self.par[pos[x]]
            y = occ.get(w)
            if y is not None:
                if y in self.moved:
                    continue
                if w == vm and not focal:
                    continue  # non-focal sets only enter a free v_m
                if y in self.migrants[c] and self.rank[y] < self.rank[x]:
                    continue  # never bully a higher-priority migrant of the same set
            self._step(x, w)

    def chain_move(self, c: int):
        """Shift the robots on the path from v_m to the nearest empty node of
        T_c one step deeper; with T_c full, r_m (the only possible outsider)
        swaps one step up instead."""
        occ, vm = self.s.occ, self.vm
        prev = {c: vm}
        queue = deque([c])
        end = None
        while queue:
            u = queue.popleft()
            if u not in occ:
                end = u
                break
            for v in self.s.tadj[u]:
                if v != vm and v not in prev and v in self.par:
                    prev[v] = u
                    queue.append(v)
        if end is None:
            if self.rm is None or self.comp[self.s.pos[self.rm]] != c:
                raise NoProgress(f"subtree at {c} is full but r_m is not inside it")
            self._step(self.rm, self.par[self.s.pos[self.rm]])
            return
        path = [end]
        while path[-1] != vm:
            path.append(prev[path[-1]])
        # path runs from the empty node back to v_m; shift from the deep end
        for dst, src in zip(path, path[1:]):
            x = occ.get(src)
            if x is not None:
                self._move(x, dst)

    def _prune(self):
        pos = self.s.pos
        for c in self.children:
            m = self.migrants[c]
            if any(self.comp[pos[r]] == self.target[r] for r in m):
                self.migrants[c] = [r for r in m if self.comp[pos[r]] != self.target[r]]

    # -- driver ----------------------------------------------------------------

    def run(self) -> list[list[int]]:
        s = self.s
        pos, occ, vm = s.pos, s.occ, self.vm
        rows = [[pos[r] for r in self.robots]]
        k = len(self.robots)
        self.diam = _diameter(self.nodes, s.tadj)
        cap = 4 * (len(self.nodes) + k) * (max(len(s.tadj[u]) for u in self.nodes) + 2) + self.diam + 16
        rm_start = self.depth[pos[self.rm]] if self.rm is not None else 0
        check = s.check
        infiltrated = {r for r in self.robots if r != self.rm and self.comp[pos[r]] == self.target[r]}
        t = 0
        while True:
            self._prune()
            sel = self.select_focal()
            if sel is None:
                break
            focal, op = sel
            if op == CHAIN:
                self.chain_move(focal)
            else:
                self.priority_move(focal, True)
            if s.cfg.move_all_migrants:
                for c in self.children:
                    if c != focal and self.migrants[c]:
                        self.priority_move(c, False)
            self.moved.clear()
            rows.append([pos[r] for r in self.robots])
            t += 1
            if t > cap:
                raise NoProgress(f"pre-recursive phase at v_m={vm} exceeded {cap} timesteps")
            if check:
                self._check_step(t, infiltrated)
        # park r_m on v_m
        if self.rm is not None:
            while pos[self.rm] != vm:
                self._step(self.rm, self.par[pos[self.rm]])
                self.moved.clear()
                rows.append([pos[r] for r in self.robots])
        self.rm_budget = rm_start + 2 * k
        if self.rm is not None:
            j = self.robots.index(self.rm)
            self.rm_moves = sum(a[j] != b[j] for a, b in zip(rows, rows[1:]))
        self.pre_duration = len(rows) - 1
        if check:
            if self.rm_moves > self.rm_budget:
                raise BoundExceeded(
                    f"r_m moved {self.rm_moves} times at v_m={vm}, budget {self.rm_budget}")
            if s.cfg.move_all_migrants and self.pre_duration > self.diam + 10 * k:
                raise BoundExceeded(
                    f"pre-recursive phase took {self.pre_duration} > diam + 10k = "
                    f"{self.diam} + 10*{k} at v_m={vm}")
        return rows

    def _check_step(self, t, infiltrated):
        pos = self.s.pos
        for r in infiltrated:
            if self.comp[pos[r]] != self.target[r]:
                raise BoundExceeded(f"robot {r} left its target subtree at v_m={self.vm}")
        for r in self.robots:
            if r != self.rm and self.comp[pos[r]] == self.target[r]:
                infiltrated.add(r)
        if self.s.cfg.move_all_migrants:
            k = len(self.robots)
            for c, members in self.initial_migrants.items():
                for i, r in enumerate(members):
                    if r in infiltrated:
                        continue
                    limit = max(self.diam + 2 * i - t + 2 * k, i + 1)
                    if self.depth[pos[r]] > limit:
                        raise BoundExceeded(
                            f"migrant {r} (priority {i}) is {self.depth[pos[r]]} from v_m "
                            f"at t={t}, guarantee {limit}")


# --------------------------------------------------------------------------
# recursion


class _Solver:
    def __init__(self, tadj, goals, starts, cfg: BubbleConfig, stats: BubbleStats):
        self.tadj = tadj
        self.goals = list(goals)
        self.pos = list(starts)
        self.occ = {p: r for r, p in enumerate(starts)}
        self.cfg = cfg
        self.stats = stats
        self.check = cfg.check_bounds if cfg.check_bounds is not None else in_test_mode()

    def solve(self, nodes: list[int], robots: list[int], level: int) -> np.ndarray:
        """Trajectories of ``robots`` (columns) from their current positions."""
        pos, goals = self.pos, self.goals
        if all(pos[r] == goals[r] for r in robots):
            return np.array([[pos[r] for r in robots]], dtype=np.int64).reshape(1, len(robots))
        lv = _Level(self, nodes, robots, level)
        pre = np.array(lv.run(), dtype=np.int64)
        self.stats.levels.append(LevelTrace(level, lv.vm, len(nodes), len(robots), lv.diam,
                                            lv.pre_duration, lv.rm_moves, lv.rm_budget))
        col = {r: i for i, r in enumerate(robots)}
        subs = []
        for c in lv.children:
            sub_nodes = sorted(u for u in nodes if lv.comp[u] == c)
            sub_robots = [r for r in robots if lv.comp[goals[r]] == c]
            if sub_robots:
                subs.append((sub_robots, self.solve(sub_nodes, sub_robots, level + 1)))
        span = max((a.shape[0] - 1 for _, a in subs), default=0)
        tail = np.repeat(pre[-1:], span, axis=0)
        for sub_robots, a in subs:
            idx = [col[r] for r in sub_robots]
            m = a.shape[0] - 1
            tail[:m, idx] = a[1:]
            tail[m:, idx] = a[-1]
        return np.vstack([pre, tail])


def _tree_solver(inst: Instance, cfg: BubbleConfig, stats: BubbleStats):
    """Restrict the robots' component to a one-center BFS tree."""
    g = inst.graph
    lab = g.component_labels()
    comp_id = lab[inst.starts[0]]
    if any(lab[v] != comp_id for v in inst.starts + inst.goals):
        raise Disconnected("robots live in different components")
    nodes = [u for u in range(g.node_count) if lab[u] == comp_id]
    sub, old = g.induced(nodes)
    tree = bfs_spanning_tree(sub, one_center(sub))
    tadj: dict[int, tuple[int, ...]] = {}
    for u in range(sub.node_count):
        nb = list(tree.children[u])
        if tree.parent[u] is not None:
            nb.append(tree.parent[u])
        tadj[old[u]] = tuple(sorted(old[v] for v in nb))
    return _Solver(tadj, inst.goals, inst.starts, cfg, stats), nodes


def bubbletree_solve(inst: Instance, cfg: BubbleConfig | None = None,
                     stats: BubbleStats | None = None) -> Plan:
    cfg = cfg or BubbleConfig()
    stats = stats if stats is not None else BubbleStats()
    t0 = time.perf_counter()
    solver, nodes = _tree_solver(inst, cfg, stats)
    tadj = solver.tadj
    P = solver.solve(nodes, list(range(inst.k)), 0)
    plan = Plan(P).truncated(inst.goals)
    stats.raw_makespan = plan.makespan
    stats.n = len(nodes)
    stats.d_deg = max(len(v) for v in tadj.values())
    stats.diam = _diameter(nodes, tadj) if len(nodes) > 1 else 0
    if solver.check and cfg.is_basic:
        bound = basic_bound(stats.d_deg, stats.n)
        if plan.makespan > bound:
            raise BoundExceeded(f"makespan {plan.makespan} > 2*d_deg*n + 8n = {bound}")
    if cfg.postprocess:
        plan = postprocess_redundancy(plan).truncated(inst.goals)
    stats.makespan = plan.makespan
    stats.runtime_ms = (time.perf_counter() - t0) * 1000.0
    return plan


# --------------------------------------------------------------------------
# postprocessing


def postprocess_redundancy(plan: Plan) -> Plan:
    """Replace out-and-back excursions with waits.

    If robot i leaves v after t and first returns at t' while no other robot
    visits v in between, i simply waits at v over (t, t'). Passes repeat
    until nothing changes, since removing one excursion can expose another.
    """
    P = plan.positions.copy()
    T1, k = P.shape
    if T1 < 3:
        return Plan(P)
    n = int(P.max()) + 1
    occ = np.full((T1, n), -1, dtype=np.int64)
    rows = np.arange(T1)
    for i in range(k):
        occ[rows, P[:, i]] = i
    changed = True
    while changed:
        changed = False
        for i in range(k):
            traj = P[:, i]
            t = 0
            while t < T1 - 2:
                if traj[t + 1] == traj[t]:
                    t += 1
                    continue
                v = traj[t]
                back = np.flatnonzero(traj[t + 2:] == v)
                if len(back) == 0:
                    t += 1
                    continue
                s = t + 2 + int(back[0])
                if np.any(occ[t + 1:s, v] != -1):
                    t += 1
                    continue
                span = np.arange(t + 1, s)
                occ[span, traj[t + 1:s]] = -1
                traj[t + 1:s] = v
                occ[span, v] = i
                changed = True
                t = s
    return Plan(P)
