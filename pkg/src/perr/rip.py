"""Restriction to individual paths (RIP) and its inverse-chain variant.

Every robot keeps a shortest path to its goal.  Each timestep robots advance
into free nodes, bully-swap robots whose remaining path is a parallel subset
of theirs, and rotate cycles of robots that want each other's nodes.  The
potential (remaining distance plus directed swap risks) strictly decreases,
which bounds the makespan by ``k^2 + SIC``.
"""
from __future__ import annotations

import enum
import os
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import MonovariantViolation, NoProgress, TimestepCapExceeded
from .graph import bfs_shortest_path
from .instances import Instance
from .swaps import is_parallel_subset, potential  # noqa: F401  (re-exported)
from .validate import Plan, count_swaps


class Mode(enum.Enum):
    BASIC = "basic"
    INVERSE_CHAINS = "inverse_chains"


class ChainPolicy(enum.Enum):
    FIRST = "first"
    LONGEST = "longest"
    FARTHEST_TO_GO = "farthest_to_go"


ADVANCE, SWAP, CYCLE = "advance", "swap", "cycle"


def in_test_mode() -> bool:
    return os.environ.get("PERR_TEST_MODE") == "1"


@dataclass
class RipConfig:
    mode: Mode = Mode.BASIC
    chain_policy: ChainPolicy = ChainPolicy.FIRST
    max_timesteps: int | None = None  # None: k^2 + SIC + 1
    phase_order: tuple[str, ...] = (ADVANCE, SWAP, CYCLE)
    track_potential: bool | None = None  # None: follow PERR_TEST_MODE
    recompute_paths: bool = False  # debug cross-check of the path bookkeeping


@dataclass
class RipStats:
    makespan: int = 0
    runtime_ms: float = 0.0
    swaps: int = 0
    phi: list[int] = field(default_factory=list)


class RipState:
    """Paths are stored reversed (goal first, position last) so that advancing
    pops and prepending appends."""

    def __init__(self, inst: Instance, paths=None):
        self.inst = inst
        self.t = 0
        if paths is None:
            paths = [bfs_shortest_path(inst.graph, s, g) for s, g in zip(inst.starts, inst.goals)]
        self.rev = [list(reversed(p)) for p in paths]
        self.occ = {p[-1]: i for i, p in enumerate(self.rev)}
        self.moved = [False] * inst.k

    @property
    def k(self) -> int:
        return len(self.rev)

    def path(self, i: int) -> list[int]:
        return self.rev[i][::-1]

    def paths(self) -> list[list[int]]:
        return [self.path(i) for i in range(self.k)]

    def positions(self) -> list[int]:
        return [p[-1] for p in self.rev]

    def pos(self, i: int) -> int:
        return self.rev[i][-1]

    def next_node(self, i: int) -> int | None:
        p = self.rev[i]
        return p[-2] if len(p) > 1 else None

    def remaining(self, i: int) -> int:
        return len(self.rev[i]) - 1

    def done(self) -> bool:
        return all(len(p) == 1 for p in self.rev)

    # single-robot bookkeeping; occupancy is updated eagerly so later
    # decisions in the same timestep see the planned configuration

    def _advance(self, i: int):
        p = self.rev[i]
        old = p.pop()
        if self.occ.get(old) == i:
            del self.occ[old]
        self.occ[p[-1]] = i
        self.moved[i] = True

    def advance_group(self, robots):
        """Move several robots one step along their paths simultaneously."""
        olds = [self.rev[i][-1] for i in robots]
        for i, old in zip(robots, olds):
            if self.occ.get(old) == i:
                del self.occ[old]
        for i in robots:
            self.rev[i].pop()
            self.occ[self.rev[i][-1]] = i
            self.moved[i] = True

    def subset_swap(self, i: int, j: int, happy: bool):
        vi, vj = self.pos(i), self.pos(j)
        self.rev[i].pop()
        if happy:
            self.rev[j].pop()
        else:
            self.rev[j].append(vi)
        self.occ[vj] = i
        self.occ[vi] = j
        self.moved[i] = self.moved[j] = True


def is_prefix_subset(rev_j: list[int], rev_i: list[int]) -> bool:
    """``P_j`` equals ``P_i[1:1+len(P_j)]`` (reversed storage).

    For shortest paths with ``P_j[0] == P_i[1]`` this is exactly the
    order-preserving subsequence test, since such a subsequence is contiguous.
    """
    lj, li = len(rev_j), len(rev_i)
    if lj > li - 1:
        return False
    return rev_i[li - 1 - lj: li - 1] == rev_j


def phase_advance(st: RipState):
    """Repeat until fixpoint: robots whose next node is free advance."""
    moved_any = True
    while moved_any:
        moved_any = False
        for i in range(st.k):
            if st.moved[i]:
                continue
            nxt = st.next_node(i)
            if nxt is not None and nxt not in st.occ:
                st._advance(i)
                moved_any = True


def phase_swap(st: RipState):
    for i in range(st.k):
        if st.moved[i]:
            continue
        nxt = st.next_node(i)
        if nxt is None:
            continue
        j = st.occ.get(nxt)
        if j is None or st.moved[j]:
            continue
        ri, rj = st.rev[i], st.rev[j]
        if is_prefix_subset(rj, ri):
            st.subset_swap(i, j, happy=False)
        elif len(rj) == 2 and rj[0] == ri[-1]:
            # two-node antiparallel case: j's only step is onto i, a happy swap
            st.subset_swap(i, j, happy=True)


def successor(st: RipState, i: int):
    """f_t(i): robot on i's next node, else that node; None when i is at its goal."""
    nxt = st.next_node(i)
    if nxt is None:
        return None
    j = st.occ.get(nxt)
    return ("robot", j) if j is not None else ("node", nxt)


def phase_cycles(st: RipState):
    """Rotate every cycle of unmoved robots each wanting the next one's node."""
    k = st.k
    color = [0] * k  # 0 new, 1 on current walk, 2 finished
    cycles = []
    for s in range(k):
        if st.moved[s] or color[s]:
            continue
        walk = []
        i = s
        while True:
            if color[i] == 1:
                cycles.append(walk[walk.index(i):])
                break
            if color[i] == 2:
                break
            color[i] = 1
            walk.append(i)
            nxt = st.next_node(i)
            j = st.occ.get(nxt) if nxt is not None else None
            if j is None or st.moved[j]:
                break
            i = j
        for w in walk:
            color[w] = 2
    for cyc in sorted(cycles, key=min):
        st.advance_group(cyc)


PHASES = {ADVANCE: phase_advance, SWAP: phase_swap, CYCLE: phase_cycles}


# --------------------------------------------------------------------------
# inverse chains

@dataclass
class InverseChain:
    kind: str  # "cycle", "empty", or "goalie"
    robots: list[int]
    sink: int | None  # empty node for "empty", goalie robot for "goalie"
    cycle: list[int] = field(default_factory=list)


def partition_inverse_chains(st: RipState) -> list[InverseChain]:
    """Components of the functional graph i -> f_t(i) over off-goal robots."""
    k = st.k
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    node_owner: dict[int, int] = {}
    for i in range(k):
        f = successor(st, i)
        if f is None:
            continue
        kind, target = f
        if kind == "robot":
            parent[find(i)] = find(target)
        else:
            other = node_owner.setdefault(target, i)
            parent[find(i)] = find(other)
    groups: dict[int, list[int]] = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(i)
    chains = []
    for members in groups.values():
        offgoal = [i for i in members if st.next_node(i) is not None]
        if not offgoal:
            continue
        # walk forward from the lowest member to find the sink
        seen = []
        i = offgoal[0]
        while True:
            if i in seen:
                cyc = seen[seen.index(i):]
                chains.append(InverseChain("cycle", sorted(members), None, cyc))
                break
            seen.append(i)
            f = successor(st, i)
            if f is None:
                chains.append(InverseChain("goalie", sorted(members), i))
                break
            kind, target = f
            if kind == "node":
                chains.append(InverseChain("empty", sorted(members), target))
                break
            i = target
    chains.sort(key=lambda c: c.robots[0])
    return chains


def _predecessors(st: RipState, members: list[int]) -> dict:
    preds: dict = {}
    for i in members:
        f = successor(st, i)
        if f is not None:
            preds.setdefault(f, []).append(i)
    for v in preds.values():
        v.sort()
    return preds


def select_chain(st: RipState, chain: InverseChain, policy: ChainPolicy) -> list[int]:
    """Maximal chain ending at the empty node, ordered from the lead robot back."""
    preds = _predecessors(st, chain.robots)
    sink = ("node", chain.sink)
    if policy is ChainPolicy.FIRST:
        # the empty node counts as index 0; take the least index above the
        # current one, wrapping around mod k
        out, cur_idx, cur = [], 0, sink
        while True:
            cands = preds.get(cur, [])
            if not cands:
                return out
            above = [c for c in cands if c > cur_idx]
            nxt = min(above) if above else min(cands)
            out.append(nxt)
            cur_idx, cur = nxt, ("robot", nxt)

    if policy is ChainPolicy.LONGEST:
        height: dict[int, int] = {}

        def h(i):
            if i not in height:
                height[i] = 1 + max((h(c) for c in preds.get(("robot", i), [])), default=0)
            return height[i]

        out, cur = [], sink
        while True:
            cands = preds.get(cur, [])
            if not cands:
                return out
            nxt = max(cands, key=lambda c: (h(c), -c))
            out.append(nxt)
            cur = ("robot", nxt)

    # farthest to go: the chain through the robot with most remaining distance,
    # extended backwards greedily by remaining distance
    far = max(chain.robots, key=lambda i: (st.remaining(i), -i))
    forward = [far]
    f = successor(st, far)
    while f is not None and f[0] == "robot":
        forward.append(f[1])
        f = successor(st, f[1])
    out = list(reversed(forward))
    cur = ("robot", far)
    while True:
        cands = preds.get(cur, [])
        if not cands:
            return out
        nxt = max(cands, key=lambda c: (st.remaining(c), -c))
        out.append(nxt)
        cur = ("robot", nxt)


def advance_chain(st: RipState, chain: InverseChain, policy: ChainPolicy) -> list[int]:
    robots = select_chain(st, chain, policy)
    st.advance_group(robots)
    return robots


def _inverse_chain_step(st: RipState, policy: ChainPolicy):
    for chain in partition_inverse_chains(st):
        if chain.kind == "cycle":
            st.advance_group(chain.cycle)
        elif chain.kind == "empty":
            advance_chain(st, chain, policy)
    phase_swap(st)


# --------------------------------------------------------------------------

def rip_step(st: RipState, cfg: RipConfig) -> RipState:
    """Advance the state by one timestep in place and return it."""
    st.moved = [False] * st.k
    if cfg.mode is Mode.INVERSE_CHAINS:
        _inverse_chain_step(st, cfg.chain_policy)
    else:
        for name in cfg.phase_order:
            PHASES[name](st)
    if not any(st.moved):
        raise NoProgress(f"no robot moved at t={st.t}")
    if cfg.recompute_paths:
        g, goals = st.inst.graph, st.inst.goals
        for i, p in enumerate(st.rev):
            assert len(p) - 1 == g.distances_from(p[-1])[goals[i]], f"robot {i} path not shortest"
    st.t += 1
    return st


def rip_solve(inst: Instance, cfg: RipConfig | None = None, stats: RipStats | None = None) -> Plan:
    cfg = cfg or RipConfig()
    t0 = time.perf_counter()
    st = RipState(inst)
    cap = cfg.max_timesteps if cfg.max_timesteps is not None else inst.k ** 2 + inst.sic + 1
    track = cfg.track_potential if cfg.track_potential is not None else in_test_mode()
    rows = [st.positions()]
    phi = []
    if track:
        phi.append(potential(inst.goals, st.paths()).phi)
        if phi[0] > inst.k ** 2 + inst.sic:
            raise MonovariantViolation(f"initial potential {phi[0]} exceeds k^2 + SIC")
    while not st.done():
        if st.t >= cap:
            raise TimestepCapExceeded(f"RIP exceeded {cap} timesteps")
        rip_step(st, cfg)
        rows.append(st.positions())
        if track:
            phi.append(potential(inst.goals, st.paths()).phi)
            if phi[-1] >= phi[-2]:
                raise MonovariantViolation(
                    f"potential did not decrease at t={st.t}: {phi[-2]} -> {phi[-1]}")
    plan = Plan(np.array(rows, dtype=np.int64))
    if stats is not None:
        stats.makespan = plan.makespan
        stats.runtime_ms = (time.perf_counter() - t0) * 1e3
        stats.phi = phi
        stats.swaps = count_swaps(plan.positions)
    return plan
