"""Instances, map/scenario files, and the seeded experiment generators.

Randomness is splitmix64 feeding Fisher-Yates, pinned so generated
instances are reproducible from the seed alone.
"""
from __future__ import annotations

import csv
import functools
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import BadSize, GenerationFailed, InvalidInstance, ParseError
from .graph import INF, Graph

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, m: int) -> int:
        """Uniform integer in ``[0, m)`` by rejection (no modulo bias)."""
        if m <= 0:
            raise ValueError("m must be positive")
        limit = (1 << 64) - ((1 << 64) % m)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % m

    def shuffle(self, items: list) -> list:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items


def derive_seed(seed: int, *parts: int) -> int:
    """Mix extra integers into a seed; used to give every trial its own stream."""
    rng = SplitMix64(seed)
    out = rng.next_u64()
    for p in parts:
        rng = SplitMix64(out ^ (p & MASK64))
        out = rng.next_u64()
    return out


@dataclass(frozen=True)
class Instance:
    graph: Graph
    starts: tuple[int, ...]
    goals: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "starts", tuple(int(s) for s in self.starts))
        object.__setattr__(self, "goals", tuple(int(g) for g in self.goals))
        k, n = len(self.starts), self.graph.node_count
        if k != len(self.goals):
            raise InvalidInstance("starts and goals differ in length")
        if not 1 <= k <= n:
            raise InvalidInstance(f"need 1 <= k <= n, got k={k}, n={n}")
        for name, seq in (("starts", self.starts), ("goals", self.goals)):
            if len(set(seq)) != k:
                raise InvalidInstance(f"{name} not pairwise distinct")
            if any(not 0 <= v < n for v in seq):
                raise InvalidInstance(f"{name} contain an out-of-range node")
        lab = self.graph.component_labels()
        for i, (s, g) in enumerate(zip(self.starts, self.goals)):
            if lab[s] != lab[g]:
                raise InvalidInstance(f"robot {i}: goal {g} unreachable from {s}")

    @property
    def k(self) -> int:
        return len(self.starts)

    @property
    def n(self) -> int:
        return self.graph.node_count

    @functools.cached_property
    def _dists(self) -> tuple[int, ...]:
        return tuple(int(self.graph.distances_from(s)[g]) for s, g in zip(self.starts, self.goals))

    def dist(self, i: int) -> int:
        return self._dists[i]

    @property
    def sic(self) -> int:
        return sum(self._dists)

    @property
    def l(self) -> int:
        return max(self._dists)


# --------------------------------------------------------------------------
# grid maps

PASSABLE = frozenset(".G")
BLOCKED = frozenset("@TO")


@dataclass(frozen=True)
class GridMap:
    width: int
    height: int
    passable: tuple[tuple[bool, ...], ...]

    def node_ids(self) -> dict[tuple[int, int], int]:
        """Row-major ids over passable cells, keyed by (row, col)."""
        ids = {}
        for r in range(self.height):
            for c in range(self.width):
                if self.passable[r][c]:
                    ids[(r, c)] = len(ids)
        return ids

    def to_graph(self) -> Graph:
        ids = self.node_ids()
        edges = []
        for (r, c), u in ids.items():
            for rc in ((r, c + 1), (r + 1, c)):
                v = ids.get(rc)
                if v is not None:
                    edges.append((u, v))
        return Graph.from_edges(len(ids), edges)

    def dumps(self) -> str:
        rows = ["".join("." if p else "@" for p in row) for row in self.passable]
        head = ["type octile", f"height {self.height}", f"width {self.width}", "map"]
        return "\n".join(head + rows) + "\n"


def parse_grid_map(text: str | bytes) -> GridMap:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = text.splitlines()
    if len(lines) < 4:
        raise ParseError(len(lines) + 1, "truncated header")

    def field(lineno, key):
        parts = lines[lineno - 1].split()
        if len(parts) != 2 or parts[0] != key:
            raise ParseError(lineno, f"expected '{key} <value>'")
        return parts[1]

    field(1, "type")
    try:
        height = int(field(2, "height"))
        width = int(field(3, "width"))
    except ValueError:
        raise ParseError(2, "height/width must be integers") from None
    if height < 1 or width < 1:
        raise ParseError(2, "height and width must be positive")
    if lines[3].strip() != "map":
        raise ParseError(4, "expected 'map'")
    rows = lines[4:4 + height]
    if len(rows) != height:
        raise ParseError(len(lines) + 1, f"expected {height} map rows, got {len(rows)}")
    grid = []
    for i, row in enumerate(rows):
        lineno = 5 + i
        row = row.rstrip("\r")
        if len(row) != width:
            raise ParseError(lineno, f"row has {len(row)} characters, expected {width}")
        cells = []
        for ch in row:
            if ch in PASSABLE:
                cells.append(True)
            elif ch in BLOCKED:
                cells.append(False)
            else:
                raise ParseError(lineno, f"unknown map character {ch!r}")
        grid.append(tuple(cells))
    return GridMap(width, height, tuple(grid))


def open_grid_map(width: int, height: int) -> GridMap:
    return GridMap(width, height, tuple((True,) * width for _ in range(height)))


# --------------------------------------------------------------------------
# scenario files

def dumps_scenario(inst: Instance) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["robot", "start", "goal"])
    for i, (s, g) in enumerate(zip(inst.starts, inst.goals)):
        w.writerow([i, s, g])
    return buf.getvalue()


def parse_scenario(text: str) -> tuple[list[int], list[int]]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [c.strip() for c in rows[0]] != ["robot", "start", "goal"]:
        raise ParseError(1, "expected header 'robot,start,goal'")
    starts, goals = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 3:
            raise ParseError(lineno, "expected 3 fields")
        try:
            r, s, g = (int(x) for x in row)
        except ValueError:
            raise ParseError(lineno, "non-integer field") from None
        if r != len(starts):
            raise ParseError(lineno, f"robot ids must be consecutive from 0, got {r}")
        starts.append(s)
        goals.append(g)
    return starts, goals


def load_instance(map_path: str | Path, scen_path: str | Path) -> tuple[Instance, GridMap]:
    gmap = parse_grid_map(Path(map_path).read_text())
    starts, goals = parse_scenario(Path(scen_path).read_text())
    return Instance(gmap.to_graph(), starts, goals), gmap


def save_instance(inst: Instance, gmap: GridMap, map_path: str | Path, scen_path: str | Path):
    if gmap.to_graph() != inst.graph:
        raise ValueError("grid map does not match the instance graph")
    Path(map_path).write_text(gmap.dumps())
    Path(scen_path).write_text(dumps_scenario(inst))


# --------------------------------------------------------------------------
# generators

def gen_linear_array(n: int, seed: int) -> Instance:
    if n < 1:
        raise ValueError("n must be >= 1")
    goals = SplitMix64(seed).shuffle(list(range(n)))
    return Instance(Graph.path(n), tuple(range(n)), tuple(goals))


def gen_square_array(side: int, seed: int) -> Instance:
    if side < 1:
        raise ValueError("side must be >= 1")
    n = side * side
    goals = SplitMix64(seed).shuffle(list(range(n)))
    return Instance(Graph.grid(side, side), tuple(range(n)), tuple(goals))


def gen_random_grid(w: int, h: int, density: float, k: int, seed: int,
                    retries: int = 100) -> tuple[Instance, GridMap]:
    """Random-obstacle grid; robots are placed in the largest component."""
    if not 0 <= density < 1:
        raise ValueError("density must be in [0, 1)")
    rng = SplitMix64(seed)
    cells = w * h
    n_obstacles = int(round(density * cells))
    for _ in range(retries):
        order = rng.shuffle(list(range(cells)))
        blocked = set(order[:n_obstacles])
        gmap = GridMap(w, h, tuple(
            tuple((r * w + c) not in blocked for c in range(w)) for r in range(h)))
        g = gmap.to_graph()
        if g.node_count == 0:
            continue
        comp = max(g.components(), key=len)  # ties: first (lowest ids) wins
        if len(comp) < k:
            continue
        starts = rng.shuffle(list(comp))[:k]
        goals = rng.shuffle(list(comp))[:k]
        return Instance(g, tuple(starts), tuple(goals)), gmap
    raise GenerationFailed(f"no component with >= {k} cells after {retries} attempts")


def gen_cycle_counterexample(n: int, floor: bool = False) -> Instance:
    """``n/lg n`` robots on an ``n``-cycle, robot i going from ``i lg n`` to
    ``(i+1) lg n + 1``.

    ``n`` must be a power of two >= 8. With ``floor=False`` the robot count
    must be integral; ``floor=True`` uses ``floor(n / lg n)`` robots, which
    keeps every start-goal distance at ``lg n + 1`` for ``n >= 16``.
    """
    if n < 8 or n & (n - 1):
        raise BadSize(f"n={n} is not a power of two >= 8")
    lg = n.bit_length() - 1
    if n % lg and not floor:
        raise BadSize(f"n/lg n = {n}/{lg} is not integral")
    if floor and 2 * (lg + 1) >= n:
        raise BadSize(f"n={n} too small: shortest paths would not be unique")
    k = n // lg
    starts = [i * lg for i in range(k)]
    goals = [((i + 1) * lg + 1) % n for i in range(k)]
    return Instance(Graph.cycle(n), tuple(starts), tuple(goals))


def random_tree(n: int, seed: int, max_degree: int | None = None) -> Graph:
    """Random labelled tree: node i attaches to a uniformly chosen earlier node
    that still has spare degree."""
    rng = SplitMix64(seed)
    deg = [0] * n
    edges = []
    for v in range(1, n):
        cands = [u for u in range(v) if max_degree is None or deg[u] < max_degree]
        u = cands[rng.below(len(cands))]
        deg[u] += 1
        deg[v] += 1
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def random_connected_graph(n: int, extra_edges: int, seed: int) -> Graph:
    rng = SplitMix64(seed)
    edges = set()
    for v in range(1, n):
        u = rng.below(v)
        edges.add((u, v))
    attempts = 0
    while extra_edges > 0 and attempts < 50 * (extra_edges + 1) and n > 2:
        attempts += 1
        u, v = rng.below(n), rng.below(n)
        if u == v:
            continue
        e = (min(u, v), max(u, v))
        if e not in edges:
            edges.add(e)
            extra_edges -= 1
    return Graph.from_edges(n, sorted(edges))


def random_instance(g: Graph, k: int, seed: int) -> Instance:
    """k robots with distinct random starts and goals inside one component of g."""
    rng = SplitMix64(seed)
    comp = max(g.components(), key=len)
    if len(comp) < k:
        raise GenerationFailed(f"largest component has {len(comp)} < {k} nodes")
    starts = rng.shuffle(list(comp))[:k]
    goals = rng.shuffle(list(comp))[:k]
    return Instance(g, tuple(starts), tuple(goals))


def lg_ceil(x: int) -> int:
    return (x - 1).bit_length() if x > 1 else 0


def gen_nested_bottleneck(k: int) -> Instance:
    """k robots on leaves of a hub, all needing the hub, with nested paths.

    Node 0 is the hub, nodes 1..k form a line leaving it, and node k+1+i is
    robot i's start leaf.  Robot i's goal is line node i+1, so each robot's
    path past the hub contains the previous robot's.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    edges = [(j, j + 1) for j in range(k)]
    edges += [(0, k + 1 + i) for i in range(k)]
    starts = [k + 1 + i for i in range(k)]
    goals = [i + 1 for i in range(k)]
    return Instance(Graph.from_edges(2 * k + 1, edges), tuple(starts), tuple(goals))
