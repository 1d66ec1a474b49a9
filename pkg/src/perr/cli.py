"""Command-line front end: ``perr solve|validate|oracle|bench-*``.

Exit codes: 0 success, 1 bad input (usage, parse or validation failure),
2 solver failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from .baselines import odd_even_sort_plan, shearsort_plan
from .bubbletree import BubbleConfig, BubbleStats, bubbletree_solve
from .errors import ParseError, PerrError, PlanError
from .instances import (Instance, derive_seed, gen_cycle_counterexample, gen_linear_array,
                        gen_random_grid, gen_square_array, lg_ceil, load_instance)
from .oracle import DEFAULT_STATE_BUDGET, optimal_makespan
from .rip import Mode, RipConfig, rip_solve
from .validate import Plan, dumps_plan, parse_plan, validate_plan

ALGOS = ("rip", "rip-ic", "bubbletree", "bubbletree2", "oddeven", "shearsort", "oracle")


def run_solver(algo: str, inst: Instance, seed: int = 0,
               budget: int = DEFAULT_STATE_BUDGET) -> tuple[Plan, int]:
    """Solve with the named algorithm; returns the plan and the number of
    timesteps the solver produced before truncation or postprocessing."""
    if algo == "rip":
        plan = rip_solve(inst, RipConfig())
        return plan, plan.makespan
    if algo == "rip-ic":
        plan = rip_solve(inst, RipConfig(mode=Mode.INVERSE_CHAINS))
        return plan, plan.makespan
    if algo in ("bubbletree", "bubbletree2"):
        cfg = BubbleConfig(priority_seed=seed) if algo == "bubbletree" else BubbleConfig.bubbletree2(seed)
        stats = BubbleStats()
        plan = bubbletree_solve(inst, cfg, stats)
        return plan, stats.raw_makespan
    if algo == "oddeven":
        plan = odd_even_sort_plan(inst)
        return plan, plan.makespan
    if algo == "shearsort":
        plan = shearsort_plan(inst)
        return plan, plan.makespan
    if algo == "oracle":
        _, plan = optimal_makespan(inst, budget)
        return plan, plan.makespan
    raise ValueError(f"unknown algorithm {algo!r}")


# --------------------------------------------------------------------------
# benchmark records


@dataclass
class BenchRecord:
    algo: str
    n: int
    k: int
    density: str
    seed: int
    makespan: int
    sic: int
    l: int
    swaps: int
    timesteps: int
    runtime_ms: str
    valid: bool


BENCH_FIELDS = list(BenchRecord.__dataclass_fields__)


def bench_one(algo: str, inst: Instance, seed: int, density: str, timing: bool) -> BenchRecord:
    t0 = time.perf_counter()
    plan, steps = run_solver(algo, inst, seed)
    ms = (time.perf_counter() - t0) * 1000.0
    metrics = validate_plan(inst, plan)  # raises before any record is emitted
    return BenchRecord(algo, inst.n, inst.k, density, seed, metrics.makespan, inst.sic, inst.l,
                       metrics.swaps, steps, f"{ms:.3f}" if timing else "", True)


def _bench_task(task):
    algo, gen, args, seed, density, timing, extra = task
    inst = gen(*args)
    if isinstance(inst, tuple):
        inst = inst[0]
    rec = bench_one(algo, inst, seed, density, timing)
    return asdict(rec) | extra(rec)


def _no_extra(rec):
    return {}


def _square_extra(rec):
    side = math.isqrt(rec.n)
    return {"makespan_per_k": f"{rec.makespan / rec.k:.6f}",
            "shearsort_bound": (2 * lg_ceil(rec.n) + 1) * side,
            "paper_bound": f"{2 * math.log2(rec.n) * side:.6f}" if rec.n > 1 else "0.000000"}


def _cycle_extra(rec):
    return {"optimal": int(math.log2(rec.n)) + 1}


def _run_bench(tasks, fields, out, jobs) -> list[dict]:
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            rows = list(ex.map(_bench_task, tasks, chunksize=4))
    else:
        rows = [_bench_task(t) for t in tasks]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    if out:
        Path(out).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return rows


def _summary(rows, key):
    groups: dict = {}
    for r in rows:
        groups.setdefault((r["algo"], r[key]), []).append(r["makespan"])
    lines = []
    for (algo, val), ms in groups.items():
        lines.append(f"{algo} {key}={val} min={min(ms)} avg={sum(ms) / len(ms):.3f} max={max(ms)}")
    return "\n".join(lines)


# --------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _algo_list(text: str) -> list[str]:
    names = [a.strip() for a in text.split(",") if a.strip()]
    bad = [a for a in names if a not in ALGOS]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"unknown algorithm(s) {bad}; choose from {', '.join(ALGOS)}")
    return names


def _csv_list(cast):
    def parse(text):
        return [cast(x) for x in text.split(",") if x.strip()]
    return parse


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="perr", description="Package-exchange robot routing solvers and benchmarks.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def common(sp, algo_default=None, many=False):
        sp.add_argument("--seed", type=_u64, default=0)
        sp.add_argument("--out", default=None)
        if many:
            sp.add_argument("--algo", type=_algo_list, default=algo_default)
            sp.add_argument("--trials", type=int, default=10)
            sp.add_argument("--timing", action="store_true",
                            help="fill runtime_ms (makes the CSV nondeterministic)")
            sp.add_argument("--jobs", type=int, default=1)

    s = sub.add_parser("solve", help="solve one map + scenario")
    s.add_argument("--map", required=True)
    s.add_argument("--scen", required=True)
    s.add_argument("--algo", choices=ALGOS, default="rip")
    s.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET)
    common(s)

    v = sub.add_parser("validate", help="check a plan against a map + scenario")
    v.add_argument("--map", required=True)
    v.add_argument("--scen", required=True)
    v.add_argument("--plan", required=True)

    o = sub.add_parser("oracle", help="optimal makespan by joint-state BFS")
    o.add_argument("--map", required=True)
    o.add_argument("--scen", required=True)
    o.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET)
    common(o)

    bl = sub.add_parser("bench-linear", help="dense linear arrays, n = k = 1..max-n")
    bl.add_argument("--max-n", type=int, default=50)
    bl.add_argument("--step", type=int, default=1)
    common(bl, ["rip", "oddeven"], many=True)

    bs = sub.add_parser("bench-square", help="dense square arrays, side = 1..max-side")
    bs.add_argument("--max-side", type=int, default=10)
    common(bs, ["rip", "shearsort"], many=True)

    bg = sub.add_parser("bench-grid", help="random-obstacle grids, density x k sweep")
    bg.add_argument("--width", type=int, default=20)
    bg.add_argument("--height", type=int, default=15)
    bg.add_argument("--densities", type=_csv_list(str), default=["0", "0.1", "0.2", "0.3"])
    bg.add_argument("--ks", type=_csv_list(int), default=[10, 20, 30, 40, 50])
    common(bg, ["rip"], many=True)

    bc = sub.add_parser("bench-cycle", help="cycle counterexample family")
    bc.add_argument("--ns", type=_csv_list(int), default=[16, 32, 64, 128])
    common(bc, ["rip", "bubbletree2"], many=True)
    return p


# --------------------------------------------------------------------------
# commands


def _load(args):
    try:
        inst, _ = load_instance(args.map, args.scen)
    except (OSError, ParseError, PerrError, ValueError) as e:
        raise _InputError(f"cannot load instance: {e}") from None
    return inst


class _InputError(Exception):
    pass


def cmd_solve(args) -> int:
    inst = _load(args)
    t0 = time.perf_counter()
    try:
        plan, steps = run_solver(args.algo, inst, args.seed, args.budget)
    except PerrError as e:
        print(f"solver error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    ms = (time.perf_counter() - t0) * 1000.0
    try:
        m = validate_plan(inst, plan)
    except PlanError as e:
        print(f"invalid plan: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    text = dumps_plan(plan)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(f"algo={args.algo} k={inst.k} n={inst.n} makespan={m.makespan} sic={m.sic} "
          f"l={inst.l} swaps={m.swaps} timesteps={steps} runtime_ms={ms:.3f}")
    return 0


def cmd_validate(args) -> int:
    inst = _load(args)
    try:
        plan = parse_plan(Path(args.plan).read_text())
        m = validate_plan(inst, plan)
    except OSError as e:
        print(f"cannot read plan: {e}", file=sys.stderr)
        return 1
    except PlanError as e:
        print(f"invalid: {type(e).__name__}: {e}")
        return 1
    print(f"valid makespan={m.makespan} swaps={m.swaps} sic={m.sic}")
    return 0


def cmd_oracle(args) -> int:
    inst = _load(args)
    try:
        T, plan = optimal_makespan(inst, args.budget)
    except PerrError as e:
        print(f"solver error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    validate_plan(inst, plan)
    if args.out:
        Path(args.out).write_text(dumps_plan(plan))
    print(f"optimal makespan={T}")
    return 0


def _bench(args, tasks, fields, key) -> int:
    try:
        rows = _run_bench(tasks, fields, args.out, args.jobs)
    except PerrError as e:
        print(f"solver error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    if args.out:
        print(_summary(rows, key))
    return 0


def cmd_bench_linear(args) -> int:
    if args.max_n < 1:
        raise _InputError("--max-n must be >= 1")
    tasks = []
    for n in range(1, args.max_n + 1, args.step):
        for t in range(args.trials):
            s = derive_seed(args.seed, n, t)
            for algo in args.algo:
                tasks.append((algo, gen_linear_array, (n, s), s, "", args.timing, _no_extra))
    return _bench(args, tasks, BENCH_FIELDS, "n")


def cmd_bench_square(args) -> int:
    if args.max_side < 1:
        raise _InputError("--max-side must be >= 1")
    tasks = []
    for side in range(1, args.max_side + 1):
        for t in range(args.trials):
            s = derive_seed(args.seed, side, t)
            for algo in args.algo:
                tasks.append((algo, gen_square_array, (side, s), s, "", args.timing, _square_extra))
    fields = BENCH_FIELDS + ["makespan_per_k", "shearsort_bound", "paper_bound"]
    return _bench(args, tasks, fields, "n")


def cmd_bench_grid(args) -> int:
    tasks = []
    for d in args.densities:
        dens = float(d)
        for k in args.ks:
            for t in range(args.trials):
                s = derive_seed(args.seed, round(dens * 1000), k, t)
                for algo in args.algo:
                    tasks.append((algo, gen_random_grid, (args.width, args.height, dens, k, s),
                                  s, d, args.timing, _no_extra))
    return _bench(args, tasks, BENCH_FIELDS, "k")


def cmd_bench_cycle(args) -> int:
    tasks = []
    for n in args.ns:
        for algo in args.algo:
            tasks.append((algo, gen_cycle_counterexample, (n, True), args.seed, "",
                          args.timing, _cycle_extra))
    return _bench(args, tasks, BENCH_FIELDS + ["optimal"], "n")


COMMANDS = {
    "solve": cmd_solve,
    "validate": cmd_validate,
    "oracle": cmd_oracle,
    "bench-linear": cmd_bench_linear,
    "bench-square": cmd_bench_square,
    "bench-grid": cmd_bench_grid,
    "bench-cycle": cmd_bench_cycle,
}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:  # usage errors and --help
        return int(e.code or 0)
    try:
        return COMMANDS[args.cmd](args)
    except _InputError as e:
        print(str(e), file=sys.stderr)
        return 1
    except PerrError as e:
        print(f"solver error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
