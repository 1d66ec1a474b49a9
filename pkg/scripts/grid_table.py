"""Random-obstacle 20x15 grids: density x k sweep with every solver,
summarised like a results table (makespan, swaps, runtime)."""
import argparse
import csv
from collections import defaultdict

from perr.cli import main

p = argparse.ArgumentParser()
p.add_argument("--trials", type=int, default=10)
p.add_argument("--seed", type=int, default=0)
p.add_argument("--jobs", type=int, default=4)
p.add_argument("--out", default="grid_table.csv")
a = p.parse_args()

algos = ["rip", "rip-ic", "bubbletree", "bubbletree2"]
main(["bench-grid", "--densities", "0,0.1,0.2,0.3", "--ks", "10,20,30,40,50", "--trials", str(a.trials),
      "--seed", str(a.seed), "--jobs", str(a.jobs), "--algo", ",".join(algos), "--timing", "--out", a.out])
cell = defaultdict(list)
with open(a.out) as f:
    for r in csv.DictReader(f):
        cell[r["density"], int(r["k"]), r["algo"]].append(
            (int(r["makespan"]), int(r["swaps"]), float(r["runtime_ms"])))
print(f"{'dens':>5} {'k':>3} " + "".join(f"{x:>26}" for x in algos))
print(" " * 10 + "".join(f"{'best/avg/worst swaps ms':>26}" for _ in algos))
for d, k in sorted({(d, k) for d, k, _ in cell}, key=lambda x: (float(x[0]), x[1])):
    parts = []
    for x in algos:
        rs = cell[d, k, x]
        ms = [m for m, _, _ in rs]
        parts.append(f"{min(ms)}/{sum(ms) / len(ms):.1f}/{max(ms)} {sum(s for _, s, _ in rs) / len(rs):.0f} "
                     f"{sum(t for _, _, t in rs) / len(rs):.1f}")
    print(f"{d:>5} {k:>3} " + "".join(f"{c:>26}" for c in parts))
