"""Dense square arrays: RIP against shearsort, with makespan / k and the
shearsort bounds (exact and the simplified 2 lg n sqrt(n) curve)."""
import argparse
import csv
from collections import defaultdict

from perr.cli import main

p = argparse.ArgumentParser()
p.add_argument("--max-side", type=int, default=20)
p.add_argument("--trials", type=int, default=5)
p.add_argument("--seed", type=int, default=0)
p.add_argument("--jobs", type=int, default=4)
p.add_argument("--out", default="square_arrays.csv")
a = p.parse_args()

main(["bench-square", "--max-side", str(a.max_side), "--trials", str(a.trials), "--seed", str(a.seed),
      "--jobs", str(a.jobs), "--algo", "rip,rip-ic,shearsort", "--out", a.out])
acc = defaultdict(list)
bounds = {}
with open(a.out) as f:
    for r in csv.DictReader(f):
        acc[r["algo"], int(r["n"])].append(float(r["makespan_per_k"]))
        bounds[int(r["n"])] = (r["shearsort_bound"], r["paper_bound"])
print(f"{'side':>5} {'rip':>8} {'rip-ic':>8} {'shear':>8}  (makespan / k)   bound  paper-curve")
for n in sorted(bounds):
    cells = " ".join(f"{sum(acc[x, n]) / len(acc[x, n]):>8.3f}" for x in ("rip", "rip-ic", "shearsort"))
    print(f"{int(n ** 0.5):>5} {cells}   {bounds[n][0]:>14} {float(bounds[n][1]):>12.1f}")
