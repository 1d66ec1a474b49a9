"""Dense linear arrays: RIP, RIP with inverse chains and odd-even transposition.

Writes a CSV and prints min/avg/max makespan divided by n for each length.
"""
import argparse
import csv
import io
from collections import defaultdict

from perr.cli import main

p = argparse.ArgumentParser()
p.add_argument("--max-n", type=int, default=200)
p.add_argument("--step", type=int, default=10)
p.add_argument("--trials", type=int, default=10)
p.add_argument("--seed", type=int, default=0)
p.add_argument("--jobs", type=int, default=4)
p.add_argument("--out", default="linear_arrays.csv")
a = p.parse_args()

main(["bench-linear", "--max-n", str(a.max_n), "--step", str(a.step), "--trials", str(a.trials),
      "--seed", str(a.seed), "--jobs", str(a.jobs), "--algo", "rip,rip-ic,oddeven", "--out", a.out])
ratio = defaultdict(list)
with open(a.out) as f:
    for r in csv.DictReader(f):
        ratio[r["algo"], int(r["n"])].append(int(r["makespan"]) / int(r["n"]))
buf = io.StringIO()
print(f"{'n':>5} " + " ".join(f"{name:>10}" for name in ("rip", "rip-ic", "oddeven")), file=buf)
for n in sorted({n for _, n in ratio}):
    print(f"{n:>5} " + " ".join(f"{sum(ratio[x, n]) / len(ratio[x, n]):>10.3f}"
                                 for x in ("rip", "rip-ic", "oddeven")), file=buf)
print("average makespan / n")
print(buf.getvalue(), end="")
