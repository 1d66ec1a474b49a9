"""Cycle counterexample family: RIP, bubbletree and bubbletree2 against the
optimum lg n + 1."""
import math

from perr import BubbleConfig, bubbletree_solve, rip_solve
from perr.instances import gen_cycle_counterexample

print(f"{'n':>5} {'k':>4} {'optimal':>8} {'rip':>5} {'bubbletree':>11} {'bubbletree2':>12}")
for n in (16, 32, 64, 128, 256):
    inst = gen_cycle_counterexample(n, floor=True)
    print(f"{n:>5} {inst.k:>4} {int(math.log2(n)) + 1:>8} {rip_solve(inst).makespan:>5} "
          f"{bubbletree_solve(inst).makespan:>11} "
          f"{bubbletree_solve(inst, BubbleConfig.bubbletree2()).makespan:>12}")
