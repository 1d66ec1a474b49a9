"""Nested-bottleneck family: inverse chains under each chain policy against
plain RIP and a swap-first phase order."""
from perr.instances import gen_nested_bottleneck
from perr.rip import ADVANCE, CYCLE, SWAP, ChainPolicy, Mode, RipConfig, rip_solve

print(f"{'k':>4} {'rip':>5} {'swap-first':>11} " + " ".join(f"{p.value:>15}" for p in ChainPolicy)
      + f" {'3k':>5} {'k(k-1)/2':>9}")
for k in (5, 10, 20, 40):
    inst = gen_nested_bottleneck(k)
    swap_first = rip_solve(inst, RipConfig(phase_order=(SWAP, ADVANCE, CYCLE))).makespan
    ic = [rip_solve(inst, RipConfig(mode=Mode.INVERSE_CHAINS, chain_policy=p)).makespan for p in ChainPolicy]
    print(f"{k:>4} {rip_solve(inst).makespan:>5} {swap_first:>11} " + " ".join(f"{m:>15}" for m in ic)
          + f" {3 * k:>5} {k * (k - 1) // 2:>9}")
