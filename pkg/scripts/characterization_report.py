"""Compare the closed-form swap predicates with the brute-force oracles on
every connected graph up to --max-nodes nodes, with and without detours, and
print a few smallest disagreements."""
import argparse
import time
from collections import Counter

import networkx as nx

from perr.graph import Graph
from perr.swaps import characterization_discrepancies

p = argparse.ArgumentParser()
p.add_argument("--max-nodes", type=int, default=6)
p.add_argument("--examples", type=int, default=3)
a = p.parse_args()

graphs = [Graph.from_edges(G.number_of_nodes(), G.edges()) for G in nx.graph_atlas_g()[1:]
          if G.number_of_nodes() <= a.max_nodes and nx.is_connected(G)]
for detours in (False, True):
    t0 = time.perf_counter()
    checked, kinds, examples = 0, Counter(), []
    for g in graphs:
        c, bad = characterization_discrepancies(g, detours, budget=10 ** 7)
        checked += c
        for d in bad:
            kinds[f"{d.predicate} closed-form={d.closed_form} oracle={d.oracle}"] += 1
            if len(examples) < a.examples:
                examples.append((g.edges(), d))
    print(f"detours={detours}: {len(graphs)} graphs, {checked} path pairs, "
          f"{sum(kinds.values())} mismatches in {time.perf_counter() - t0:.1f}s")
    for kind, cnt in kinds.most_common():
        print(f"  {cnt:>7}  {kind}")
    for edges, d in examples:
        print(f"  e.g. edges={edges} pa={d.pa} pb={d.pb} {d.predicate}: "
              f"closed-form {d.closed_form}, oracle {d.oracle}")
