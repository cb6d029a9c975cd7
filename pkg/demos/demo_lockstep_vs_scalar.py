"""
Lockstep versus scalar execution under the cost model
=====================================================

The engine charges every adjacency read to a ledger: scalar lanes pay
per element, lockstep warps pay per chunk, and memory transactions are
counted per touched 32-element segment.  Same counts, very different
bills.
"""

import time

from warpmine import build_dictionary, metrics, run
from warpmine.apps import clique_app, motif_app
from warpmine.synth import gnp_random_graph


def compare(g, app, warps=4):
    t0 = time.perf_counter()
    dfs = run(g, app, mode="dfs", warps=warps)
    wc = run(g, app, mode="wc", warps=warps)
    wall = time.perf_counter() - t0
    rep = metrics.report(wc, baseline=dfs)
    print("%s k=%d  (%.1fs)" % (app.name, app.k, wall))
    print("  dfs: %12d instructions  %12d transactions"
          % (dfs.total_instructions, dfs.total_transactions))
    print("  wc:  %12d instructions  %12d transactions"
          % (wc.total_instructions, wc.total_transactions))
    print("  ratios: transactions %.2fx, instructions/warp %.2fx"
          % (rep["speedup_load_transactions"],
             rep["speedup_instructions_per_warp"]))
    same = (dfs.clique_count == wc.clique_count
            and dfs.pattern_counts == wc.pattern_counts)
    print("  identical results:", same)


g = gnp_random_graph(500, 0.02, seed=42)
print(g)
print()
compare(g, clique_app(4))
print()
compare(g, motif_app(4, build_dictionary(4)))
