"""
Work stealing on an adversarial workload
========================================

A star of cliques hides nearly all the work under a handful of roots:
the hub neighbors every blob, so whichever warps pull those roots
inherit huge subtrees while the rest go idle.  The coordinator notices
the idle fraction, stops everyone at a consistent state, and hands
pending extensions to the starved warps.
"""

from warpmine import run
from warpmine.apps import clique_app
from warpmine.balance import BalanceConfig
from warpmine.synth import star_of_cliques

g = star_of_cliques(blobs=6, blob_size=7)
print(g, "- hub vertex 0 plus 6 complete blobs of 7")

wc = run(g, clique_app(5), mode="wc", warps=8)
opt = run(g, clique_app(5), mode="opt", warps=8)

print()
print("wc:  %4d ticks, %d cliques" % (wc.makespan_ticks, wc.clique_count))
print("opt: %4d ticks, %d cliques, %d rebalances, %d migrated traversals"
      % (opt.makespan_ticks, opt.clique_count, opt.rebalance_count,
         opt.migrations))
print("speedup %.2fx, counts equal %s"
      % (wc.makespan_ticks / opt.makespan_ticks,
         wc.clique_count == opt.clique_count))

# a paranoid coordinator rebalances at every tick; aggregates must
# still be conserved exactly
hot = BalanceConfig(threshold=1.0, poll_interval=1)
stress = run(g, clique_app(5), mode="opt", warps=8, balance_config=hot)
print()
print("threshold=1.0 poll=1: %d rebalances, %d migrations, cliques %d (equal %s)"
      % (stress.rebalance_count, stress.migrations, stress.clique_count,
         stress.clique_count == wc.clique_count))
