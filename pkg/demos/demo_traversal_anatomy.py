"""
Anatomy of one enumeration step
===============================

Drives the workflow phases by hand on a five-vertex graph to show what
the per-level stack looks like: extensions materialized in bulk, pruned
in place with -1, compacted, and consumed highest-index first.
"""

from warpmine import engine
from warpmine.apps import clique_app
from warpmine.graph import CsrGraph

g = CsrGraph.from_edges(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)])
ctx = engine._Context(g, clique_app(3), lane_width=32)
warp = engine.WarpState(0, "wc", ctx)
lane = warp.lanes[0]
te = lane.te


def show(stage):
    level = te.len - 1
    print("%-28s tr=%-8s ext[%d]=%s cursor=%d"
          % (stage, te.tr[:te.len], level, te.ext[level], te.cursor[level]))


te.reset_root(ctx.queue.popleft())
show("root pulled")

lane.extend(0, 1)          # neighborhood of tr[0]
show("extend")

lane.filter_lower()        # keep ids above the last traversal vertex
show("filter lower")

lane.compact()
show("compact")

lane.filter_clique()       # keep extensions adjacent to all of tr
show("filter clique")

lane.move_step()           # consume the highest-index valid entry
show("move (descend)")

lane.extend(0, 1)
show("extend (leaf)")

lane.filter_lower()        # 1 < 2: pruned in place, not removed
show("filter lower (leaf)")

lane.compact()
show("compact (leaf)")

# Nothing survives here: cliques are enumerated in ascending vertex
# order, so {0,1,2} is reachable only through the traversal [0,1,2].
# Finish the run with whole workflow iterations.
while lane.step():
    pass

print()
print("run complete: %d cliques found" % warp.clique_count)
print("ledger:", lane.ledger)
