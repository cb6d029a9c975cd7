"""
Clique counting on random graphs
================================

Counts k-cliques with the enumeration engine and double-checks the
small cases against direct subset enumeration.
"""

from warpmine.apps import clique_counting, oracle_clique_count
from warpmine.synth import complete_graph, gnp_random_graph

# sanity: binomial coefficients of a complete graph
k6 = complete_graph(6)
for k in (3, 4, 5, 6):
    print("K6 cliques at k=%d:" % k, clique_counting(k6, k))

print()

g = gnp_random_graph(60, 0.25, seed=7)
print("G(n=60, p=0.25):", g)
for k in (3, 4, 5):
    count = clique_counting(g, k, mode="wc", warps=4)
    print("k=%d cliques: %d" % (k, count))

# the oracle is C(n, k) work, so verify on a smaller instance
small = gnp_random_graph(18, 0.3, seed=11)
for k in (3, 4, 5):
    engine_count = clique_counting(small, k)
    brute = oracle_clique_count(small, k)
    print("n=18 k=%d engine %d oracle %d match %s"
          % (k, engine_count, brute, engine_count == brute))
