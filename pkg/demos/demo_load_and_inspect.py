"""
Loading a graph and poking at its storage
=========================================

Edge lists are plain text: one "u v" pair per line, comments allowed.
The loader deduplicates, drops self-loops, remaps ids to a dense range
and builds a compressed sparse row structure.
"""

import io

from warpmine import load_edge_list

text = """
# tiny mesh with a pendant vertex
0 1
0 2
1 2
1 3
2 3
3 4
3 4
"""

g = load_edge_list(io.StringIO(text))
print(g)
print("vertices", g.n, "edges", g.m)

# offsets delimit each vertex's slice of the neighbor array
print("offsets  ", g.offsets.tolist())
print("neighbors", g.neighbors_array.tolist())

for v in range(g.n):
    print("N(%d) = %s  degree %d" % (v, g.neighbors(v).tolist(), g.degree(v)))

print("max degree", g.max_degree)
print("has_edge(0, 3) ->", g.has_edge(0, 3))
print("has_edge(2, 3) ->", g.has_edge(2, 3))

# round trip through the serialized form
print(g.to_edge_list().strip() == "\n".join("%d %d" % e for e in g.edges()))
