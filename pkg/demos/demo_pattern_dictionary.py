"""
Canonical pattern dictionaries
==============================

A k-vertex traversal carries its induced edges in a compact bitmap:
the first edge (v0, v1) is implicit, and each later vertex contributes
one bit per possible edge to its predecessors.  The canonical form of
a bitmap is the minimum over all valid relabelings, and the dictionary
maps every reachable bitmap to the id of its canonical class.
"""

import tempfile

from warpmine import CanonicalDictionary, build_dictionary
from warpmine.canon import canonical_bits, stored_bits

for k in (3, 4, 5, 6):
    d = build_dictionary(k)
    print("k=%d: %2d stored bits, %4d patterns" % (k, stored_bits(k), d.pattern_count))

# k=3 by hand: bit 0 = edge (v2, v0), bit 1 = edge (v2, v1)
d3 = build_dictionary(3)
print()
print("k=3 canonical bitmaps:", [hex(b) for b in d3.canonical_bitmaps])
for bits, name in ((0b01, "path v0-v1, v0-v2"),
                   (0b10, "path v0-v1, v1-v2"),
                   (0b11, "triangle")):
    print("bits %#04x (%s) -> canonical %#04x, id %d"
          % (bits, name, canonical_bits(bits, 3), d3.fast_table()[bits]))

# dictionaries serialize to a small binary file
with tempfile.NamedTemporaryFile(suffix=".dmcd") as fh:
    d4 = build_dictionary(4)
    d4.save(fh.name)
    back = CanonicalDictionary.load(fh.name)
    print()
    print("k=4 round trip: %d patterns, equal %s"
          % (back.pattern_count,
             back.canonical_bitmaps == d4.canonical_bitmaps))
