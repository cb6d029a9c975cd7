"""Edge bitmaps, canonical forms, and the pattern dictionary.

A traversal of k vertices induces a subgraph whose edges pack into a
small integer: the edge (v_i, v_j) with j < i and i >= 2 occupies bit
position offset(i) + j, where offset(i) = i(i-1)/2 - 1.  The (v_0, v_1)
edge always exists for a traversal and is not stored, so a k-vertex
bitmap needs k(k-1)/2 - 1 bits: 2 bits at k=3, 5 bits at k=4 (32
possible traversal encodings), 20 bits at k=7.

Bits offset(i)..offset(i)+i-1 form vertex group i, recording which
earlier positions vertex i connects to.  Any bitmap the engine can
produce has every group nonzero, because each appended vertex neighbors
the prefix; such bitmaps are exactly the connected encodings, and any
other value is unreachable.

The canonical form of a bitmap is the minimum bitmap over all k!
position relabelings whose image is itself a valid traversal encoding
(implicit (v_0, v_1) edge present, every group nonzero).  The dictionary
maps every reachable bitmap to a contiguous pattern id shared by its
whole isomorphism class, so pattern counters waste no slots.

Dictionary construction exploits orbits: scanning reachable bitmaps in
ascending order, the first member of an unseen isomorphism class is by
construction the class minimum, and one vectorized pass over the k!
relabelings fills the table for the entire orbit.  That reduces the k=7
build from 2^20 * 5040 relabelings to 853 * 5040.
"""

from __future__ import annotations

import itertools
import struct
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DictionaryFormatError
from .graph import CsrGraph

SENTINEL = 0xFFFFFFFF      # all-ones u32; marks unreachable bitmaps
_MAGIC = b"DMCD"
_VERSION = 1

K_MAX_DEFAULT = 7          # 2^20-entry table; k=8 (2^27, ~0.5 GB) is opt-in
K_MAX_LARGE = 8


def group_offset(i: int) -> int:
    """Bit offset of vertex group i (i >= 2)."""
    return i * (i - 1) // 2 - 1


def stored_bits(k: int) -> int:
    """Number of stored bits for a k-vertex bitmap (k >= 2)."""
    return k * (k - 1) // 2 - 1


@dataclass(frozen=True)
class EdgeBitmap:
    """Edges of an induced traversal: stored bits plus the length k."""
    bits: int
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.k >= 2 and self.bits >> stored_bits(self.k):
            raise ValueError("bits 0x%x exceed %d stored bits for k=%d"
                             % (self.bits, stored_bits(self.k), self.k))
        if self.k < 2 and self.bits:
            raise ValueError("k<2 bitmaps store no bits")


def extend_bits(bits: int, k: int, adjacency_bits: int) -> int:
    """Core of encode_extension on raw ints; engine hot path.

    bits describe a k-vertex traversal; adjacency_bits is the k-bit mask
    of the appended vertex against positions 0..k-1.  Returns the
    (k+1)-vertex bitmap.
    """
    if adjacency_bits == 0:
        raise ValueError("appended vertex must neighbor the traversal (mask is 0)")
    if adjacency_bits >> k:
        raise ValueError("adjacency mask 0x%x wider than k=%d" % (adjacency_bits, k))
    if k == 1:
        # The (v0, v1) edge is implicit; nothing is stored.
        return 0
    return bits | (adjacency_bits << group_offset(k))


def encode_extension(b: EdgeBitmap, adjacency_bits: int) -> EdgeBitmap:
    """Append one vertex to a traversal bitmap.

    Args:
        b: bitmap of the current k-vertex traversal.
        adjacency_bits: k-bit mask, bit j set iff the new vertex is
            adjacent to position j.  Must be nonzero.

    Returns:
        EdgeBitmap for k+1 vertices with the mask placed at group k.
    """
    return EdgeBitmap(extend_bits(b.bits, b.k, adjacency_bits), b.k + 1)


def bitmap_is_valid(bits: int, k: int) -> bool:
    """True iff every vertex group i >= 2 has at least one set bit."""
    for i in range(2, k):
        if not (bits >> group_offset(i)) & ((1 << i) - 1):
            return False
    return True


# ===================================================================
# Relabeling machinery
# ===================================================================
#
# Positions are relabeled by a permutation pi; edges are pairs, so pi
# induces a permutation of edge slots.  We work on the "full" bit set of
# k(k-1)/2 slots where the implicit (v1, v0) edge gets the top slot;
# a relabeled image is a valid encoding iff its top slot is set and
# every stored group is nonzero.

def _full_slot(i: int, j: int, nbits: int) -> int:
    # j < i; the implicit (1, 0) pair maps to the extra top slot.
    if i == 1:
        return nbits
    return group_offset(i) + j


@lru_cache(maxsize=None)
def _relabel_tables(k: int):
    """Per-permutation destination bit masks plus validity masks for k."""
    nbits = stored_bits(k)
    pairs = [(i, j) for i in range(1, k) for j in range(i)]
    perms = list(itertools.permutations(range(k)))
    dst = np.empty((len(perms), nbits + 1), dtype=np.uint64)
    for p, perm in enumerate(perms):
        for (i, j) in pairs:
            a, b = perm[i], perm[j]
            if a < b:
                a, b = b, a
            dst[p, _full_slot(i, j, nbits)] = _full_slot(a, b, nbits)
    dst_masks = np.uint64(1) << dst
    group_shifts = np.array([group_offset(i) for i in range(2, k)], dtype=np.uint64)
    group_widths = np.array([(1 << i) - 1 for i in range(2, k)], dtype=np.uint64)
    return nbits, dst_masks, group_shifts, group_widths


def _valid_encoding_mask(images: np.ndarray, nbits, group_shifts, group_widths) -> np.ndarray:
    """Boolean mask of images that are valid traversal encodings."""
    ok = (images >> np.uint64(nbits)) & np.uint64(1) == 1
    for shift, width in zip(group_shifts, group_widths):
        ok &= (images >> shift) & width != 0
    return ok


def _orbit_images(bits: int, k: int):
    """All k! relabeled images of bits; returns (stored_values, valid_mask)."""
    nbits, dst_masks, group_shifts, group_widths = _relabel_tables(k)
    full = bits | (1 << nbits)
    cols = [s for s in range(nbits + 1) if (full >> s) & 1]
    images = np.bitwise_or.reduce(dst_masks[:, cols], axis=1)
    valid = _valid_encoding_mask(images, nbits, group_shifts, group_widths)
    stored = images & np.uint64((1 << nbits) - 1)
    return stored, valid


def canonical_bits(bits: int, k: int) -> int:
    """Raw-int core of canonical_form."""
    if k < 3:
        raise ValueError("canonical form needs k >= 3, got k=%d" % k)
    if not bitmap_is_valid(bits, k):
        raise ValueError("bitmap 0x%x encodes a disconnected traversal" % bits)
    stored, valid = _orbit_images(bits, k)
    # The identity relabeling is always valid, so the minimum exists.
    return int(stored[valid].min())


def canonical_form(b: EdgeBitmap) -> EdgeBitmap:
    """Minimum bitmap over all valid position relabelings; idempotent."""
    return EdgeBitmap(canonical_bits(b.bits, b.k), b.k)


# ===================================================================
# Canonical-candidate extension rule
# ===================================================================

def is_canonical_candidate(tr: Sequence[int], u: int, g: CsrGraph) -> bool:
    """Decide whether u may canonically extend the traversal tr.

    The rule: u > tr[0], and with i the first position of tr adjacent
    to u, u > tr[j] for every j > i.  Under this rule each connected
    induced subgraph is produced by exactly one traversal.
    """
    if u <= tr[0]:
        return False
    adj = g.adjacency_sets()[u]
    first = -1
    for j, v in enumerate(tr):
        if v in adj:
            first = j
            break
    if first < 0:
        return False  # u not in N(tr); caller violated the precondition
    for j in range(first + 1, len(tr)):
        if u < tr[j]:
            return False
    return True


# ===================================================================
# Dictionary
# ===================================================================

class CanonicalDictionary:
    """Total map from reachable k-vertex bitmaps to contiguous pattern ids.

    table[b] is the pattern id of bitmap b, or SENTINEL when b encodes a
    disconnected (unreachable) traversal.  Pattern ids are assigned by
    ascending canonical bitmap, so id order is stable across runs.
    Immutable after build; safe for concurrent lookups.
    """

    __slots__ = ("k", "table", "pattern_count", "canonical_bitmaps", "_fast")

    def __init__(self, k: int, table: np.ndarray, canonical_bitmaps: list[int]):
        self.k = k
        self.table = table  # np.uint32, length 2^stored_bits(k)
        self.pattern_count = len(canonical_bitmaps)
        self.canonical_bitmaps = canonical_bitmaps
        self._fast = None

    def lookup(self, b: EdgeBitmap) -> int:
        """Pattern id for b, or SENTINEL for unreachable bitmaps. O(1)."""
        if b.k != self.k:
            raise ValueError("bitmap is for k=%d, dictionary for k=%d" % (b.k, self.k))
        return int(self.table[b.bits])

    def fast_table(self):
        """Indexable table with plain-int entries for the engine hot path."""
        if self._fast is None:
            # A Python list beats numpy scalar indexing for k <= 7 sizes;
            # the k=8 table stays numpy to avoid a 134M-element list.
            self._fast = self.table.tolist() if self.k <= K_MAX_DEFAULT else self.table
        return self._fast

    def save(self, path) -> None:
        """Write the bit-exact dictionary file format."""
        with open(path, "wb") as fh:
            fh.write(_MAGIC)
            fh.write(bytes([_VERSION, self.k]))
            fh.write(struct.pack("<Q", len(self.table)))
            fh.write(self.table.astype("<u4").tobytes())
            fh.write(struct.pack("<I", self.pattern_count))
            fh.write(np.asarray(self.canonical_bitmaps, dtype="<u8").tobytes())

    @classmethod
    def load(cls, path) -> "CanonicalDictionary":
        """Read and validate a dictionary file."""
        with open(path, "rb") as fh:
            blob = fh.read()
        if len(blob) < 14:
            raise DictionaryFormatError("file too short (%d bytes)" % len(blob))
        if blob[:4] != _MAGIC:
            raise DictionaryFormatError("bad magic %r" % blob[:4])
        version, k = blob[4], blob[5]
        if version != _VERSION:
            raise DictionaryFormatError("unsupported version %d" % version)
        if not 3 <= k <= K_MAX_LARGE:
            raise DictionaryFormatError("k=%d outside supported range 3..%d" % (k, K_MAX_LARGE))
        (table_len,) = struct.unpack_from("<Q", blob, 6)
        if table_len != 1 << stored_bits(k):
            raise DictionaryFormatError(
                "table length %d inconsistent with k=%d (expected %d)"
                % (table_len, k, 1 << stored_bits(k)))
        pos = 14
        end_table = pos + 4 * table_len
        if len(blob) < end_table + 4:
            raise DictionaryFormatError("truncated table")
        table = np.frombuffer(blob, dtype="<u4", count=table_len, offset=pos).copy()
        (pattern_count,) = struct.unpack_from("<I", blob, end_table)
        end_bitmaps = end_table + 4 + 8 * pattern_count
        if len(blob) != end_bitmaps:
            raise DictionaryFormatError(
                "file size %d inconsistent with pattern_count %d" % (len(blob), pattern_count))
        bitmaps = np.frombuffer(blob, dtype="<u8", count=pattern_count,
                                offset=end_table + 4)
        bitmap_list = [int(b) for b in bitmaps]
        if any(b2 <= b1 for b1, b2 in zip(bitmap_list, bitmap_list[1:])):
            raise DictionaryFormatError("canonical bitmaps not strictly ascending")
        return cls(k, table, bitmap_list)

    def __repr__(self):
        return "CanonicalDictionary(k=%d, patterns=%d)" % (self.k, self.pattern_count)


def _valid_values_ascending(k: int, nbits: int) -> np.ndarray:
    """All reachable bitmap values for k, ascending; chunked for k=8."""
    size = 1 << nbits
    chunk = 1 << 22
    pieces = []
    group_shifts = [np.uint64(group_offset(i)) for i in range(2, k)]
    group_widths = [np.uint64((1 << i) - 1) for i in range(2, k)]
    for start in range(0, size, chunk):
        vals = np.arange(start, min(start + chunk, size), dtype=np.uint64)
        ok = np.ones(len(vals), dtype=bool)
        for shift, width in zip(group_shifts, group_widths):
            ok &= (vals >> shift) & width != 0
        pieces.append(vals[ok])
    return np.concatenate(pieces)


def build_dictionary(k: int, allow_large: bool = False) -> CanonicalDictionary:
    """Build the full pattern dictionary for subgraph size k.

    Args:
        k: subgraph size, 3..7 by default; k=8 needs allow_large (the
            table has 2^27 entries, about half a gigabyte).

    Returns:
        CanonicalDictionary with pattern ids assigned by ascending
        canonical bitmap.  Deterministic.
    """
    if not 3 <= k <= K_MAX_LARGE:
        raise ValueError("dictionary supports 3 <= k <= %d, got k=%d" % (K_MAX_LARGE, k))
    if k > K_MAX_DEFAULT and not allow_large:
        raise ValueError("k=%d needs allow_large=True (2^%d-entry table)"
                         % (k, stored_bits(k)))
    nbits = stored_bits(k)
    table = np.full(1 << nbits, SENTINEL, dtype=np.uint32)
    canonical_bitmaps: list[int] = []
    for b in _valid_values_ascending(k, nbits).tolist():
        if table[b] != SENTINEL:
            continue
        # First unseen member of a class is the class minimum, because
        # the scan is ascending and orbits are closed under relabeling.
        pid = len(canonical_bitmaps)
        canonical_bitmaps.append(b)
        stored, valid = _orbit_images(b, k)
        table[stored[valid]] = pid
    return CanonicalDictionary(k, table, canonical_bitmaps)
