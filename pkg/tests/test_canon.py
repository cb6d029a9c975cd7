"""Bitmap encoding, canonical relabeling, and the pattern dictionary."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from warpmine import (CanonicalDictionary, CsrGraph, DictionaryFormatError,
                      EdgeBitmap, SENTINEL, build_dictionary, canonical_bits,
                      canonical_form, encode_extension,
                      is_canonical_candidate)
from warpmine.canon import (bitmap_is_valid, extend_bits, group_offset,
                            stored_bits)


# -- independent reference implementation ----------------------------------
# Decodes a bitmap to an adjacency matrix, applies a vertex permutation,
# and re-encodes; used to cross-check the vectorized orbit machinery.

def bits_to_matrix(bits: int, k: int):
    adj = [[False] * k for _ in range(k)]
    adj[0][1] = adj[1][0] = True
    for i in range(2, k):
        for j in range(i):
            if bits >> (group_offset(i) + j) & 1:
                adj[i][j] = adj[j][i] = True
    return adj


def matrix_to_bits(adj, k: int):
    """Encode, or None when the ordering is not a legal traversal."""
    if not adj[0][1]:
        return None
    bits = 0
    for i in range(2, k):
        group = 0
        for j in range(i):
            if adj[i][j]:
                group |= 1 << j
        if group == 0:
            return None
        bits |= group << group_offset(i)
    return bits


def relabel_bits(bits: int, k: int, perm):
    """Bitmap after placing old position perm[a] at new position a."""
    adj = bits_to_matrix(bits, k)
    new = [[adj[perm[a]][perm[b]] for b in range(k)] for a in range(k)]
    return matrix_to_bits(new, k)


def reference_canonical(bits: int, k: int) -> int:
    best = None
    for perm in itertools.permutations(range(k)):
        image = relabel_bits(bits, k, perm)
        if image is not None and (best is None or image < best):
            best = image
    return best


class TestEncoding:
    def test_group_offsets(self):
        assert [group_offset(i) for i in (2, 3, 4)] == [0, 2, 5]

    def test_stored_bits(self):
        assert stored_bits(4) == 5
        assert 1 << stored_bits(4) == 32

    def test_bitmap_range_checked(self):
        EdgeBitmap(0b11111, 4)
        with pytest.raises(ValueError):
            EdgeBitmap(1 << 5, 4)
        with pytest.raises(ValueError):
            EdgeBitmap(-1, 4)

    def test_extension_chain_to_k4(self):
        b2 = EdgeBitmap(0, 2)
        b3 = encode_extension(b2, 0b11)      # triangle
        assert (b3.bits, b3.k) == (0b11, 3)
        b4 = encode_extension(b3, 0b111)     # complete on 4
        assert (b4.bits, b4.k) == (0b11111, 4)

    def test_disconnected_extension_rejected(self):
        with pytest.raises(ValueError):
            encode_extension(EdgeBitmap(0b11, 3), 0)

    def test_validity(self):
        assert bitmap_is_valid(0b01, 3)
        assert bitmap_is_valid(0b10, 3)
        assert not bitmap_is_valid(0b00100, 4)  # group 3 empty


class TestCanonicalForm:
    def test_path_triangle_k3(self):
        assert canonical_bits(0b10, 3) == 0b01
        assert canonical_bits(0b01, 3) == 0b01
        assert canonical_bits(0b11, 3) == 0b11

    def test_invalid_bitmap_rejected(self):
        with pytest.raises(ValueError):
            canonical_bits(0b00, 3)

    def test_wrapper(self):
        out = canonical_form(EdgeBitmap(0b10, 3))
        assert (out.bits, out.k) == (0b01, 3)

    @pytest.mark.parametrize("k", [3, 4, 5])
    def test_matches_reference_exhaustively(self, k):
        for bits in range(1 << stored_bits(k)):
            if not bitmap_is_valid(bits, k):
                continue
            assert canonical_bits(bits, k) == reference_canonical(bits, k)

    def test_idempotent(self):
        for bits in range(1 << stored_bits(4)):
            if bitmap_is_valid(bits, 4):
                c = canonical_bits(bits, 4)
                assert canonical_bits(c, 4) == c


class TestCandidateRule:
    def test_g1_examples(self, g1):
        # first neighbour of 3 in [1, 2] is position 0; nothing after
        assert is_canonical_candidate([1, 2], 3, g1)
        # 0 fails the "above the root" precondition
        assert not is_canonical_candidate([1, 2], 0, g1)
        # 2 attaches at position 0 but is below the later vertex 3
        assert not is_canonical_candidate([1, 3], 2, g1)

    def test_unique_ordering_per_subgraph(self):
        # every connected induced 3-subgraph admits exactly one accepted
        # (root, extension-order) traversal
        g = CsrGraph.from_edges(6, [(0, 1), (0, 2), (1, 2), (1, 3),
                                    (2, 3), (3, 4), (2, 5), (4, 5)])
        accepted = {}
        for combo in itertools.permutations(range(6), 3):
            tr = list(combo)
            # traversal legality: each vertex adjacent to an earlier one
            if not g.has_edge(tr[0], tr[1]):
                continue
            if not (g.has_edge(tr[2], tr[0]) or g.has_edge(tr[2], tr[1])):
                continue
            if is_canonical_candidate(tr[:2], tr[2], g) and \
                    is_canonical_candidate(tr[:1], tr[1], g):
                key = frozenset(combo)
                accepted[key] = accepted.get(key, 0) + 1
        assert accepted and set(accepted.values()) == {1}


class TestDictionary:
    @pytest.mark.parametrize("k,count", [(3, 2), (4, 6), (5, 21)])
    def test_pattern_counts(self, k, count):
        assert build_dictionary(k).pattern_count == count

    def test_k3_table_exact(self, dict3):
        assert dict3.table.tolist() == [SENTINEL, 0, 0, 1]
        assert dict3.canonical_bitmaps == [0b01, 0b11]

    def test_ids_ascend_with_canonical_bitmap(self, dict4):
        bitmaps = dict4.canonical_bitmaps
        assert bitmaps == sorted(bitmaps)
        for pid, bits in enumerate(bitmaps):
            assert dict4.lookup(EdgeBitmap(bits, 4)) == pid

    def test_lookup_unreachable_is_sentinel(self, dict4):
        assert dict4.lookup(EdgeBitmap(0b00100, 4)) == SENTINEL

    def test_lookup_wrong_k_rejected(self, dict4):
        with pytest.raises(ValueError):
            dict4.lookup(EdgeBitmap(0b1, 3))

    def test_orbit_closure_k4(self, dict4):
        table = dict4.table
        for bits in range(1 << stored_bits(4)):
            if not bitmap_is_valid(bits, 4):
                assert table[bits] == SENTINEL
                continue
            for perm in itertools.permutations(range(4)):
                image = relabel_bits(bits, 4, perm)
                if image is not None:
                    assert table[image] == table[bits]

    def test_guards(self):
        with pytest.raises(ValueError):
            build_dictionary(2)
        with pytest.raises(ValueError):
            build_dictionary(9)
        with pytest.raises(ValueError):
            build_dictionary(8)  # needs allow_large


class TestDictionaryFile:
    def test_round_trip(self, tmp_path, dict4):
        path = tmp_path / "p4.dmcd"
        dict4.save(path)
        loaded = CanonicalDictionary.load(path)
        assert loaded.k == 4
        assert loaded.pattern_count == 6
        assert loaded.table.tolist() == dict4.table.tolist()
        assert loaded.canonical_bitmaps == dict4.canonical_bitmaps

    def test_layout_bytes(self, tmp_path, dict3):
        path = tmp_path / "p3.dmcd"
        dict3.save(path)
        blob = path.read_bytes()
        assert blob[:4] == b"DMCD"
        assert blob[4] == 1          # version
        assert blob[5] == 3          # k
        assert int.from_bytes(blob[6:14], "little") == 4   # table length
        # table u32 entries then pattern_count then bitmaps u64
        assert len(blob) == 14 + 4 * 4 + 4 + 8 * 2

    def test_bad_magic(self, tmp_path, dict3):
        path = tmp_path / "bad.dmcd"
        dict3.save(path)
        blob = bytearray(path.read_bytes())
        blob[:4] = b"XXXX"
        path.write_bytes(bytes(blob))
        with pytest.raises(DictionaryFormatError):
            CanonicalDictionary.load(path)

    def test_truncated(self, tmp_path, dict3):
        path = tmp_path / "cut.dmcd"
        dict3.save(path)
        path.write_bytes(path.read_bytes()[:-3])
        with pytest.raises(DictionaryFormatError):
            CanonicalDictionary.load(path)

    def test_bad_version(self, tmp_path, dict3):
        path = tmp_path / "v9.dmcd"
        dict3.save(path)
        blob = bytearray(path.read_bytes())
        blob[4] = 9
        path.write_bytes(bytes(blob))
        with pytest.raises(DictionaryFormatError):
            CanonicalDictionary.load(path)


@given(st.integers(min_value=0, max_value=(1 << 9) - 1),
       st.permutations(list(range(5))))
@settings(max_examples=120, deadline=None)
def test_canonical_invariant_under_relabeling(bits, perm):
    if not bitmap_is_valid(bits, 5):
        return
    image = relabel_bits(bits, 5, list(perm))
    if image is None:
        return
    assert canonical_bits(image, 5) == canonical_bits(bits, 5)
