"""Leaf aggregation primitives, counter reduction, and the store channel."""

import threading
import time

import pytest

from warpmine import (InternalInvariantError, PatternCounter, StoreBuffer,
                      StoreShutdownError, build_dictionary, reduce_counts, run)
from warpmine.aggregate import (adjacency_mask, aggregate_counter,
                                aggregate_pattern, aggregate_store,
                                count_valid, format_record)
from warpmine.apps import clique_app, motif_app
from warpmine.engine import TraversalEnumeration
from warpmine.graph import CsrGraph


def leaf_te(tr, ext, k=3, genedges=True, base_bits=0):
    """Build a traversal parked at the aggregation level len = k-1."""
    te = TraversalEnumeration(k, genedges)
    te.reset_root(tr[0])
    for v in tr[1:]:
        te.set_level(te.len - 1, [v])
        te.append(v)
    te.bitmap[te.len - 1] = base_bits
    te.set_level(te.len - 1, list(ext))
    assert te.len == k - 1
    return te


class TestPatternCounter:

    def test_add_and_total(self):
        c = PatternCounter(3)
        c.add(0)
        c.add(2, 5)
        assert c.counts == [1, 0, 5]
        assert c.total() == 6
        assert len(c) == 3

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            PatternCounter(0)


class TestReduce:

    def test_elementwise_sum(self):
        assert reduce_counts([[0, 2], [0, 3]]) == [0, 5]

    def test_single_part_is_identity(self):
        assert reduce_counts([[4, 1, 7]]) == [4, 1, 7]

    def test_accepts_counter_objects(self):
        a = PatternCounter(2)
        a.add(1, 2)
        b = PatternCounter(2)
        b.add(1, 3)
        assert reduce_counts([a, b]) == [0, 5]

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            reduce_counts([[1, 2], [1]])

    def test_no_parts(self):
        assert reduce_counts([]) == []

    def test_partitioning_independence(self, g1, dict3):
        # same histogram no matter how roots are spread over warps
        observed = {tuple(run(g1, motif_app(3, dict3), mode="wc",
                              warps=w).pattern_counts)
                    for w in (1, 2, 4, 8)}
        assert observed == {(4, 2)}


class TestCounterAggregation:

    def test_counts_valid_extensions(self, g1):
        te = leaf_te([0, 1], [2], genedges=False)
        assert aggregate_counter(te) == 1

    def test_empty_extensions(self, g1):
        te = leaf_te([0, 1], [], genedges=False)
        assert aggregate_counter(te) == 0

    def test_ignores_invalidated_slots(self):
        te = leaf_te([0, 1], [2, -1, 5, -1], genedges=False)
        assert count_valid(te) == 2

    def test_k5_complete_graph_run(self):
        g = CsrGraph.from_edges(5, [(i, j) for i in range(5)
                                    for j in range(i + 1, 5)])
        r = run(g, clique_app(4), mode="wc", warps=2)
        assert r.clique_count == 5


class TestPatternAggregation:

    def test_triangle_classified(self, g1, dict3):
        te = leaf_te([0, 1], [2])
        counts = [0, 0]
        done = aggregate_pattern(te, dict3.fast_table(), counts,
                                 g1.adjacency_sets())
        assert done == 1
        assert counts == [0, 1]

    def test_path_classified(self, g1, dict3):
        te = leaf_te([1, 3], [4])
        counts = [0, 0]
        aggregate_pattern(te, dict3.fast_table(), counts,
                          g1.adjacency_sets())
        assert counts == [1, 0]

    def test_whole_extension_array_in_one_call(self, g1, dict3):
        # tr=[1,2]: 0 closes a triangle, 4 is adjacent to neither
        te = leaf_te([1, 2], [0, 3])
        counts = [0, 0]
        done = aggregate_pattern(te, dict3.fast_table(), counts,
                                 g1.adjacency_sets())
        assert done == 2
        assert counts == [0, 2]

    def test_disconnected_extension_rejected_by_encoder(self, g1, dict3):
        te = leaf_te([0, 1], [4])
        with pytest.raises(ValueError):
            aggregate_pattern(te, dict3.fast_table(), [0, 0],
                              g1.adjacency_sets())

    def test_unreachable_bitmap_is_an_invariant_breach(self, g1, dict4):
        # prefix bitmap corrupted to encode a disconnected third vertex;
        # the completed bitmap then maps to no dictionary entry
        te = leaf_te([0, 1, 3], [2], k=4, base_bits=0)
        with pytest.raises(InternalInvariantError):
            aggregate_pattern(te, dict4.fast_table(),
                              [0] * dict4.pattern_count,
                              g1.adjacency_sets())

    def test_k4_run_all_triangles(self):
        g = CsrGraph.from_edges(4, [(i, j) for i in range(4)
                                    for j in range(i + 1, 4)])
        d = build_dictionary(3)
        r = run(g, motif_app(3, d), mode="wc")
        assert r.pattern_counts == [0, 4]

    def test_clique_count_matches_complete_pattern_entry(self, g1, dict3):
        cliques = run(g1, clique_app(3), mode="wc").clique_count
        motifs = run(g1, motif_app(3, dict3), mode="wc").pattern_counts
        assert cliques == motifs[1] == 2


class TestAdjacencyMask:

    def test_mask_bits_follow_traversal_positions(self, g1):
        adj = g1.adjacency_sets()
        assert adjacency_mask([0, 1, -1], 2, adj[2]) == 0b11
        assert adjacency_mask([1, 3, -1], 2, adj[4]) == 0b10
        assert adjacency_mask([0, 1, -1], 2, adj[4]) == 0


class TestStoreAggregation:

    def test_emits_one_record_per_valid_extension(self, g1):
        te = leaf_te([0, 1], [2, 3])
        buf = StoreBuffer(capacity=8)
        emitted = aggregate_store(te, buf, g1.adjacency_sets())
        assert emitted == 2
        got = []
        buf.close()
        buf.drain(got.append)
        assert [(v, bits) for v, bits in got] == [((0, 1, 2), 0b11),
                                                  ((0, 1, 3), 0b10)]

    def test_empty_extensions_enqueue_nothing(self, g1):
        te = leaf_te([0, 1], [])
        buf = StoreBuffer(capacity=4)
        assert aggregate_store(te, buf, g1.adjacency_sets()) == 0

    def test_predicate_gates_emission_only(self, g1):
        te = leaf_te([0, 1], [2, 3])
        buf = StoreBuffer(capacity=4)
        emitted = aggregate_store(te, buf, g1.adjacency_sets(),
                                  predicate=lambda v, bits: bits == 0b11)
        assert emitted == 1
        # traversal state untouched by the predicate
        assert te.ext[1] == [2, 3]


class TestStoreBuffer:

    def test_capacity_validated(self):
        with pytest.raises(ValueError):
            StoreBuffer(capacity=0)

    def test_drain_counts_records(self):
        buf = StoreBuffer(capacity=4)
        for i in range(3):
            buf.put(i)
        buf.close()
        got = []
        assert buf.drain(got.append) == 3
        assert got == [0, 1, 2]
        assert buf.consumed == 3

    def test_close_idempotent(self):
        buf = StoreBuffer(capacity=2)
        buf.put("a")
        buf.close()
        buf.close()
        got = []
        assert buf.drain(got.append) == 1

    def test_put_after_close_rejected(self):
        buf = StoreBuffer(capacity=2)
        buf.close()
        with pytest.raises(StoreShutdownError):
            buf.put("late")

    def test_back_pressure_blocks_producer_without_loss(self):
        buf = StoreBuffer(capacity=1)
        gate = threading.Event()
        received = []

        def sink(rec):
            gate.wait(5.0)
            received.append(rec)

        buf.start_consumer(sink)
        producer = threading.Thread(
            target=lambda: [buf.put(i) for i in range(4)])
        producer.start()
        producer.join(0.3)
        assert producer.is_alive()  # stalled on the full buffer
        gate.set()
        producer.join(5.0)
        assert not producer.is_alive()
        buf.join()
        assert received == [0, 1, 2, 3]
        assert buf.consumed == 4

    def test_dead_consumer_fails_producer(self):
        buf = StoreBuffer(capacity=1)

        def sink(rec):
            raise RuntimeError("sink exploded")

        buf.start_consumer(sink)
        with pytest.raises(StoreShutdownError):
            for i in range(100):
                buf.put(i)
                time.sleep(0.01)
        assert buf.failed

    def test_second_consumer_rejected(self):
        buf = StoreBuffer(capacity=1)
        buf.start_consumer(lambda rec: None)
        with pytest.raises(RuntimeError):
            buf.start_consumer(lambda rec: None)
        buf.join()


class TestRecordFormat:

    def test_vertices_sorted_then_hex(self):
        assert format_record((3, 1, 2), 0b11) == "1 2 3 0x3"

    def test_hex_lowercase(self):
        assert format_record((0, 5), 255) == "0 5 0xff"
