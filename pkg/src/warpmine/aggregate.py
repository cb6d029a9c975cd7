"""Leaf aggregation: counters, pattern histograms, and record streaming.

The engine reaches a leaf when a traversal holds k-1 vertices and a fresh
extension array; every valid extension completes one k-vertex subgraph.
Aggregation consumes the whole array in bulk without materialising the
k-th vertex in the traversal.
"""

from __future__ import annotations

import queue
import threading
from typing import Callable, Iterable, Optional

from .canon import SENTINEL, extend_bits
from .errors import InternalInvariantError, StoreShutdownError


class PatternCounter:
    """Dense per-pattern counter addressed by dictionary id."""

    __slots__ = ("counts",)

    def __init__(self, pattern_count: int):
        if pattern_count < 1:
            raise ValueError("pattern_count must be positive")
        self.counts = [0] * pattern_count

    def add(self, pattern_id: int, amount: int = 1) -> None:
        self.counts[pattern_id] += amount

    def total(self) -> int:
        return sum(self.counts)

    def __len__(self):
        return len(self.counts)


def reduce_counts(parts: Iterable) -> list:
    """Sum per-warp counters into one histogram.

    Accepts PatternCounter instances or plain sequences; all parts must
    share one length.
    """
    out: Optional[list] = None
    for part in parts:
        row = part.counts if isinstance(part, PatternCounter) else list(part)
        if out is None:
            out = list(row)
        else:
            if len(row) != len(out):
                raise ValueError("counter length mismatch")
            for i, v in enumerate(row):
                out[i] += v
    return [] if out is None else out


# ---------------------------------------------------------------------------
# record streaming

_CLOSED = object()


def format_record(vertices, bits: int) -> str:
    """Render one emitted subgraph: ascending vertex ids then bitmap hex."""
    return "%s 0x%x" % (" ".join(str(v) for v in sorted(vertices)), bits)


class StoreBuffer:
    """Bounded producer/consumer channel for emitted subgraph records.

    Producers (the engine) block when the buffer is full, so enumeration
    advances no faster than the consumer drains.  ``start_consumer`` runs
    the sink on a separate thread; if the sink raises, producers get a
    StoreShutdownError on their next put instead of blocking forever.
    """

    def __init__(self, capacity: int = 1024):
        if capacity < 1:
            raise ValueError("capacity must be positive")
        self.capacity = capacity
        self._q: queue.Queue = queue.Queue(maxsize=capacity)
        self._failed = False
        self._closed = False
        self._thread: Optional[threading.Thread] = None
        self.consumed = 0

    def put(self, record) -> None:
        if self._closed:
            raise StoreShutdownError("store buffer already closed")
        while True:
            if self._failed:
                raise StoreShutdownError("store consumer terminated")
            try:
                self._q.put(record, timeout=0.05)
                return
            except queue.Full:
                continue

    def close(self) -> None:
        """Signal end of stream; idempotent."""
        if not self._closed:
            self._closed = True
            self._q.put(_CLOSED)

    def drain(self, sink: Callable) -> int:
        """Consume records until close, applying ``sink`` to each."""
        n = 0
        while True:
            item = self._q.get()
            if item is _CLOSED:
                return n
            try:
                sink(item)
            except BaseException:
                self._failed = True
                raise
            n += 1
            self.consumed = n

    def start_consumer(self, sink: Callable) -> threading.Thread:
        if self._thread is not None:
            raise RuntimeError("consumer already started")

        def _run():
            try:
                self.drain(sink)
            except BaseException:
                pass

        t = threading.Thread(target=_run, name="store-consumer", daemon=True)
        self._thread = t
        t.start()
        return t

    def join(self, timeout: float = 30.0) -> None:
        """Close the stream and wait for the consumer to finish."""
        self.close()
        if self._thread is not None:
            self._thread.join(timeout=timeout)
            if self._thread.is_alive():
                raise StoreShutdownError("store consumer failed to drain")

    @property
    def failed(self) -> bool:
        return self._failed


# ---------------------------------------------------------------------------
# functional aggregation over a traversal stack at the leaf level
#
# These helpers compute results only; the engine charges the cost model
# separately in closed form.

def count_valid(te) -> int:
    level = te.len - 1
    return sum(1 for e in te.ext[level] if e >= 0)


def adjacency_mask(tr, length: int, adj_set) -> int:
    """Bit j set iff tr[j] is adjacent to the candidate owning adj_set."""
    mask = 0
    for j in range(length):
        if tr[j] in adj_set:
            mask |= 1 << j
    return mask


def aggregate_counter(te) -> int:
    """Count the valid extensions closing a subgraph at this leaf."""
    return count_valid(te)


def aggregate_pattern(te, table, counts: list, adj_sets) -> int:
    """Classify each completed subgraph and bump its pattern counter.

    ``table`` maps a full (k-vertex) bitmap to a dictionary id; ``counts``
    is indexed by that id.  Returns the number classified.
    """
    level = te.len - 1
    length = te.len
    tr = te.tr
    base = te.bitmap[level]
    done = 0
    for e in te.ext[level]:
        if e < 0:
            continue
        mask = adjacency_mask(tr, length, adj_sets[e])
        bits = extend_bits(base, length, mask)
        pid = table[bits]
        if pid == SENTINEL:
            raise InternalInvariantError(
                "completed subgraph mapped to an unreachable bitmap")
        counts[pid] += 1
        done += 1
    return done


def aggregate_store(te, buf: StoreBuffer, adj_sets,
                    predicate: Optional[Callable] = None) -> int:
    """Emit one record per completed subgraph, optionally filtered.

    Records are (vertices tuple, full bitmap) pairs.  The predicate, if
    given, sees (vertices, bits) and gates emission; it does not affect
    the traversal itself.
    """
    level = te.len - 1
    length = te.len
    tr = te.tr
    base = te.bitmap[level]
    emitted = 0
    prefix = tuple(tr[:length])
    for e in te.ext[level]:
        if e < 0:
            continue
        mask = adjacency_mask(tr, length, adj_sets[e])
        bits = extend_bits(base, length, mask)
        vertices = prefix + (e,)
        if predicate is not None and not predicate(vertices, bits):
            continue
        buf.put((vertices, bits))
        emitted += 1
    return emitted
