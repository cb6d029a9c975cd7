"""Filter-process subgraph enumeration over per-warp traversal stacks.

Exploration is DFS-wide: a breadth step materialises every extension of
the current traversal into a contiguous per-level array, then a depth
step consumes one extension and descends.  A traversal of k-1 vertices
is a leaf; its whole extension array is aggregated in bulk, so the k-th
vertex never lands in the traversal itself.  Space per stack stays
O(max_degree * k^2).

Three execution modes share identical functional results and differ
only in how work maps onto warps and what the cost model charges:

* ``dfs``: every lane of a warp owns an independent stack and runs the
  workflow as scalar code.  Each lane-step costs one instruction; each
  element read costs its own transaction.
* ``wc``: one stack per warp; primitives execute in lockstep over
  lane_width-element chunks.  A chunk step costs one instruction, and a
  chunk read of consecutive elements coalesces into ceil(width/32)
  transactions, while broadcast reads of single elements cost one.
* ``opt``: ``wc`` plus the coordinator from the balance module, polled
  between scheduler rounds.

The scheduler is cooperative: virtual warps advance one workflow
iteration (control, extend, filter/compact, aggregate, move) per tick,
and ``makespan_ticks`` is the modeled wall time.  Functional results
are computed with ordinary Python data structures; the ledger charges
are closed-form equivalents of the per-step simulation, covering reads
of the graph adjacency, the traversal array and the extension arrays
(see the metrics module for the accounting rules).
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from typing import Callable, Optional

from . import aggregate as agg
from . import balance as bal
from .canon import extend_bits
from .errors import CapacityError, InternalInvariantError
from .graph import CsrGraph
from .metrics import CoalescenceLedger

MODES = ("dfs", "wc", "opt")

DEFAULT_WARPS = 4
DEFAULT_LANE_WIDTH = 32


@dataclass(frozen=True)
class Application:
    """Declarative pipeline: what to extend, filter and aggregate.

    ``pipeline`` entries are the built-in filter tags "lower",
    "compact", "clique", "canonical", or ("filter", predicate, args)
    for a user predicate of shape predicate(te, extension, args).
    ``aggregator`` is one of "counter", "pattern", "store".
    """

    name: str
    k: int
    extend_all: bool
    genedges: bool
    pipeline: tuple
    aggregator: str
    dictionary: object = None
    store: object = None
    store_predicate: Optional[Callable] = None

    def __post_init__(self):
        if self.k < 3:
            raise ValueError("need k >= 3")
        if self.aggregator not in ("counter", "pattern", "store"):
            raise ValueError("unknown aggregator %r" % (self.aggregator,))
        if self.aggregator == "pattern" and self.dictionary is None:
            raise ValueError("pattern aggregation requires a dictionary")
        if self.aggregator == "store" and self.store is None:
            raise ValueError("store aggregation requires a StoreBuffer")


class TraversalEnumeration:
    """DFS-wide stack: traversal prefix plus per-level extension arrays.

    Level l holds the extensions of the prefix tr[0..l]; the array in
    play is always ext[len-1].  ``cursor[l]`` is the top-of-stack
    boundary: entries [0, cursor) are unconsumed, and a pop takes the
    highest-index valid one.  Invalid entries hold -1.  ``bitmap[l]``
    is the induced-edge encoding of tr[0..l] (maintained only when
    genedges is on).
    """

    __slots__ = ("k", "len", "tr", "ext", "cursor", "generated",
                 "bitmap", "genedges", "live_storage", "peak_storage")

    def __init__(self, k: int, genedges: bool):
        self.k = k
        self.len = 0
        self.tr = [-1] * k
        self.ext: list = [[] for _ in range(k)]
        self.cursor = [0] * k
        self.generated = [False] * k
        self.bitmap = [0] * k
        self.genedges = genedges
        self.live_storage = 0
        self.peak_storage = 0

    def reset_root(self, v: int) -> None:
        self.len = 1
        self.tr[0] = v
        self.bitmap[0] = 0
        self.clear_level(0)

    def clear_level(self, level: int) -> None:
        self.live_storage -= len(self.ext[level])
        self.ext[level] = []
        self.cursor[level] = 0
        self.generated[level] = False

    def set_level(self, level: int, entries: list) -> None:
        """Install freshly generated extensions; all unconsumed."""
        self.live_storage += len(entries) - len(self.ext[level])
        self.ext[level] = entries
        self.cursor[level] = len(entries)
        self.generated[level] = True
        if self.live_storage > self.peak_storage:
            self.peak_storage = self.live_storage

    def replace_level(self, level: int, entries: list) -> None:
        """Swap the level array in place (compaction); all unconsumed."""
        self.live_storage += len(entries) - len(self.ext[level])
        self.ext[level] = entries
        self.cursor[level] = len(entries)

    def append(self, v: int) -> None:
        self.tr[self.len] = v
        self.len += 1
        self.clear_level(self.len - 1)

    def retreat(self) -> None:
        self.len -= 1

    def shallowest_pending(self):
        """(level, index) of the lowest-index unconsumed valid entry at
        the shallowest level holding one, or None."""
        for level in range(self.len):
            ext = self.ext[level]
            for i in range(self.cursor[level]):
                if ext[i] >= 0:
                    return level, i
        return None


def control(te: TraversalEnumeration) -> bool:
    """Termination test: a zero-length traversal has nothing to do."""
    return te.len > 0


class _Context:
    """Immutable per-run state shared by every lane."""

    __slots__ = ("graph", "app", "adj", "adjset", "row_base", "row_segs",
                 "probe_depth", "max_degree", "queue", "lane_width",
                 "seg", "table")

    def __init__(self, g: CsrGraph, app: Application, lane_width: int,
                 seg: int = 32):
        self.graph = g
        self.app = app
        self.adj = g.adjacency_lists()
        self.adjset = g.adjacency_sets()
        offs = g.offsets.tolist()
        self.row_base = offs[:-1]
        # per-vertex binary-search depth and row segment span
        self.probe_depth = []
        self.row_segs = []
        for v in range(g.n):
            d = offs[v + 1] - offs[v]
            self.probe_depth.append(d.bit_length())
            if d == 0:
                self.row_segs.append(0)
            else:
                self.row_segs.append((offs[v + 1] - 1) // seg
                                     - offs[v] // seg + 1)
        self.max_degree = g.max_degree
        self.queue: deque = deque(range(g.n))
        self.lane_width = lane_width
        self.seg = seg
        self.table = (app.dictionary.fast_table()
                      if app.dictionary is not None else None)


class Lane:
    """One execution stream: a lockstep warp (wc/opt) or a scalar lane (dfs).

    Methods implement the workflow phases; each pairs the functional
    result with its closed-form ledger charge.  ``scalar`` selects the
    per-lane accounting, otherwise chunks of ``lane_width`` extensions
    are modeled as single lockstep steps.
    """

    __slots__ = ("ctx", "te", "warp", "ledger", "scalar")

    def __init__(self, ctx: _Context, warp: "WarpState", scalar: bool):
        self.ctx = ctx
        self.warp = warp
        self.ledger = warp.ledger
        self.scalar = scalar
        self.te = TraversalEnumeration(ctx.app.k, ctx.app.genedges)

    # -- one workflow iteration ------------------------------------------

    def step(self) -> bool:
        """Control through Move once; False when parked with no work."""
        te = self.te
        if te.len == 0:
            queue = self.ctx.queue
            if not queue:
                return False
            te.reset_root(queue.popleft())
            self.ledger.lockstep_instructions += 1
        self.ledger.lockstep_instructions += 1  # control
        app = self.ctx.app
        fresh = self.extend(0, te.len if app.extend_all else 1)
        if fresh:
            for tag in app.pipeline:
                if tag == "lower":
                    self.filter_lower()
                elif tag == "compact":
                    self.compact()
                elif tag == "clique":
                    self.filter_clique()
                elif tag == "canonical":
                    self.filter_canonical()
                else:
                    self.filter(tag[1], tag[2])
        if te.len == app.k - 1:
            self.aggregate()
        self.move_step()
        return True

    # -- extend -----------------------------------------------------------

    def extend(self, begin: int, end: int) -> bool:
        """Materialise the deduplicated neighbourhood of tr[begin..end).

        Returns False (and changes nothing) when the current level was
        already generated.  New entries exclude traversal vertices and
        duplicates, preserving first-seen order.
        """
        te = self.te
        level = te.len - 1
        led = self.ledger
        if te.generated[level]:
            led.lockstep_instructions += 1
            return False
        if not 0 <= begin < end <= te.len:
            raise InternalInvariantError(
                "extend range [%d,%d) outside traversal of length %d"
                % (begin, end, te.len))
        ctx = self.ctx
        adj = ctx.adj
        tr = te.tr
        length = te.len
        tri = {}
        for j in range(length):
            tri[tr[j]] = j
        ext: list = []
        append = ext.append
        seen: dict = {}
        instr = 0
        tx = 0
        if self.scalar:
            for s in range(begin, end):
                for u in adj[tr[s]]:
                    j = tri.get(u)
                    if j is not None:
                        # element load + traversal scan hits at j
                        instr += 2 + j
                        tx += 2 + j
                        continue
                    written = len(ext)
                    instr += 1 + length
                    tx += 1 + length
                    w = seen.get(u)
                    if w is not None:
                        instr += w + 1
                        tx += w + 1
                        continue
                    instr += written + 1
                    tx += written
                    seen[u] = written
                    append(u)
        else:
            width = ctx.lane_width
            seg = ctx.seg
            row_base = ctx.row_base
            for s in range(begin, end):
                src = tr[s]
                row = adj[src]
                d = len(row)
                base = row_base[src]
                for lo in range(0, d, width):
                    hi = lo + width
                    if hi > d:
                        hi = d
                    written = len(ext)
                    # chunk load + per-position membership broadcasts
                    # + coalesced write
                    instr += 2 + length + written
                    tx += ((base + hi - 1) // seg - (base + lo) // seg + 1
                           + length + written)
                    for u in row[lo:hi]:
                        if u in tri or u in seen:
                            continue
                        seen[u] = 1
                        append(u)
        cap = length * ctx.max_degree
        if len(ext) > cap:
            raise CapacityError(
                "level %d holds %d extensions, capacity %d"
                % (level, len(ext), cap))
        te.set_level(level, ext)
        led.lockstep_instructions += instr
        led.load_transactions += tx
        return True

    # -- filters ----------------------------------------------------------

    def filter_lower(self) -> None:
        """Invalidate extensions not above the last traversal vertex."""
        te = self.te
        level = te.len - 1
        ext = te.ext[level]
        n = len(ext)
        if n == 0:
            return
        last = te.tr[te.len - 1]
        for i in range(n):
            if 0 <= ext[i] <= last:
                ext[i] = -1
        led = self.ledger
        if self.scalar:
            led.lockstep_instructions += 3 * n
            led.load_transactions += 2 * n
        else:
            width = self.ctx.lane_width
            seg = self.ctx.seg
            for lo in range(0, n, width):
                hi = min(lo + width, n) - 1
                led.lockstep_instructions += 3
                led.load_transactions += hi // seg - lo // seg + 2

    def filter_clique(self) -> None:
        """Invalidate extensions not adjacent to every traversal vertex.

        Adjacency is probed by binary search in the row of each
        traversal vertex, stopping at the first miss.
        """
        te = self.te
        level = te.len - 1
        ext = te.ext[level]
        n = len(ext)
        if n == 0:
            return
        ctx = self.ctx
        length = te.len
        tr = te.tr
        adjset = ctx.adjset
        depth = ctx.probe_depth
        depths = [depth[tr[j]] for j in range(length)]
        instr = 0
        tx = 0
        if self.scalar:
            for i in range(n):
                e = ext[i]
                instr += 1
                tx += 1
                if e < 0:
                    continue
                eadj = adjset[e]
                for j in range(length):
                    dj = depths[j]
                    instr += 1 + dj
                    tx += 1 + dj
                    if tr[j] not in eadj:
                        ext[i] = -1
                        break
                instr += 1
        else:
            width = ctx.lane_width
            seg = ctx.seg
            segs = [ctx.row_segs[tr[j]] for j in range(length)]
            for lo in range(0, n, width):
                hi = min(lo + width, n)
                instr += 1
                tx += (hi - 1) // seg - lo // seg + 1
                probing = [0] * length  # lanes alive per row
                rmax = 0
                for i in range(lo, hi):
                    e = ext[i]
                    if e < 0:
                        continue
                    eadj = adjset[e]
                    r = 0
                    for j in range(length):
                        r = j + 1
                        probing[j] += 1
                        if tr[j] not in eadj:
                            ext[i] = -1
                            break
                    if r > rmax:
                        rmax = r
                for j in range(rmax):
                    dj = depths[j]
                    instr += 1 + dj
                    tx += 1 + dj * min(probing[j], segs[j])
                instr += 1
        led = self.ledger
        led.lockstep_instructions += instr
        led.load_transactions += tx

    def filter_canonical(self) -> None:
        """Invalidate extensions breaking the canonical-candidate rule.

        Keep e iff e > tr[0] and, with f the first traversal position
        adjacent to e, e exceeds every traversal vertex after f.  The
        row scan stops at f, so probe charges cover rows 0..f.
        """
        te = self.te
        level = te.len - 1
        ext = te.ext[level]
        n = len(ext)
        if n == 0:
            return
        ctx = self.ctx
        length = te.len
        tr = te.tr
        adjset = ctx.adjset
        depth = ctx.probe_depth
        depths = [depth[tr[j]] for j in range(length)]
        t0 = tr[0]
        suffix_max = [0] * length
        m = -1
        for j in range(length - 1, -1, -1):
            suffix_max[j] = m
            if tr[j] > m:
                m = tr[j]
        instr = 0
        tx = 0
        if self.scalar:
            for i in range(n):
                e = ext[i]
                instr += 3  # load + bound check + verdict
                tx += 1
                if e < 0:
                    continue
                if e <= t0:
                    ext[i] = -1
                    continue
                eadj = adjset[e]
                first = -1
                for j in range(length):
                    dj = depths[j]
                    instr += 1 + dj
                    tx += 1 + dj
                    if tr[j] in eadj:
                        first = j
                        break
                if first < 0:
                    raise InternalInvariantError(
                        "extension %d disconnected from traversal" % e)
                if e <= suffix_max[first]:
                    ext[i] = -1
        else:
            width = ctx.lane_width
            seg = ctx.seg
            segs = [ctx.row_segs[tr[j]] for j in range(length)]
            for lo in range(0, n, width):
                hi = min(lo + width, n)
                instr += 3
                tx += (hi - 1) // seg - lo // seg + 1
                probing = [0] * length
                rmax = 0
                for i in range(lo, hi):
                    e = ext[i]
                    if e < 0:
                        continue
                    if e <= t0:
                        ext[i] = -1
                        continue
                    eadj = adjset[e]
                    first = -1
                    for j in range(length):
                        probing[j] += 1
                        if tr[j] in eadj:
                            first = j
                            break
                    if first < 0:
                        raise InternalInvariantError(
                            "extension %d disconnected from traversal" % e)
                    if first + 1 > rmax:
                        rmax = first + 1
                    if e <= suffix_max[first]:
                        ext[i] = -1
                for j in range(rmax):
                    dj = depths[j]
                    instr += 1 + dj
                    tx += 1 + dj * min(probing[j], segs[j])
        led = self.ledger
        led.lockstep_instructions += instr
        led.load_transactions += tx

    def filter(self, predicate: Callable, args=()) -> None:
        """Invalidate extensions failing an arbitrary predicate.

        The predicate sees (te, extension, args).  Its own reads are
        not ledgered; the charge is a flat evaluate step per element
        (scalar) or per chunk (lockstep).
        """
        te = self.te
        level = te.len - 1
        ext = te.ext[level]
        n = len(ext)
        if n == 0:
            return
        for i in range(n):
            e = ext[i]
            if e >= 0 and not predicate(te, e, args):
                ext[i] = -1
        led = self.ledger
        if self.scalar:
            led.lockstep_instructions += 2 * n
            led.load_transactions += n
        else:
            width = self.ctx.lane_width
            seg = self.ctx.seg
            for lo in range(0, n, width):
                hi = min(lo + width, n) - 1
                led.lockstep_instructions += 2
                led.load_transactions += hi // seg - lo // seg + 1

    def compact(self) -> None:
        """Drop invalid entries, preserving order; idempotent."""
        te = self.te
        level = te.len - 1
        ext = te.ext[level]
        n = len(ext)
        if n == 0:
            return
        te.replace_level(level, [e for e in ext if e >= 0])
        led = self.ledger
        if self.scalar:
            led.lockstep_instructions += 2 * n
            led.load_transactions += n
        else:
            width = self.ctx.lane_width
            seg = self.ctx.seg
            for lo in range(0, n, width):
                hi = min(lo + width, n) - 1
                # load + ballot/prefix-sum + coalesced write
                led.lockstep_instructions += 3
                led.load_transactions += hi // seg - lo // seg + 1

    # -- aggregation ------------------------------------------------------

    def aggregate(self) -> None:
        te = self.te
        ctx = self.ctx
        app = ctx.app
        warp = self.warp
        level = te.len - 1
        ext = te.ext[level]
        n = len(ext)
        led = self.ledger
        kind = app.aggregator
        if kind == "counter":
            found = agg.count_valid(te)
            warp.clique_count += found
            warp.leaves += found
            if self.scalar:
                led.lockstep_instructions += n
                led.load_transactions += n
            else:
                width = ctx.lane_width
                seg = ctx.seg
                for lo in range(0, n, width):
                    hi = min(lo + width, n) - 1
                    led.lockstep_instructions += 2
                    led.load_transactions += hi // seg - lo // seg + 1
            return
        if n == 0:
            return
        length = te.len
        tr = te.tr
        depth = ctx.probe_depth
        row_cost = length  # one broadcast per traversal row
        for j in range(length):
            row_cost += depth[tr[j]]
        if kind == "pattern":
            found = agg.aggregate_pattern(te, ctx.table, warp.counts,
                                          ctx.adjset)
            warp.leaves += found
            emitted = 0
        else:
            found = agg.count_valid(te)
            emitted = agg.aggregate_store(te, app.store, ctx.adjset,
                                          app.store_predicate)
            warp.leaves += found
            warp.records_emitted += emitted
        instr = 0
        tx = 0
        if self.scalar:
            instr += n + found * (row_cost + 1) + emitted
            tx += n + found * row_cost
        else:
            width = ctx.lane_width
            seg = ctx.seg
            segs = [ctx.row_segs[tr[j]] for j in range(length)]
            depths = [depth[tr[j]] for j in range(length)]
            for lo in range(0, n, width):
                hi = min(lo + width, n)
                valid = 0
                for i in range(lo, hi):
                    if ext[i] >= 0:
                        valid += 1
                instr += 1
                tx += (hi - 1) // seg - lo // seg + 1
                if valid == 0:
                    continue
                for j in range(length):
                    dj = depths[j]
                    instr += 1 + dj
                    tx += 1 + dj * min(valid, segs[j])
                instr += 1  # encode + classify step
            instr += emitted
        led.lockstep_instructions += instr
        led.load_transactions += tx

    # -- move -------------------------------------------------------------

    def move_step(self) -> None:
        """Descend into one pending extension, else retreat."""
        te = self.te
        led = self.ledger
        app = self.ctx.app
        led.lockstep_instructions += 1
        if te.len != app.k - 1:
            level = te.len - 1
            ext = te.ext[level]
            i = te.cursor[level] - 1
            scanned = 0
            found = -1
            while i >= 0:
                scanned += 1
                if ext[i] >= 0:
                    found = ext[i]
                    break
                i -= 1
            if scanned:
                led.lockstep_instructions += scanned
                led.load_transactions += scanned
            if found >= 0:
                te.cursor[level] = i
                te.append(found)
                if app.genedges:
                    self.induce(found)
                return
            te.cursor[level] = 0
        te.retreat()
        if te.len == 0:
            queue = self.ctx.queue
            if queue:
                te.reset_root(queue.popleft())
                led.lockstep_instructions += 1

    def induce(self, v: int) -> None:
        """Record the edges between a just-appended vertex and the prefix."""
        te = self.te
        ctx = self.ctx
        prefix = te.len - 1
        tr = te.tr
        vadj = ctx.adjset[v]
        depth = ctx.probe_depth
        mask = 0
        total_depth = 0
        max_depth = 0
        for j in range(prefix):
            tj = tr[j]
            if tj in vadj:
                mask |= 1 << j
            dj = depth[tj]
            total_depth += dj
            if dj > max_depth:
                max_depth = dj
        te.bitmap[prefix] = extend_bits(te.bitmap[prefix - 1], prefix, mask)
        led = self.ledger
        if self.scalar:
            led.lockstep_instructions += prefix + total_depth + 1
            led.load_transactions += prefix + total_depth
        else:
            # prefix read coalesces; probes hit one row per lane and do not
            led.lockstep_instructions += 2 + max_depth
            led.load_transactions += 1 + total_depth


class WarpState:
    """Counters and streams owned by one warp."""

    __slots__ = ("warp_id", "mode", "lane_width", "ledger", "lanes",
                 "clique_count", "counts", "leaves", "records_emitted",
                 "status")

    def __init__(self, warp_id: int, mode: str, ctx: _Context):
        self.warp_id = warp_id
        self.mode = mode
        self.lane_width = ctx.lane_width
        self.ledger = CoalescenceLedger(ctx.seg)
        self.clique_count = 0
        self.leaves = 0
        self.records_emitted = 0
        self.status = bal.ACTIVE
        if ctx.app.dictionary is not None:
            self.counts = [0] * ctx.app.dictionary.pattern_count
        else:
            self.counts = None
        n_lanes = ctx.lane_width if mode == "dfs" else 1
        self.lanes = [Lane(ctx, self, mode == "dfs") for _ in range(n_lanes)]

    def step(self) -> bool:
        progressed = False
        for lane in self.lanes:
            if lane.step():
                progressed = True
        self.status = bal.ACTIVE if progressed else bal.IDLE
        return progressed


def run_warp(warp: WarpState) -> None:
    """Drive one warp to completion in isolation (single-warp runs)."""
    while warp.step():
        pass


@dataclass
class RunResult:
    app: str
    k: int
    mode: str
    warps: int
    lane_width: int
    clique_count: Optional[int]
    pattern_counts: Optional[list]
    records_emitted: Optional[int]
    aggregated_total: int
    ledgers: list
    makespan_ticks: int
    wall_seconds: float
    rebalance_count: int
    migrations: int
    peak_extension_storage: int

    @property
    def total_instructions(self) -> int:
        return sum(led.lockstep_instructions for led in self.ledgers)

    @property
    def total_transactions(self) -> int:
        return sum(led.load_transactions for led in self.ledgers)

    @property
    def instructions_per_warp(self) -> float:
        return self.total_instructions / max(1, self.warps)

    @property
    def transactions_per_warp(self) -> float:
        return self.total_transactions / max(1, self.warps)


def run(g: CsrGraph, app: Application, *, mode: str = "wc",
        warps: int = DEFAULT_WARPS, lane_width: int = DEFAULT_LANE_WIDTH,
        balance_config=None) -> RunResult:
    """Enumerate all canonical size-k traversals of g under an application.

    The root queue holds one single-vertex traversal per graph vertex in
    ascending order; warps pull from it as they drain.  In opt mode a
    coordinator polls warp activity between rounds and redistributes
    pending extensions from busy warps to idle ones.
    """
    if mode not in MODES:
        raise ValueError("mode must be one of %s" % (MODES,))
    if warps < 1:
        raise ValueError("need at least one warp")
    if lane_width < 1:
        raise ValueError("need lane_width >= 1")
    if balance_config is not None and mode != "opt":
        raise ValueError("balance configuration only applies to opt mode")
    ctx = _Context(g, app, lane_width)
    warp_list = [WarpState(i, mode, ctx) for i in range(warps)]
    lanes = [lane for w in warp_list for lane in w.lanes]
    coordinator = None
    if mode == "opt":
        cfg = balance_config or bal.default_config(app.name)
        coordinator = bal.Coordinator(cfg)
    start = time.perf_counter()
    tick = 0
    queue = ctx.queue
    while True:
        if not queue and all(lane.te.len == 0 for lane in lanes):
            break
        if coordinator is not None and coordinator.due(tick):
            coordinator.poll(warp_list)
        for warp in warp_list:
            warp.step()
        tick += 1
    wall = time.perf_counter() - start
    clique_count = None
    pattern_counts = None
    records = None
    if app.aggregator == "counter":
        clique_count = sum(w.clique_count for w in warp_list)
    elif app.aggregator == "pattern":
        pattern_counts = agg.reduce_counts(w.counts for w in warp_list)
    else:
        records = sum(w.records_emitted for w in warp_list)
    return RunResult(
        app=app.name,
        k=app.k,
        mode=mode,
        warps=warps,
        lane_width=lane_width,
        clique_count=clique_count,
        pattern_counts=pattern_counts,
        records_emitted=records,
        aggregated_total=sum(w.leaves for w in warp_list),
        ledgers=[w.ledger for w in warp_list],
        makespan_ticks=tick,
        wall_seconds=wall,
        rebalance_count=coordinator.rebalance_count if coordinator else 0,
        migrations=coordinator.migrations if coordinator else 0,
        peak_extension_storage=max(lane.te.peak_storage for lane in lanes),
    )
