"""Modeled execution counters: lockstep instructions and memory transactions.

The engine runs on ordinary CPUs but charges its work to an explicit cost
model so that execution strategies can be compared quantitatively.  Two
counters matter:

* ``lockstep_instructions``: one per issued step.  A lockstep step covers
  every active lane of a warp, so a 32-wide compare is one instruction;
  a scalar loop doing the same work is 32.
* ``load_transactions``: one per contiguous 32-element segment touched by
  a memory access.  Lanes reading neighbouring addresses coalesce into a
  single transaction; strided or scattered reads pay one each.

Only reads of the graph adjacency, the traversal arrays and the extension
arrays are charged.  Bookkeeping scalars (lengths, cursors, flags) are
considered register-resident and free.
"""

from __future__ import annotations

from typing import Iterable

SEGMENT_SIZE = 32


class CoalescenceLedger:
    """Per-warp tally of modeled instructions and memory transactions."""

    __slots__ = ("segment_size", "lockstep_instructions", "load_transactions")

    def __init__(self, segment_size: int = SEGMENT_SIZE):
        if segment_size < 1:
            raise ValueError("segment_size must be positive")
        self.segment_size = segment_size
        self.lockstep_instructions = 0
        self.load_transactions = 0

    def copy(self) -> "CoalescenceLedger":
        out = CoalescenceLedger(self.segment_size)
        out.lockstep_instructions = self.lockstep_instructions
        out.load_transactions = self.load_transactions
        return out

    def __repr__(self):
        return ("CoalescenceLedger(instructions=%d, transactions=%d)"
                % (self.lockstep_instructions, self.load_transactions))


def record_access(ledger: CoalescenceLedger, indices: Iterable[int]) -> int:
    """Charge one load for each distinct segment touched by ``indices``.

    Indices are element offsets into a conceptually flat array; the number
    of transactions is the number of distinct ``index // segment_size``
    values.  Returns the transactions charged.
    """
    s = ledger.segment_size
    segments = {i // s for i in indices}
    ledger.load_transactions += len(segments)
    return len(segments)


def record_span(ledger: CoalescenceLedger, lo: int, hi: int) -> int:
    """Charge a read of the contiguous element range [lo, hi]."""
    if hi < lo:
        return 0
    s = ledger.segment_size
    n = hi // s - lo // s + 1
    ledger.load_transactions += n
    return n


def record_instruction(ledger: CoalescenceLedger, lanes_active: int = 1) -> None:
    """Charge one lockstep step.

    The cost is one regardless of ``lanes_active``: a full-warp step and a
    one-lane (divergent) step both occupy an issue slot.  Scalar execution
    models each element as its own call.
    """
    if lanes_active < 0:
        raise ValueError("lanes_active must be >= 0")
    ledger.lockstep_instructions += 1


def merge(ledgers: Iterable[CoalescenceLedger]) -> CoalescenceLedger:
    out = CoalescenceLedger()
    for led in ledgers:
        out.lockstep_instructions += led.lockstep_instructions
        out.load_transactions += led.load_transactions
    return out


def report(result, baseline=None) -> dict:
    """Flatten a run result into an ordered metric mapping.

    ``result`` is an engine RunResult.  With a ``baseline`` result the
    report appends improvement ratios (baseline / result; above 1.0 means
    the result side did less modeled work).
    """
    out: dict = {}
    out["app"] = result.app
    out["k"] = result.k
    out["mode"] = result.mode
    out["warps"] = result.warps
    out["lane_width"] = result.lane_width
    out["lockstep_instructions"] = result.total_instructions
    out["load_transactions"] = result.total_transactions
    out["instructions_per_warp"] = result.instructions_per_warp
    out["transactions_per_warp"] = result.transactions_per_warp
    out["makespan_ticks"] = result.makespan_ticks
    out["wall_seconds"] = round(result.wall_seconds, 6)
    out["aggregated_subgraphs"] = result.aggregated_total
    out["peak_extension_storage"] = result.peak_extension_storage
    out["rebalance_count"] = result.rebalance_count
    out["migrations"] = result.migrations
    if result.clique_count is not None:
        out["clique_count"] = result.clique_count
    if result.pattern_counts is not None:
        for pid, c in enumerate(result.pattern_counts):
            out["pattern_%d" % pid] = c
    if result.records_emitted is not None:
        out["records_emitted"] = result.records_emitted
    if baseline is not None:
        out["baseline_mode"] = baseline.mode
        out["speedup_load_transactions"] = _ratio(
            baseline.total_transactions, result.total_transactions)
        out["speedup_instructions_per_warp"] = _ratio(
            baseline.instructions_per_warp, result.instructions_per_warp)
    return out


def _ratio(a: float, b: float) -> float:
    if b == 0:
        return float("inf") if a > 0 else 1.0
    return round(a / b, 6)


def render_text(rep: dict) -> str:
    lines = ["%s %s" % (key, _fmt(val)) for key, val in rep.items()]
    return "\n".join(lines) + "\n"


def render_json(rep: dict) -> str:
    import json

    return json.dumps(rep, indent=2, sort_keys=False) + "\n"


def _fmt(val) -> str:
    if isinstance(val, float):
        return "%.6f" % val
    return str(val)
