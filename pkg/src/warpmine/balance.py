"""Coordinator-driven load balancing: monitor, stop, redistribute, resume.

Warps go idle when their stack is empty and the root queue is drained,
while a warp that pulled a heavy root can keep a deep stack of pending
extensions for a long time.  A coordinator polls warp activity between
scheduler rounds; when the active fraction drops below a threshold it
stops everyone at the control boundary (trivial here, since polls run
between rounds), steals pending extensions from busy warps for the idle
ones, and resumes.  Coordinator work is host-side and charges nothing
to the warp ledgers and no scheduler ticks.

A steal takes the lowest-index unconsumed valid extension from the
donor's shallowest pending level l; the thief restarts from
tr = donor.tr[0..l] + [stolen] with nothing generated, which is exactly
the subtree the donor would have explored when popping that entry, so
aggregates are conserved to the subgraph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .canon import extend_bits

ACTIVE = "active"
IDLE = "idle"
STOPPED = "stopped"

CLIQUE_THRESHOLD = 0.40
MOTIF_THRESHOLD = 0.10
DEFAULT_POLL_INTERVAL = 10


@dataclass(frozen=True)
class BalanceConfig:
    """Knobs for the coordinator.

    threshold: rebalance when active/total falls below this fraction.
    poll_interval: scheduler ticks between activity polls.
    """

    threshold: float = CLIQUE_THRESHOLD
    poll_interval: int = DEFAULT_POLL_INTERVAL
    enabled: bool = True

    def __post_init__(self):
        if not 0.0 < self.threshold <= 1.0:
            raise ValueError("threshold must be in (0, 1]")
        if self.poll_interval < 1:
            raise ValueError("poll_interval must be >= 1")


def default_config(app_name: str) -> BalanceConfig:
    """Per-application defaults: cliques drain fast and tolerate more
    imbalance, so they rebalance earlier than motif-style workloads."""
    if app_name == "clique":
        return BalanceConfig(threshold=CLIQUE_THRESHOLD)
    return BalanceConfig(threshold=MOTIF_THRESHOLD)


def should_rebalance(active: int, total: int, cfg: BalanceConfig) -> bool:
    if total <= 0:
        raise ValueError("total warp count must be positive")
    return active / total < cfg.threshold


@dataclass
class Snapshot:
    """Consistent stopped state: every warp at its control boundary."""

    workers: list
    donors: list
    idle: list
    queue: deque
    migrated: int = 0


def stop_consistent(workers) -> Snapshot:
    """Halt all workers and classify them.

    Donors hold at least one pending (unconsumed, valid) extension;
    idle workers have an empty stack.  The scheduler polls between
    rounds, so every worker already sits at a control boundary and
    stopping is immediate.
    """
    donors = []
    idle = []
    for w in workers:
        w.status = STOPPED
        te = w.lanes[0].te
        if te.len == 0:
            idle.append(w)
        elif te.shallowest_pending() is not None:
            donors.append(w)
    ctx = workers[0].lanes[0].ctx
    return Snapshot(workers=list(workers), donors=donors, idle=idle,
                    queue=ctx.queue)


def redistribute(snap: Snapshot) -> Snapshot:
    """Move one pending extension to each idle warp, round-robin over
    donors; conservation: every stolen entry is invalidated at the
    donor and re-rooted at exactly one thief."""
    if not snap.donors or not snap.idle:
        return snap
    donors = deque(snap.donors)
    for thief in snap.idle:
        placed = False
        while donors:
            donor = donors[0]
            te = donor.lanes[0].te
            pos = te.shallowest_pending()
            if pos is None:
                donors.popleft()
                continue
            level, index = pos
            stolen = te.ext[level][index]
            te.ext[level][index] = -1
            _install(thief.lanes[0], te, level, stolen)
            snap.migrated += 1
            donors.rotate(-1)
            placed = True
            break
        if not placed:
            break
    return snap


def _install(lane, donor_te, level: int, stolen: int) -> None:
    """Build the thief's stack: donor prefix through level, plus the
    stolen vertex; only the stolen branch belongs to the thief.

    Inherited levels are marked generated with empty arrays: the
    donor keeps their siblings, so when the thief retreats past the
    stolen vertex it must pop nothing and park instead of re-extending
    the donor's prefix (which would re-enumerate whole subtrees)."""
    te = lane.te
    for lev in range(te.k):
        te.clear_level(lev)
    for j in range(level + 1):
        te.tr[j] = donor_te.tr[j]
        te.bitmap[j] = donor_te.bitmap[j]
        te.generated[j] = True
    te.tr[level + 1] = stolen
    te.len = level + 2
    if te.genedges:
        adjset = lane.ctx.adjset[stolen]
        mask = 0
        for j in range(level + 1):
            if te.tr[j] in adjset:
                mask |= 1 << j
        te.bitmap[level + 1] = extend_bits(donor_te.bitmap[level],
                                           level + 1, mask)


def resume(workers) -> None:
    for w in workers:
        w.status = ACTIVE


class Coordinator:
    """Poll-driven monitor; owns the rebalance statistics.

    One poll cycle: count active warps; if the fraction is below the
    threshold, stop everyone, redistribute, resume.  rebalance_count
    counts triggered cycles; migrations counts moved traversals.
    """

    __slots__ = ("cfg", "rebalance_count", "migrations", "polls")

    def __init__(self, cfg: Optional[BalanceConfig] = None):
        self.cfg = cfg or BalanceConfig()
        self.rebalance_count = 0
        self.migrations = 0
        self.polls = 0

    def due(self, tick: int) -> bool:
        return (self.cfg.enabled and tick > 0
                and tick % self.cfg.poll_interval == 0)

    def poll(self, workers) -> bool:
        """One monitor cycle; True when a rebalance fired."""
        self.polls += 1
        active = sum(1 for w in workers if w.status == ACTIVE)
        if not should_rebalance(active, len(workers), self.cfg):
            return False
        snap = stop_consistent(workers)
        redistribute(snap)
        resume(snap.workers)
        self.rebalance_count += 1
        self.migrations += snap.migrated
        return True
