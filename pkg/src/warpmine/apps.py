"""Reference applications over the enumeration engine, plus the oracle.

Each application is a declarative pipeline:

* clique counting: extend from the first traversal vertex only, keep
  extensions above the last vertex (ascending traversals are the unique
  canonical order for cliques), compact, keep extensions adjacent to
  the whole traversal, count at the leaf.
* motif counting: extend from every traversal vertex, keep canonical
  candidates only, classify each completed subgraph through the
  dictionary at the leaf.
* subgraph listing: the motif pipeline, but completed subgraphs are
  streamed out as records, optionally gated by a predicate.

The oracle enumerates k-subsets directly and is deliberately
independent of the engine: connectivity by union of adjacency, bitmap
built over a greedy traversal order, classification by canonical form.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Optional

from . import engine
from .aggregate import StoreBuffer
from .canon import CanonicalDictionary, canonical_bits, extend_bits, stored_bits
from .graph import CsrGraph

K_MIN = 3
K_MAX = 12

ORACLE_MAX_N = 40
ORACLE_MAX_K = 6


def _check_k(k: int, upper: int = K_MAX) -> None:
    if not K_MIN <= k <= upper:
        raise ValueError("k must be in [%d, %d], got %d" % (K_MIN, upper, k))


def clique_app(k: int) -> engine.Application:
    _check_k(k)
    return engine.Application(
        name="clique", k=k, extend_all=False, genedges=False,
        pipeline=("lower", "compact", "clique"), aggregator="counter")


def motif_app(k: int, dictionary: CanonicalDictionary) -> engine.Application:
    _check_k(k, upper=8)
    if dictionary.k != k:
        raise ValueError("dictionary is for k=%d, run needs k=%d"
                         % (dictionary.k, k))
    return engine.Application(
        name="motifs", k=k, extend_all=True, genedges=True,
        pipeline=("canonical",), aggregator="pattern",
        dictionary=dictionary)


def listing_app(k: int, store: StoreBuffer,
                predicate: Optional[Callable] = None) -> engine.Application:
    _check_k(k)
    return engine.Application(
        name="list", k=k, extend_all=True, genedges=True,
        pipeline=("canonical",), aggregator="store",
        store=store, store_predicate=predicate)


def run_clique(g: CsrGraph, k: int, mode: str = "wc", **kwargs) -> engine.RunResult:
    return engine.run(g, clique_app(k), mode=mode, **kwargs)


def run_motifs(g: CsrGraph, k: int, dictionary: CanonicalDictionary,
               mode: str = "wc", **kwargs) -> engine.RunResult:
    return engine.run(g, motif_app(k, dictionary), mode=mode, **kwargs)


def clique_counting(g: CsrGraph, k: int, mode: str = "wc", **kwargs) -> int:
    """Number of k-cliques in g."""
    return run_clique(g, k, mode, **kwargs).clique_count


def motif_counting(g: CsrGraph, k: int, dictionary: CanonicalDictionary,
                   mode: str = "wc", **kwargs) -> dict:
    """Counts of connected induced k-subgraphs, keyed by pattern id.

    Every id of the dictionary appears, zero-count patterns included.
    """
    result = run_motifs(g, k, dictionary, mode, **kwargs)
    return dict(enumerate(result.pattern_counts))


def subgraph_listing(g: CsrGraph, k: int,
                     predicate: Optional[Callable] = None,
                     mode: str = "wc", *, capacity: int = 1024,
                     sink: Optional[Callable] = None, **kwargs):
    """Stream every connected induced k-subgraph satisfying a predicate.

    The predicate sees (vertices, bits) for the completed subgraph.
    Records are (vertices tuple, bitmap) pairs, produced by the engine
    and drained by a consumer thread with back-pressure.  With the
    default sink the records are collected and returned as a list;
    with an explicit sink the emitted count is returned instead.
    """
    store = StoreBuffer(capacity)
    records: list = []
    consumer = store.start_consumer(sink if sink is not None
                                    else records.append)
    try:
        result = engine.run(g, listing_app(k, store, predicate),
                            mode=mode, **kwargs)
    finally:
        store.close()
        consumer.join(timeout=30.0)
    if store.failed:
        raise RuntimeError("listing sink failed")
    return records if sink is None else result.records_emitted


def complete_subgraph(vertices, bits: int) -> bool:
    """Listing predicate: keep fully connected records only."""
    return bits == (1 << stored_bits(len(vertices))) - 1


def oracle_enumerate(g: CsrGraph, k: int, *, max_n: int = ORACLE_MAX_N,
                     max_k: int = ORACLE_MAX_K):
    """Direct enumeration of connected induced k-subgraphs.

    Returns (counts, subgraphs): counts maps canonical bitmap to the
    number of subgraphs in that class; subgraphs is the set of vertex
    frozensets.  Guarded because the cost is C(n, k).
    """
    if g.n > max_n or k > max_k:
        raise ValueError(
            "oracle guard: n=%d k=%d exceeds n<=%d k<=%d"
            % (g.n, k, max_n, max_k))
    if k < K_MIN:
        raise ValueError("k must be >= %d" % K_MIN)
    adjsets = g.adjacency_sets()
    counts: dict = {}
    subgraphs = set()
    for combo in combinations(range(g.n), k):
        bits = _induced_bits(combo, adjsets)
        if bits is None:
            continue
        cbits = _classify(bits, k)
        counts[cbits] = counts.get(cbits, 0) + 1
        subgraphs.add(frozenset(combo))
    return counts, subgraphs


@lru_cache(maxsize=1 << 16)
def _classify(bits: int, k: int) -> int:
    # raw bitmaps repeat across combinations; the orbit search does not
    return canonical_bits(bits, k)


def _induced_bits(combo, adjsets) -> Optional[int]:
    """Bitmap of the induced subgraph over a greedy traversal order,
    or None when the induced subgraph is disconnected."""
    k = len(combo)
    placed = [combo[0]]
    remaining = list(combo[1:])
    bits = 0
    while remaining:
        picked = None
        mask = 0
        for idx, v in enumerate(remaining):
            vadj = adjsets[v]
            mask = 0
            for j, u in enumerate(placed):
                if u in vadj:
                    mask |= 1 << j
            if mask:
                picked = idx
                break
        if picked is None:
            return None
        v = remaining.pop(picked)
        bits = extend_bits(bits, len(placed), mask)
        placed.append(v)
    return bits


def oracle_counts_by_id(g: CsrGraph, k: int,
                        dictionary: CanonicalDictionary, **kwargs) -> dict:
    """Oracle histogram re-keyed by dictionary pattern id (zeros kept)."""
    counts, _ = oracle_enumerate(g, k, **kwargs)
    pid_of = {bits: pid
              for pid, bits in enumerate(dictionary.canonical_bitmaps)}
    by_id = {pid: 0 for pid in range(dictionary.pattern_count)}
    for cbits, c in counts.items():
        by_id[pid_of[cbits]] = c
    return by_id


def oracle_clique_count(g: CsrGraph, k: int, **kwargs) -> int:
    counts, _ = oracle_enumerate(g, k, **kwargs)
    return counts.get((1 << stored_bits(k)) - 1, 0)
