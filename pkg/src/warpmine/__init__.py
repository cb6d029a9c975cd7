"""Subgraph enumeration engine with a modeled lockstep execution cost.

The package enumerates connected induced k-vertex subgraphs with a
filter-process workflow over per-warp traversal stacks (DFS-wide
exploration), classifies them by canonical edge bitmaps, and charges
all work to an explicit instruction/memory-transaction model so that
scalar and lockstep execution strategies can be compared.  Reference
applications: clique counting, motif counting, subgraph listing.
"""

from .aggregate import PatternCounter, StoreBuffer, format_record, reduce_counts
from .apps import (clique_counting, complete_subgraph, motif_counting,
                   oracle_clique_count, oracle_counts_by_id,
                   oracle_enumerate, run_clique, run_motifs,
                   subgraph_listing)
from .balance import BalanceConfig, Coordinator, should_rebalance
from .canon import (SENTINEL, CanonicalDictionary, EdgeBitmap,
                    build_dictionary, canonical_bits, canonical_form,
                    encode_extension, is_canonical_candidate)
from .engine import (Application, RunResult, TraversalEnumeration, control,
                     run)
from .errors import (CapacityError, DictionaryFormatError, GraphParseError,
                     InternalInvariantError, StoreShutdownError)
from .graph import CsrGraph, load_edge_list, neighbors
from .metrics import (CoalescenceLedger, record_access, record_instruction,
                      report)
from .synth import (complete_graph, gnp_random_graph, path_graph,
                    star_of_cliques)

__version__ = "0.1.0"

__all__ = [
    "Application",
    "BalanceConfig",
    "CanonicalDictionary",
    "CapacityError",
    "CoalescenceLedger",
    "Coordinator",
    "CsrGraph",
    "DictionaryFormatError",
    "EdgeBitmap",
    "GraphParseError",
    "InternalInvariantError",
    "PatternCounter",
    "RunResult",
    "SENTINEL",
    "StoreBuffer",
    "StoreShutdownError",
    "TraversalEnumeration",
    "build_dictionary",
    "canonical_bits",
    "canonical_form",
    "clique_counting",
    "complete_graph",
    "complete_subgraph",
    "control",
    "encode_extension",
    "format_record",
    "gnp_random_graph",
    "is_canonical_candidate",
    "load_edge_list",
    "motif_counting",
    "neighbors",
    "oracle_clique_count",
    "oracle_counts_by_id",
    "oracle_enumerate",
    "path_graph",
    "record_access",
    "record_instruction",
    "reduce_counts",
    "report",
    "run",
    "run_clique",
    "run_motifs",
    "should_rebalance",
    "star_of_cliques",
    "subgraph_listing",
    "__version__",
]
