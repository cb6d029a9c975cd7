"""Undirected simple graphs in compressed-sparse-row form.

The CSR layout keeps each vertex's adjacency contiguous and sorted
ascending: ``neighbors[offsets[v]:offsets[v+1]]`` is the adjacency of
``v``.  Graphs are immutable after construction and safe for
unsynchronized concurrent reads; all mining state lives outside the
graph.

Two construction paths exist: :func:`load_edge_list` parses whitespace
edge-list text (remapping vertex ids to a contiguous range), while
:meth:`CsrGraph.from_edges` builds from an explicit vertex count and
edge iterable without remapping, which permits isolated vertices.
"""

from __future__ import annotations

import io
import os
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import GraphParseError

_COMMENT_PREFIXES = ("#", "%")


class CsrGraph:
    """Immutable undirected simple graph in CSR layout."""

    __slots__ = ("n", "m", "offsets", "neighbors_array", "max_degree",
                 "_adj_lists", "_adj_sets")

    def __init__(self, n: int, offsets: np.ndarray, neighbors: np.ndarray):
        # Internal constructor; use from_edges or load_edge_list.
        self.n = n                      # vertex count
        self.m = len(neighbors) // 2    # undirected edge count
        self.offsets = offsets          # n+1 cumulative indices
        self.neighbors_array = neighbors
        degs = offsets[1:] - offsets[:-1]
        self.max_degree = int(degs.max()) if n > 0 else 0
        self._adj_lists = None
        self._adj_sets = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "CsrGraph":
        """Build a graph on vertices 0..n-1 from an edge iterable.

        Duplicate edges and self-loops are dropped.  Vertex ids are not
        remapped, so isolated vertices are representable.
        """
        if n < 1:
            raise ValueError("graph needs at least one vertex, got n=%d" % n)
        pairs = []
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError("edge (%d, %d) outside vertex range 0..%d" % (u, v, n - 1))
            if u == v:
                continue
            pairs.append((u, v) if u < v else (v, u))
        return cls._from_normalized(n, pairs)

    @classmethod
    def _from_normalized(cls, n: int, pairs: Sequence[tuple[int, int]]) -> "CsrGraph":
        # pairs hold u < v with self-loops already removed; dedup here.
        if pairs:
            arr = np.array(sorted(set(pairs)), dtype=np.int64).reshape(-1, 2)
            src = np.concatenate([arr[:, 0], arr[:, 1]])
            dst = np.concatenate([arr[:, 1], arr[:, 0]])
        else:
            src = np.empty(0, dtype=np.int64)
            dst = np.empty(0, dtype=np.int64)
        counts = np.bincount(src, minlength=n)
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=offsets[1:])
        order = np.lexsort((dst, src))
        neighbors = dst[order]
        return cls(n, offsets, neighbors)

    def neighbors(self, v: int) -> np.ndarray:
        """Ascending adjacency slice of v (a read-only view)."""
        if not (0 <= v < self.n):
            raise ValueError("vertex %d out of range 0..%d" % (v, self.n - 1))
        return self.neighbors_array[self.offsets[v]:self.offsets[v + 1]]

    def degree(self, v: int) -> int:
        if not (0 <= v < self.n):
            raise ValueError("vertex %d out of range 0..%d" % (v, self.n - 1))
        return int(self.offsets[v + 1] - self.offsets[v])

    def adjacency_lists(self) -> list[list[int]]:
        """Plain-list adjacency, cached; the engine's hot loops use this."""
        if self._adj_lists is None:
            flat = self.neighbors_array.tolist()
            off = self.offsets.tolist()
            self._adj_lists = [flat[off[v]:off[v + 1]] for v in range(self.n)]
        return self._adj_lists

    def adjacency_sets(self) -> list[set[int]]:
        """Per-vertex neighbor sets, cached; O(1) membership tests."""
        if self._adj_sets is None:
            self._adj_sets = [set(a) for a in self.adjacency_lists()]
        return self._adj_sets

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency_sets()[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each undirected edge once as (u, v) with u < v, sorted."""
        offsets = self.offsets
        neighbors = self.neighbors_array
        for u in range(self.n):
            for v in neighbors[offsets[u]:offsets[u + 1]]:
                v = int(v)
                if u < v:
                    yield (u, v)

    def to_edge_list(self) -> str:
        """Serialize as sorted edge-list text; inverse of load_edge_list."""
        return "".join("%d %d\n" % e for e in self.edges())

    def validate(self) -> None:
        """Check all CSR invariants; raises AssertionError on violation."""
        assert self.offsets[0] == 0 and self.offsets[-1] == 2 * self.m
        assert np.all(np.diff(self.offsets) >= 0), "offsets must be non-decreasing"
        sets = self.adjacency_sets()
        for u in range(self.n):
            adj = self.neighbors(u)
            if len(adj) > 0:
                assert np.all(np.diff(adj) > 0), "adjacency of %d not strictly ascending" % u
                assert u not in sets[u], "self-loop at %d" % u
            for v in adj:
                assert u in sets[int(v)], "edge (%d,%d) not symmetric" % (u, v)

    def __repr__(self):
        return "CsrGraph(n=%d, m=%d, max_degree=%d)" % (self.n, self.m, self.max_degree)


def load_edge_list(source) -> CsrGraph:
    """Parse whitespace-separated edge-list text into a CsrGraph.

    Args:
        source: a filesystem path, a text stream, or an iterable of lines.
            Each data line holds two integer tokens; lines starting with
            '#' or '%' (and blank lines) are skipped.

    Returns:
        CsrGraph with vertex ids remapped to 0..n-1 preserving the
        ascending order of the original ids; duplicate edges and
        self-loops dropped.

    Raises:
        GraphParseError: malformed token (with line number) or no edges.
    """
    if isinstance(source, (str, bytes, os.PathLike)):
        with open(source, "r", encoding="utf-8") as fh:
            return _parse_lines(fh)
    if isinstance(source, io.IOBase) or hasattr(source, "read"):
        return _parse_lines(source)
    return _parse_lines(source)


def _parse_lines(lines: Iterable[str]) -> CsrGraph:
    raw_pairs: list[tuple[int, int]] = []
    seen_ids: set[int] = set()
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(_COMMENT_PREFIXES):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise GraphParseError("expected two integer tokens, got %r" % stripped, lineno)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphParseError("non-integer token in %r" % stripped, lineno) from None
        if u < 0 or v < 0:
            raise GraphParseError("negative vertex id in %r" % stripped, lineno)
        if u == v:
            continue
        seen_ids.add(u)
        seen_ids.add(v)
        raw_pairs.append((u, v) if u < v else (v, u))
    if not raw_pairs:
        raise GraphParseError("empty graph: no valid edges in input")
    remap = {orig: new for new, orig in enumerate(sorted(seen_ids))}
    pairs = [(remap[u], remap[v]) for u, v in raw_pairs]
    return CsrGraph._from_normalized(len(remap), pairs)


def neighbors(g: CsrGraph, v: int) -> np.ndarray:
    """Functional alias for g.neighbors(v)."""
    return g.neighbors(v)
