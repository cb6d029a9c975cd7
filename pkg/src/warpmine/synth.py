"""Synthetic graph constructors for tests and demos."""

from __future__ import annotations

import numpy as np

from .graph import CsrGraph


def gnp_random_graph(n: int, p: float, seed: int) -> CsrGraph:
    """Erdos-Renyi G(n, p); deterministic for a fixed seed (PCG64)."""
    if n < 1:
        raise ValueError("need n >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("edge probability must be in [0, 1]")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    mask = rng.random(len(iu)) < p
    edges = zip(iu[mask].tolist(), ju[mask].tolist())
    return CsrGraph.from_edges(n, edges)


def complete_graph(n: int) -> CsrGraph:
    return CsrGraph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def path_graph(n: int) -> CsrGraph:
    return CsrGraph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def star_of_cliques(blobs: int, blob_size: int) -> CsrGraph:
    """A hub vertex attached to many dense blobs; adversarial for balancing.

    Vertex 0 is the hub, adjacent to every blob vertex; each blob is a
    complete graph on blob_size vertices.  Because the hub has the lowest
    id, the hub-rooted subtree owns every subgraph containing it, which
    concentrates work on whichever warp pulls root 0.
    """
    if blobs < 1 or blob_size < 2:
        raise ValueError("need blobs >= 1 and blob_size >= 2")
    edges = []
    for b in range(blobs):
        lo = 1 + b * blob_size
        members = range(lo, lo + blob_size)
        for i in members:
            edges.append((0, i))
            for j in members:
                if i < j:
                    edges.append((i, j))
    return CsrGraph.from_edges(1 + blobs * blob_size, edges)
