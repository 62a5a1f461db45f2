"""Edge segmentation and the vertex-to-vertex average Straightness baselines.

``segment_graph`` inserts degree-2 vertices along every edge so that the
graph ``G'`` has ``n + (theta - 1) m`` vertices and ``theta m`` edges. The
``sigma_*`` functions then average the classic vertex-to-vertex Straightness
on ``G'``.

Two segmentation schemes produce the same counts:

``"length"`` (default)
    Pieces are apportioned to minimize the longest segment, so segment
    lengths are as uniform as possible over the whole graph and ``theta`` is
    the *average* segmentation. This is what makes ``sigma_theta`` converge
    to the length-weighted continuous averages.
``"uniform"``
    Every edge is cut into exactly ``theta`` equal pieces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._parallel import ordered_map
from .graph import SpatialGraph
from .paths import DEFAULT_MEMORY_BUDGET, DistanceProvider, Mode, make_provider, multi_source_distances

SCHEMES = ("length", "uniform")
ROW_BLOCK = 256


@dataclass(frozen=True)
class SegmentedGraph:
    graph: SpatialGraph
    original_vertex_map: np.ndarray
    theta: float
    epsilon: float
    pieces: np.ndarray

    def original(self, v: int) -> int:
        return int(self.original_vertex_map[v])


def allocate_pieces(lengths: np.ndarray, theta: int, scheme: str = "length") -> np.ndarray:
    """Number of segments per edge, summing to ``theta * m``."""
    lengths = np.asarray(lengths, dtype=float)
    m = len(lengths)
    if scheme not in SCHEMES:
        raise ValueError(f"unknown segmentation scheme {scheme!r}")
    if scheme == "uniform" or theta == 1 or m == 0:
        return np.full(m, int(theta), dtype=np.int64)
    target = int(theta) * m
    # Smallest epsilon whose ceil(L / epsilon) counts fit in the budget.
    lo, hi = lengths.max() / target, lengths.max()
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if np.ceil(lengths / mid).sum() <= target:
            hi = mid
        else:
            lo = mid
    pieces = np.maximum(np.ceil(lengths / hi), 1).astype(np.int64)
    spare = target - int(pieces.sum())
    if spare > 0:
        # Leftover pieces go to the currently longest segments, ties by index.
        order = np.lexsort((np.arange(m), -(lengths / pieces)))
        pieces[order[:spare]] += 1
    return pieces


def segment_graph(g: SpatialGraph, theta: int, scheme: str = "length") -> SegmentedGraph:
    """Split the edges of ``g`` into ``theta * m`` segments in one bulk insertion."""
    theta = int(theta)
    if theta < 1:
        raise ValueError("theta must be at least 1")
    pieces = allocate_pieces(g.lengths, theta, scheme)
    identity = np.arange(g.n)
    if theta == 1 and scheme == "length" or np.all(pieces == 1):
        copy = SpatialGraph(np.array(g.coords), np.array(g.edges), g.meta)
        eps = float(g.lengths.max()) if g.m else 0.0
        return SegmentedGraph(copy, identity, 1.0, eps, pieces)

    inner = pieces - 1
    n_new = int(inner.sum())
    edge_of = np.repeat(np.arange(g.m), inner)
    # Position j / k of every inserted vertex along its edge, j = 1..k-1.
    starts = np.concatenate([[0], np.cumsum(inner)[:-1]])
    j = np.arange(n_new) - np.repeat(starts, inner) + 1
    frac = j / np.repeat(pieces, inner)
    u, v = g.edges[edge_of, 0], g.edges[edge_of, 1]
    new_coords = g.coords[u] + frac[:, None] * (g.coords[v] - g.coords[u])
    coords = np.concatenate([np.asarray(g.coords), new_coords])

    new_ids = g.n + np.arange(n_new)
    # Chain u -> w_1 -> ... -> w_{k-1} -> v for every edge.
    first = np.concatenate([[True], edge_of[1:] != edge_of[:-1]]) if n_new else np.zeros(0, bool)
    prev = np.where(first, u, np.concatenate([[0], new_ids[:-1]]))
    last = np.concatenate([edge_of[1:] != edge_of[:-1], [True]]) if n_new else np.zeros(0, bool)
    chain = [np.stack([prev, new_ids], axis=1), np.stack([new_ids[last], v[last]], axis=1)]
    whole = g.edges[pieces == 1]
    edges = np.concatenate([whole, *chain]).astype(np.int64)
    edges = np.sort(edges, axis=1)
    edges = edges[np.lexsort((edges[:, 1], edges[:, 0]))]
    sg = SpatialGraph(coords, edges, g.meta)
    eps = float(np.max(g.lengths / pieces)) if g.m else 0.0
    return SegmentedGraph(sg, identity, float(pieces.sum()) / max(g.m, 1), eps, pieces)


def _straightness_rows(g: SpatialGraph, sources: np.ndarray, dist: np.ndarray) -> np.ndarray:
    """Vertex-to-vertex Straightness from each source to every vertex.

    The entry for the source itself is set to zero; callers exclude it.
    """
    delta = g.coords[None, :, :] - g.coords[sources][:, None, :]
    euclid = np.hypot(delta[..., 0], delta[..., 1])
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(np.isinf(dist), 0.0, euclid / dist)
    s[np.arange(len(sources)), sources] = 0.0
    return s


def sigma_vertex(g: SpatialGraph, u: int, dp: DistanceProvider | None = None) -> float:
    """Mean Straightness between vertex ``u`` and every other vertex."""
    if g.n < 2:
        return 0.0
    dp = dp or make_provider(g)
    row = dp.row(u)[None, :]
    s = _straightness_rows(g, np.array([u]), row)
    return float(np.sum(s)) / (g.n - 1)


def _segmented(g: SpatialGraph, theta, scheme: str) -> SegmentedGraph:
    theta = int(theta)
    if theta <= 1:
        return SegmentedGraph(g, np.arange(g.n), 1.0, float(g.lengths.max()) if g.m else 0.0,
                              np.ones(g.m, dtype=np.int64))
    return segment_graph(g, theta, scheme)


def sigma_theta_vertex(g: SpatialGraph, u: int, theta, dp_mode: Mode | str = Mode.ON_DEMAND,
                       scheme: str = "length", memory_budget: int = DEFAULT_MEMORY_BUDGET) -> float:
    """Discrete approximation of the point-to-graph average for vertex ``u``.

    ``theta`` of 0 or 1 means the original graph.
    """
    sg = _segmented(g, theta, scheme)
    dp = make_provider(sg.graph, dp_mode, memory_budget)
    return sigma_vertex(sg.graph, int(sg.original_vertex_map[u]), dp)


def sigma_graph(g: SpatialGraph, dp: DistanceProvider | None = None, threads: int | None = None) -> float:
    """Mean Straightness over all unordered pairs of distinct vertices."""
    n = g.n
    if n < 2:
        return 0.0
    blocks = [np.arange(a, min(a + ROW_BLOCK, n)) for a in range(0, n, ROW_BLOCK)]

    def block_sum(sources: np.ndarray) -> float:
        dist = dp.rows(sources) if dp is not None else multi_source_distances(g, sources)
        return float(np.sum(_straightness_rows(g, sources, dist)))

    total = math.fsum(ordered_map(block_sum, blocks, threads))
    return total / (n * (n - 1))


def sigma_theta_graph(g: SpatialGraph, theta, dp_mode: Mode | str = Mode.ON_DEMAND,
                      scheme: str = "length", memory_budget: int = DEFAULT_MEMORY_BUDGET,
                      threads: int | None = None) -> float:
    """Discrete approximation of the whole-graph average on ``G'``.

    In precomputed mode the full ``n' x n'`` table must fit ``memory_budget``
    (``BudgetExceeded`` otherwise); in on-demand mode rows are computed in
    blocks and discarded.
    """
    sg = _segmented(g, theta, scheme)
    dp = None
    if Mode(dp_mode) is Mode.PRECOMPUTED:
        dp = make_provider(sg.graph, Mode.PRECOMPUTED, memory_budget)
    return sigma_graph(sg.graph, dp, threads)
