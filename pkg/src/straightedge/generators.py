"""Seeded test-graph families.

Random families draw from ``numpy.random.Generator(PCG64(seed))`` so that a
``(parameters, seed)`` pair always yields the same graph bit for bit.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.spatial import Delaunay, QhullError

from .errors import DegenerateConfiguration
from .graph import SpatialGraph, build_graph

PRNG = "PCG64"
MAX_REDRAWS = 10


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _delaunay_edges(points: np.ndarray) -> np.ndarray:
    tri = Delaunay(points)
    s = tri.simplices
    pairs = np.concatenate([s[:, [0, 1]], s[:, [1, 2]], s[:, [0, 2]]])
    pairs = np.sort(pairs, axis=1)
    return np.unique(pairs, axis=0)


def random_planar(n: int, seed: int) -> SpatialGraph:
    """Delaunay triangulation of ``n`` uniform points in the unit square.

    Degenerate draws (collinear or coincident points) are perturbed by a
    tiny jitter and re-triangulated; the number of redraws is stored in
    ``meta["perturbations"]``.
    """
    if n < 3:
        raise ValueError("random_planar needs n >= 3")
    rng = _rng(seed)
    points = rng.random((n, 2))
    for attempt in range(MAX_REDRAWS + 1):
        distinct = len(np.unique(points, axis=0)) == n
        if distinct:
            try:
                edges = _delaunay_edges(points)
                meta = {"family": "planar", "n": n, "seed": seed, "prng": PRNG,
                        "perturbations": attempt}
                return build_graph(points, edges, meta)
            except QhullError:
                pass
        points = points + rng.normal(scale=1e-9, size=points.shape)
    raise DegenerateConfiguration(f"could not triangulate {n} points after {MAX_REDRAWS} redraws")


def spatial_erdos_renyi(n: int, p: float, seed: int) -> SpatialGraph:
    """Uniform points in the unit square, each pair linked with probability ``p``."""
    if n < 2:
        raise ValueError("spatial_erdos_renyi needs n >= 2")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = _rng(seed)
    points = rng.random((n, 2))
    iu, iv = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    # Coincident draws would give zero-length edges; they are vanishingly rare.
    same = np.all(points[iu] == points[iv], axis=1)
    keep &= ~same
    meta = {"family": "er", "n": n, "p": p, "seed": seed, "prng": PRNG}
    return build_graph(points, np.stack([iu[keep], iv[keep]], axis=1), meta)


def square_grid(k: int) -> SpatialGraph:
    """``k x k`` unit lattice; vertex ``row * k + col`` sits at ``(col, row)``."""
    if k < 2:
        raise ValueError("square_grid needs k >= 2")
    rows, cols = np.divmod(np.arange(k * k), k)
    coords = np.stack([cols, rows], axis=1).astype(float)
    idx = np.arange(k * k).reshape(k, k)
    horizontal = np.stack([idx[:, :-1].ravel(), idx[:, 1:].ravel()], axis=1)
    vertical = np.stack([idx[:-1, :].ravel(), idx[1:, :].ravel()], axis=1)
    return build_graph(coords, np.concatenate([horizontal, vertical]), {"family": "grid", "k": k})


def radio_concentric(spokes: int, rings: int) -> SpatialGraph:
    """Center vertex 0 with ``spokes`` rays and ``rings`` polygonal rings.

    The vertex on ring ``r`` (1-based) and spoke ``j`` has index
    ``1 + (r - 1) * spokes + j`` and sits at radius ``r``.
    """
    if spokes < 3 or rings < 1:
        raise ValueError("radio_concentric needs spokes >= 3 and rings >= 1")
    coords = [(0.0, 0.0)]
    edges = []
    for r in range(1, rings + 1):
        base = 1 + (r - 1) * spokes
        for j in range(spokes):
            a = 2 * math.pi * j / spokes
            coords.append((r * math.cos(a), r * math.sin(a)))
            edges.append((0 if r == 1 else base - spokes + j, base + j))
            edges.append((base + j, base + (j + 1) % spokes))
    meta = {"family": "radio", "spokes": spokes, "rings": rings}
    return build_graph(coords, edges, meta)
