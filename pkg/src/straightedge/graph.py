"""Immutable spatial graph model and point addressing along edges.

A point of the graph is referenced by the edge it lies on and its distance
``ell`` from the first (lower-index) end-vertex of that edge.
"""

from __future__ import annotations

import math
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from scipy.sparse import csr_matrix

from .errors import (
    DuplicateEdge,
    IndexOutOfRange,
    InvalidPointRef,
    SelfLoop,
    ZeroLengthEdge,
)


class Coord(NamedTuple):
    x: float
    y: float


class EdgeKey(NamedTuple):
    u: int
    v: int

    @classmethod
    def of(cls, a: int, b: int) -> "EdgeKey":
        """Canonical key for the undirected pair ``{a, b}``."""
        a, b = int(a), int(b)
        return cls(a, b) if a < b else cls(b, a)


class PointRef(NamedTuple):
    edge: EdgeKey
    ell: float


def euclidean_distance(a, b) -> float:
    return math.hypot(b[0] - a[0], b[1] - a[1])


class SpatialGraph:
    """Undirected simple graph embedded in the plane.

    Edges are stored in canonical ``(u, v)`` form with ``u < v`` and sorted
    lexicographically, so the edge index order is the edge order used by the
    whole-graph averages. Instances are treated as immutable; the numpy
    arrays they expose are flagged read-only.
    """

    def __init__(self, coords: np.ndarray, edges: np.ndarray, meta: dict | None = None):
        self.coords = coords
        self.edges = edges
        self.meta = dict(meta or {})
        diff = coords[edges[:, 1]] - coords[edges[:, 0]]
        self.lengths = np.hypot(diff[:, 0], diff[:, 1])
        for arr in (self.coords, self.edges, self.lengths):
            arr.flags.writeable = False

    @cached_property
    def _keys(self) -> np.ndarray:
        # Edges are lexsorted, so the encoded keys are ascending.
        return self.edges[:, 0].astype(np.int64) * max(self.n, 1) + self.edges[:, 1]

    def _find(self, key: EdgeKey) -> int:
        if not (0 <= key.u < self.n and 0 <= key.v < self.n):
            return -1
        code = key.u * self.n + key.v
        i = int(np.searchsorted(self._keys, code))
        return i if i < self.m and self._keys[i] == code else -1

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, EdgeKey, float], ...], ...]:
        """Per vertex: ``(neighbor, incident edge, edge length)`` triples."""
        adjacency: list[list[tuple[int, EdgeKey, float]]] = [[] for _ in range(self.n)]
        for (u, v), length in zip(self.edges.tolist(), self.lengths.tolist()):
            key = EdgeKey(u, v)
            adjacency[u].append((v, key, length))
            adjacency[v].append((u, key, length))
        return tuple(tuple(nb) for nb in adjacency)

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"SpatialGraph(n={self.n}, m={self.m})"

    def edge_keys(self) -> list[EdgeKey]:
        return [EdgeKey(u, v) for u, v in self.edges.tolist()]

    def edge_index(self, key: Sequence[int]) -> int:
        key = EdgeKey.of(*key)
        i = self._find(key)
        if i < 0:
            raise InvalidPointRef(f"edge {tuple(key)} is not in the graph")
        return i

    def has_edge(self, a: int, b: int) -> bool:
        return self._find(EdgeKey.of(a, b)) >= 0

    def length(self, key: Sequence[int]) -> float:
        return float(self.lengths[self.edge_index(key)])

    def coord(self, v: int) -> Coord:
        self._check_vertex(v)
        x, y = self.coords[v]
        return Coord(float(x), float(y))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def total_length(self) -> float:
        return math.fsum(self.lengths)

    def vertex_point(self, v: int, edge: Sequence[int] | None = None) -> PointRef:
        """Address vertex ``v`` as a point of one of its incident edges."""
        self._check_vertex(v)
        if edge is None:
            incident = np.flatnonzero((self.edges[:, 0] == v) | (self.edges[:, 1] == v))
            if not len(incident):
                raise InvalidPointRef(f"vertex {v} has no incident edge")
            key = EdgeKey(*self.edges[incident[0]].tolist())
        else:
            key = EdgeKey.of(*edge)
            if v not in key:
                raise InvalidPointRef(f"vertex {v} is not an end-vertex of {tuple(key)}")
        return PointRef(key, 0.0 if key.u == v else self.length(key))

    def check_point(self, p: PointRef) -> tuple[EdgeKey, float, float]:
        """Validate ``p`` and return ``(canonical edge, ell, edge length)``."""
        key = EdgeKey.of(*p.edge)
        if key != tuple(p.edge):
            raise InvalidPointRef(f"edge {tuple(p.edge)} is not in canonical order")
        length = self.length(key)
        ell = float(p.ell)
        if not (0.0 <= ell <= length):
            raise InvalidPointRef(f"ell={ell} outside [0, {length}] on edge {tuple(key)}")
        return key, ell, length

    def transformed(self, angle: float = 0.0, scale: float = 1.0, shift=(0.0, 0.0)) -> "SpatialGraph":
        """Rotated, scaled and translated copy with the same topology."""
        c, s = math.cos(angle), math.sin(angle)
        rot = np.array([[c, -s], [s, c]])
        coords = scale * (np.asarray(self.coords) @ rot.T) + np.asarray(shift, dtype=float)
        return SpatialGraph(coords, np.array(self.edges), self.meta)

    @cached_property
    def csr(self) -> csr_matrix:
        """Symmetric sparse weight matrix used by the shortest-path engine."""
        u, v = self.edges[:, 0], self.edges[:, 1]
        w = np.asarray(self.lengths)
        return csr_matrix(
            (np.concatenate([w, w]), (np.concatenate([u, v]), np.concatenate([v, u]))),
            shape=(self.n, self.n),
        )

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexOutOfRange(f"vertex {v} outside [0, {self.n})")


def build_graph(
    vertex_coords: Iterable[Sequence[float]],
    edge_pairs: Iterable[Sequence[int]],
    meta: dict | None = None,
) -> SpatialGraph:
    """Validate and canonicalize a vertex/edge description into a graph."""
    coords = np.array([tuple(map(float, c)) for c in vertex_coords], dtype=float).reshape(-1, 2)
    if not np.all(np.isfinite(coords)):
        raise ValueError("vertex coordinates must be finite")
    n = len(coords)
    seen: set[EdgeKey] = set()
    for a, b in edge_pairs:
        a, b = int(a), int(b)
        if not (0 <= a < n and 0 <= b < n):
            raise IndexOutOfRange(f"edge ({a}, {b}) references a vertex outside [0, {n})")
        if a == b:
            raise SelfLoop(f"self-loop on vertex {a}")
        key = EdgeKey.of(a, b)
        if key in seen:
            raise DuplicateEdge(f"duplicate edge {tuple(key)}")
        if coords[a, 0] == coords[b, 0] and coords[a, 1] == coords[b, 1]:
            raise ZeroLengthEdge(f"edge {tuple(key)} joins coincident vertices")
        seen.add(key)
    edges = np.array(sorted(seen), dtype=np.int64).reshape(-1, 2)
    return SpatialGraph(coords, edges, meta)


def point_coords(g: SpatialGraph, p: PointRef) -> Coord:
    key, ell, length = g.check_point(p)
    (xu, yu), (xv, yv) = g.coords[key.u], g.coords[key.v]
    t = ell / length
    return Coord(float(xu + t * (xv - xu)), float(yu + t * (yv - yu)))


def euclidean_between_points(g: SpatialGraph, p1: PointRef, p2: PointRef) -> float:
    """Euclidean distance written in terms of the relative positions.

    Both points are expressed through the section formula relative to their
    edges' first end-vertices, so only vertex coordinates and the two
    ``ell`` values enter the computation.
    """
    k1, l1, len1 = g.check_point(p1)
    k2, l2, len2 = g.check_point(p2)
    # Evaluate in a fixed point order so swapping the arguments is exact.
    if (k2, l2) < (k1, l1):
        k1, l1, len1, k2, l2, len2 = k2, l2, len2, k1, l1, len1
    (xu1, yu1), (xv1, yv1) = g.coords[k1.u], g.coords[k1.v]
    (xu2, yu2), (xv2, yv2) = g.coords[k2.u], g.coords[k2.v]
    dx = xu2 + l2 / len2 * (xv2 - xu2) - xu1 - l1 / len1 * (xv1 - xu1)
    dy = yu2 + l2 / len2 * (yv2 - yu2) - yu1 - l1 / len1 * (yv1 - yu1)
    return math.hypot(dx, dy)


def vertex_on_point(g: SpatialGraph, p: PointRef) -> int | None:
    """The vertex ``p`` coincides with by construction, if any."""
    key, ell, length = g.check_point(p)
    if ell == 0.0:
        return key.u
    if ell == length:
        return key.v
    return None


def same_edge(g: SpatialGraph, p1: PointRef, p2: PointRef) -> bool:
    """Whether two points lie on a common edge.

    True when they reference the same edge, or when one of them is an
    end-vertex shared with the other's edge.
    """
    k1, k2 = EdgeKey.of(*p1.edge), EdgeKey.of(*p2.edge)
    if k1 == k2:
        return True
    w1, w2 = vertex_on_point(g, p1), vertex_on_point(g, p2)
    return (w1 is not None and w1 in k2) or (w2 is not None and w2 in k1)


def on_edge(g: SpatialGraph, p: PointRef, target: Sequence[int]) -> bool:
    """Whether ``p`` lies on ``target`` (its own edge or a shared end-vertex)."""
    target = EdgeKey.of(*target)
    if EdgeKey.of(*p.edge) == target:
        return True
    w = vertex_on_point(g, p)
    return w is not None and w in target
