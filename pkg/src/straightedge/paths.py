"""Vertex-to-vertex graph distances with on-demand or precomputed storage.

Edge weights are the Euclidean edge lengths. Unreachable vertices are
reported as ``math.inf``, which is the exact sentinel the Straightness
definitions test against.
"""

from __future__ import annotations

import enum
import threading
from collections import OrderedDict

import numpy as np
from scipy.sparse.csgraph import dijkstra

from .errors import BudgetExceeded, IndexOutOfRange
from .graph import SpatialGraph

DEFAULT_MEMORY_BUDGET = 512 * 1024**2
BYTES_PER_DISTANCE = 8


class Mode(str, enum.Enum):
    ON_DEMAND = "ondemand"
    PRECOMPUTED = "precomputed"


def _rows(g: SpatialGraph, sources) -> np.ndarray:
    if g.m == 0:
        out = np.full((len(sources), g.n), np.inf)
        out[np.arange(len(sources)), sources] = 0.0
        return out
    return dijkstra(g.csr, directed=False, indices=sources)


def single_source_distances(g: SpatialGraph, s: int) -> np.ndarray:
    """Shortest-path lengths from ``s`` to every vertex, ``inf`` if unreachable."""
    if not 0 <= s < g.n:
        raise IndexOutOfRange(f"source {s} outside [0, {g.n})")
    return _rows(g, np.array([s]))[0]


def multi_source_distances(g: SpatialGraph, sources) -> np.ndarray:
    sources = np.asarray(sources, dtype=np.int64)
    if sources.size and (sources.min() < 0 or sources.max() >= g.n):
        raise IndexOutOfRange("source outside the vertex range")
    return _rows(g, sources)


class DistanceProvider:
    """Answers ``distance(a, b)`` and ``row(a)`` queries for one graph.

    In precomputed mode the whole ``n x n`` table is filled at construction.
    In on-demand mode source rows are computed lazily and kept in an LRU
    cache; concurrent readers of the same row wait for a single computation.
    """

    def __init__(self, g: SpatialGraph, mode: Mode | str = Mode.ON_DEMAND,
                 memory_budget: int = DEFAULT_MEMORY_BUDGET):
        self.graph = g
        self.mode = Mode(mode)
        self.memory_budget = int(memory_budget)
        self.computed_rows = 0
        self._table: np.ndarray | None = None
        self._cache: OrderedDict[int, np.ndarray] = OrderedDict()
        self._pending: dict[int, threading.Event] = {}
        self._lock = threading.Lock()
        row_bytes = max(1, g.n * BYTES_PER_DISTANCE)
        if self.mode is Mode.PRECOMPUTED:
            required = g.n * row_bytes
            if required > self.memory_budget:
                raise BudgetExceeded(required, self.memory_budget)
            table = _rows(g, np.arange(g.n))
            table.flags.writeable = False
            self._table = table
            self.computed_rows = g.n
            self.capacity = g.n
        else:
            self.capacity = max(2, self.memory_budget // row_bytes)

    def row(self, a: int) -> np.ndarray:
        if not 0 <= a < self.graph.n:
            raise IndexOutOfRange(f"vertex {a} outside [0, {self.graph.n})")
        if self._table is not None:
            return self._table[a]
        while True:
            with self._lock:
                cached = self._cache.get(a)
                if cached is not None:
                    self._cache.move_to_end(a)
                    return cached
                waiter = self._pending.get(a)
                if waiter is None:
                    done = threading.Event()
                    self._pending[a] = done
                    break
            waiter.wait()
        try:
            row = _rows(self.graph, np.array([a]))[0]
            row.flags.writeable = False
            with self._lock:
                self._cache[a] = row
                self.computed_rows += 1
                while len(self._cache) > self.capacity:
                    self._cache.popitem(last=False)
            return row
        finally:
            with self._lock:
                del self._pending[a]
            done.set()

    def distance(self, a: int, b: int) -> float:
        # Always read from the lower-index row so d(a, b) == d(b, a) bitwise.
        if not 0 <= b < self.graph.n:
            raise IndexOutOfRange(f"vertex {b} outside [0, {self.graph.n})")
        if b < a:
            a, b = b, a
        return float(self.row(a)[b])

    def rows(self, sources) -> np.ndarray:
        """Distance rows for several sources, stacked."""
        sources = [int(s) for s in sources]
        if self._table is not None:
            return self._table[sources]
        return np.stack([self.row(s) for s in sources]) if sources else np.empty((0, self.graph.n))


def make_provider(g: SpatialGraph, mode: Mode | str = Mode.ON_DEMAND,
                  memory_budget: int = DEFAULT_MEMORY_BUDGET) -> DistanceProvider:
    return DistanceProvider(g, mode, memory_budget)
