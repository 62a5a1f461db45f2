"""Break-even distances, point-level graph distances and point Straightness.

Every function here follows the case tables literally, comparing relative
positions against break-even distances with ``<=`` on the boundaries. At a
boundary both branches agree, so the choice does not change the value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .auxfun import aux_f, make_params
from .errors import Disconnected, SameEdge
from .graph import (
    EdgeKey,
    PointRef,
    SpatialGraph,
    euclidean_between_points,
    on_edge,
    same_edge,
)
from .paths import DistanceProvider


@dataclass(frozen=True)
class BreakEven:
    lam: float
    case: int = 0
    raw: float = math.nan

    @property
    def clamped(self) -> bool:
        return self.lam != self.raw


def _clamp(raw: float, length: float) -> float:
    return min(max(raw, 0.0), length)


def break_even_vertex(g: SpatialGraph, dp: DistanceProvider, r: int, target) -> BreakEven:
    """Break-even distance of ``target`` for vertex ``r``."""
    key = EdgeKey.of(*target)
    length = g.length(key)
    d_ru, d_rv = dp.distance(r, key.u), dp.distance(r, key.v)
    if math.isinf(d_ru) or math.isinf(d_rv):
        raise Disconnected(f"vertex {r} cannot reach edge {tuple(key)}")
    raw = (d_rv - d_ru + length) / 2
    return BreakEven(_clamp(raw, length), 0, raw)


def graph_distance_vertex_point(g: SpatialGraph, dp: DistanceProvider, r: int, p: PointRef) -> float:
    key, ell, length = g.check_point(p)
    try:
        lam = break_even_vertex(g, dp, r, key).lam
    except Disconnected:
        return math.inf
    if ell <= lam:
        return dp.distance(r, key.u) + ell
    return dp.distance(r, key.v) + length - ell


@dataclass(frozen=True)
class _EdgePair:
    """End-vertex distances and lengths for a source/target edge pair."""

    len1: float
    len2: float
    d_u1u2: float
    d_u1v2: float
    d_v1u2: float
    d_v1v2: float

    @classmethod
    def of(cls, g, dp, e1: EdgeKey, e2: EdgeKey) -> "_EdgePair":
        return cls(g.length(e1), g.length(e2),
                   dp.distance(e1.u, e2.u), dp.distance(e1.u, e2.v),
                   dp.distance(e1.v, e2.u), dp.distance(e1.v, e2.v))

    @property
    def dists(self):
        return self.d_u1u2, self.d_u1v2, self.d_v1u2, self.d_v1v2

    @property
    def connected(self) -> bool:
        return not math.isinf(self.d_u1u2)

    def lam_u2(self) -> float:
        return _clamp((self.d_v1u2 - self.d_u1u2 + self.len1) / 2, self.len1)

    def lam_v2(self) -> float:
        return _clamp((self.d_v1v2 - self.d_u1v2 + self.len1) / 2, self.len1)

    def case_of(self, ell1: float) -> int:
        lu, lv = self.lam_u2(), self.lam_v2()
        if ell1 <= lu and ell1 <= lv:
            return 1
        if lv < ell1 <= lu:
            return 2
        if lu < ell1 <= lv:
            return 3
        return 4

    def lam_point_raw(self, ell1: float, case: int) -> float:
        l1, l2 = self.len1, self.len2
        if case == 1:
            return (self.d_u1v2 - self.d_u1u2 + l2) / 2
        if case == 2:
            return (self.d_v1v2 - self.d_u1u2 + l1 + l2 - 2 * ell1) / 2
        if case == 3:
            return (self.d_u1v2 - self.d_v1u2 - l1 + l2 + 2 * ell1) / 2
        return (self.d_v1v2 - self.d_v1u2 + l2) / 2


# Route taken for (case, second piece?) in the point-to-point distance table.
_ROUTE = {
    (1, False): "u1u2", (1, True): "u1v2",
    (2, False): "u1u2", (2, True): "v1v2",
    (3, False): "v1u2", (3, True): "u1v2",
    (4, False): "v1u2", (4, True): "v1v2",
}


def break_even_point(g: SpatialGraph, dp: DistanceProvider, p1: PointRef, target) -> BreakEven:
    """Break-even distance of ``target`` for an arbitrary point ``p1``."""
    key1, ell1, _ = g.check_point(p1)
    key2 = EdgeKey.of(*target)
    g.edge_index(key2)
    if on_edge(g, p1, key2):
        raise SameEdge(f"point lies on edge {tuple(key2)}")
    pair = _EdgePair.of(g, dp, key1, key2)
    if not pair.connected:
        raise Disconnected(f"edges {tuple(key1)} and {tuple(key2)} are not connected")
    case = pair.case_of(ell1)
    raw = pair.lam_point_raw(ell1, case)
    return BreakEven(_clamp(raw, pair.len2), case, raw)


def _route_length(route: str, pair: _EdgePair, ell1: float, ell2: float) -> float:
    first = ell1 if route[:2] == "u1" else pair.len1 - ell1
    last = ell2 if route[2:] == "u2" else pair.len2 - ell2
    middle = {"u1u2": pair.d_u1u2, "u1v2": pair.d_u1v2,
              "v1u2": pair.d_v1u2, "v1v2": pair.d_v1v2}[route]
    return first + middle + last


def _general_route(g, dp, p1, p2):
    """Route, pair data and positions for two points on distinct edges."""
    key1, ell1, _ = g.check_point(p1)
    key2, ell2, _ = g.check_point(p2)
    pair = _EdgePair.of(g, dp, key1, key2)
    if not pair.connected:
        return None, pair, ell1, ell2
    case = pair.case_of(ell1)
    lam = _clamp(pair.lam_point_raw(ell1, case), pair.len2)
    return _ROUTE[case, ell2 > lam], pair, ell1, ell2


def graph_distance_points(g: SpatialGraph, dp: DistanceProvider, p1: PointRef, p2: PointRef) -> float:
    if same_edge(g, p1, p2):
        return euclidean_between_points(g, p1, p2)
    route, pair, ell1, ell2 = _general_route(g, dp, p1, p2)
    if route is None:
        return math.inf
    return _route_length(route, pair, ell1, ell2)


def straightness_points(g: SpatialGraph, dp: DistanceProvider, p1: PointRef, p2: PointRef) -> float:
    """Straightness between two points of the graph, in ``[0, 1]``."""
    if same_edge(g, p1, p2):
        return 1.0
    route, pair, ell1, ell2 = _general_route(g, dp, p1, p2)
    if route is None:
        return 0.0
    params = make_params(g, p1.edge, p2.edge, route, pair.dists)
    return aux_f(params, ell1, ell2)
