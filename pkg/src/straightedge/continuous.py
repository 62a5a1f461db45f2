"""Continuous average Straightness: point/edge/graph totals and averages.

The total Straightness between a point and an edge is computed in closed
form, piecewise around the break-even point. The total between two edges
integrates that closed form numerically over the source edge, with knots
at the break-even distances where the integrand changes branch.

All kernels are vectorized: a single call evaluates a point against many
target edges, or many source positions against many edge pairs.
"""

from __future__ import annotations

import math

import numpy as np

from ._parallel import ordered_map
from .auxfun import definite_integral
from .graph import EdgeKey, PointRef, SpatialGraph, on_edge
from .paths import DistanceProvider
from .quadrature import QuadratureConfig, integrate, integrate_batch

DEFAULT_QC = QuadratureConfig()


class _Pairs:
    """Struct-of-arrays geometry for (source edge, target edge) pairs."""

    __slots__ = ("len1", "ux1", "uy1", "dx1", "dy1", "len2", "ux2", "uy2", "dx2", "dy2",
                 "duu", "duv", "dvu", "dvv")

    def __init__(self, g: SpatialGraph, i1, i2, row_u1: np.ndarray, row_v1: np.ndarray):
        i1 = np.broadcast_to(np.asarray(i1), np.shape(i2))
        e1, e2 = g.edges[i1], g.edges[i2]
        c = g.coords
        self.len1 = g.lengths[i1]
        self.len2 = g.lengths[i2]
        self.ux1, self.uy1 = c[e1[:, 0], 0], c[e1[:, 0], 1]
        self.dx1 = (c[e1[:, 1], 0] - self.ux1) / self.len1
        self.dy1 = (c[e1[:, 1], 1] - self.uy1) / self.len1
        self.ux2, self.uy2 = c[e2[:, 0], 0], c[e2[:, 0], 1]
        self.dx2 = (c[e2[:, 1], 0] - self.ux2) / self.len2
        self.dy2 = (c[e2[:, 1], 1] - self.uy2) / self.len2
        self.duu, self.duv = row_u1[e2[:, 0]], row_u1[e2[:, 1]]
        self.dvu, self.dvv = row_v1[e2[:, 0]], row_v1[e2[:, 1]]

    def take(self, ids: np.ndarray) -> dict:
        return {name: getattr(self, name)[ids] for name in self.__slots__}

    def all(self) -> dict:
        return {name: getattr(self, name) for name in self.__slots__}

    def knots(self, j: int) -> list[float]:
        """Outer-integration knots of pair ``j`` on the source edge."""
        l1, l2 = float(self.len1[j]), float(self.len2[j])
        duu, duv, dvu, dvv = (float(self.duu[j]), float(self.duv[j]),
                              float(self.dvu[j]), float(self.dvv[j]))
        lam_u2 = (dvu - duu + l1) / 2
        lam_v2 = (dvv - duv + l1) / 2
        # Positions where the case-2/3 break-even point reaches an edge end.
        extra = [
            (dvv - duu + l1 + l2) / 2, (dvv - duu + l1 - l2) / 2,
            (dvu - duv + l1 - l2) / 2, (dvu - duv + l1 + l2) / 2,
        ]
        inner = {x for x in (lam_u2, lam_v2, *extra) if 0.0 < x < l1}
        return [0.0, *sorted(inner), l1]


def _kernel(ell1, len1, ux1, uy1, dx1, dy1, len2, ux2, uy2, dx2, dy2, duu, duv, dvu, dvv):
    """Total Straightness between the point at ``ell1`` and the target edge.

    General case only: the point must not lie on the target edge and the
    pair must be connected. Broadcasts over all arguments.
    """
    lam_u2 = np.clip((dvu - duu + len1) / 2, 0.0, len1)
    lam_v2 = np.clip((dvv - duv + len1) / 2, 0.0, len1)
    via_u1_to_u2 = ell1 <= lam_u2
    via_u1_to_v2 = ell1 <= lam_v2
    case1 = via_u1_to_u2 & via_u1_to_v2
    case2 = ~via_u1_to_v2 & via_u1_to_u2
    case3 = ~via_u1_to_u2 & via_u1_to_v2
    lam_p = np.select(
        [case1, case2, case3],
        [
            (duv - duu + len2) / 2,
            (dvv - duu + len1 + len2 - 2 * ell1) / 2,
            (duv - dvu - len1 + len2 + 2 * ell1) / 2,
        ],
        (dvv - dvu + len2) / 2,
    )
    lam_p = np.clip(lam_p, 0.0, len2)
    # First piece reaches p2 through u2, second through v2.
    a_first = np.where(via_u1_to_u2, duu + ell1, len1 + dvu - ell1)
    a_second = np.where(via_u1_to_v2, duv + len2 + ell1, len1 + dvv + len2 - ell1)
    px = ux1 + ell1 * dx1
    py = uy1 + ell1 * dy1
    first = definite_integral(px, py, ux2, uy2, dx2, dy2, a_first, 1, 0.0, lam_p)
    second = definite_integral(px, py, ux2, uy2, dx2, dy2, a_second, -1, lam_p, len2)
    first = np.where(lam_p > 0, first, 0.0)
    second = np.where(lam_p < len2, second, 0.0)
    out = first + second
    bad = ~np.isfinite(out)
    if np.any(bad):
        out = _quadrature_fallback(out, bad, px, py, ux2, uy2, dx2, dy2, a_first, a_second,
                                   lam_p, len2)
    return out


def _quadrature_fallback(out, bad, px, py, ux2, uy2, dx2, dy2, a_first, a_second, lam_p, len2):
    """Numerically integrate entries where the closed form is undefined."""
    out = np.array(out, dtype=float)
    args = np.broadcast_arrays(px, py, ux2, uy2, dx2, dy2, a_first, a_second, lam_p, len2, out)
    flat = [np.ravel(a) for a in args]
    for i in np.flatnonzero(np.broadcast_to(bad, args[0].shape)):
        x, y, ux, uy, dx, dy, af, asec, lam, l2, _ = (float(a[i]) for a in flat)
        foot = (x - ux) * dx + (y - uy) * dy

        def f_first(t, x=x, y=y, ux=ux, uy=uy, dx=dx, dy=dy, af=af):
            return np.hypot(ux + t * dx - x, uy + t * dy - y) / (af + t)

        def f_second(t, x=x, y=y, ux=ux, uy=uy, dx=dx, dy=dy, asec=asec):
            return np.hypot(ux + t * dx - x, uy + t * dy - y) / (asec - t)

        total = 0.0
        if lam > 0:
            total += integrate(f_first, 0.0, lam, DEFAULT_QC, points=(foot,))[0]
        if lam < l2:
            total += integrate(f_second, lam, l2, DEFAULT_QC, points=(foot,))[0]
        flat[-1][i] = total
    return flat[-1].reshape(args[0].shape)


def _rows_for(dp: DistanceProvider, key: EdgeKey):
    return dp.row(key.u), dp.row(key.v)


# ---------------------------------------------------------------------------
# point-level variants
# ---------------------------------------------------------------------------

def point_edge_totals(g: SpatialGraph, dp: DistanceProvider, p1: PointRef) -> np.ndarray:
    """Total Straightness between ``p1`` and every edge, in edge order."""
    key1, ell1, _ = g.check_point(p1)
    i1 = g.edge_index(key1)
    row_u1, row_v1 = _rows_for(dp, key1)
    targets = np.arange(g.m)
    pairs = _Pairs(g, i1, targets, row_u1, row_v1)
    totals = np.zeros(g.m)
    on_target = targets == i1
    if ell1 in (0.0, float(g.lengths[i1])):
        w = key1.u if ell1 == 0.0 else key1.v
        on_target |= (g.edges[:, 0] == w) | (g.edges[:, 1] == w)
    connected = np.isfinite(pairs.duu)
    general = connected & ~on_target
    if np.any(general):
        arrays = pairs.take(np.flatnonzero(general))
        totals[general] = _kernel(ell1, **arrays)
    totals[on_target] = g.lengths[on_target]
    return totals


def total_straightness_point_edge(g: SpatialGraph, dp: DistanceProvider, p1: PointRef, target,
                                  qc: QuadratureConfig = DEFAULT_QC) -> float:
    key1, ell1, _ = g.check_point(p1)
    key2 = EdgeKey.of(*target)
    i2 = g.edge_index(key2)
    if on_edge(g, p1, key2):
        return float(g.lengths[i2])
    row_u1, row_v1 = _rows_for(dp, key1)
    pairs = _Pairs(g, g.edge_index(key1), np.array([i2]), row_u1, row_v1)
    if not np.isfinite(pairs.duu[0]):
        return 0.0
    return float(_kernel(ell1, **pairs.all())[0])


def avg_straightness_point_edge(g: SpatialGraph, dp: DistanceProvider, p1: PointRef, target,
                                qc: QuadratureConfig = DEFAULT_QC) -> float:
    return total_straightness_point_edge(g, dp, p1, target, qc) / g.length(target)


def avg_straightness_point_graph(g: SpatialGraph, dp: DistanceProvider, p1: PointRef,
                                 qc: QuadratureConfig = DEFAULT_QC) -> float:
    totals = point_edge_totals(g, dp, p1)
    return math.fsum(totals) / g.total_length()


# ---------------------------------------------------------------------------
# edge-level variants
# ---------------------------------------------------------------------------

def edge_pair_totals(g: SpatialGraph, dp: DistanceProvider, e1, targets,
                     qc: QuadratureConfig = DEFAULT_QC) -> np.ndarray:
    """Total Straightness between edge ``e1`` and each edge index in ``targets``."""
    key1 = EdgeKey.of(*e1)
    i1 = g.edge_index(key1)
    targets = np.asarray(targets, dtype=np.int64)
    totals = np.zeros(len(targets))
    if not len(targets):
        return totals
    row_u1, row_v1 = _rows_for(dp, key1)
    pairs = _Pairs(g, i1, targets, row_u1, row_v1)
    same = targets == i1
    totals[same] = g.lengths[i1] ** 2 / 2
    general = np.flatnonzero(~same & np.isfinite(pairs.duu))
    if general.size:
        sub = pairs.take(general)
        knots = [pairs.knots(j) for j in general]

        def integrand(ids, x):
            args = {name: values[ids] for name, values in sub.items()}
            return _kernel(x, **args)

        values, _ = integrate_batch(integrand, knots, qc)
        totals[general] = values
    return totals


def total_straightness_edge_edge(g: SpatialGraph, dp: DistanceProvider, e1, e2,
                                 qc: QuadratureConfig = DEFAULT_QC) -> float:
    return float(edge_pair_totals(g, dp, e1, [g.edge_index(e2)], qc)[0])


def avg_straightness_edge_edge(g: SpatialGraph, dp: DistanceProvider, e1, e2,
                               qc: QuadratureConfig = DEFAULT_QC) -> float:
    k1, k2 = EdgeKey.of(*e1), EdgeKey.of(*e2)
    if k1 == k2:
        g.edge_index(k1)
        return 1.0
    total = total_straightness_edge_edge(g, dp, k1, k2, qc)
    return total / (g.length(k1) * g.length(k2))


def edge_graph_totals(g: SpatialGraph, dp: DistanceProvider, e1,
                      qc: QuadratureConfig = DEFAULT_QC) -> np.ndarray:
    """Total Straightness between ``e1`` and every edge, in edge order."""
    return edge_pair_totals(g, dp, e1, np.arange(g.m), qc)


def avg_straightness_edge_graph(g: SpatialGraph, dp: DistanceProvider, e1, include_self: bool = True,
                                qc: QuadratureConfig = DEFAULT_QC) -> float:
    i1 = g.edge_index(e1)
    len1 = float(g.lengths[i1])
    totals = edge_graph_totals(g, dp, e1, qc)
    weights = g.lengths * len1
    if include_self:
        return math.fsum(totals) / (math.fsum(weights) - len1 * len1 / 2)
    others = np.arange(g.m) != i1
    denom = math.fsum(weights[others])
    return math.fsum(totals[others]) / denom if denom > 0 else 0.0


# ---------------------------------------------------------------------------
# whole graph
# ---------------------------------------------------------------------------

def graph_pair_totals(g: SpatialGraph, dp: DistanceProvider, qc: QuadratureConfig = DEFAULT_QC,
                      threads: int | None = None) -> list[np.ndarray]:
    """Per source edge ``i``, the totals against edges ``i, i+1, ..., m-1``.

    Blocks are independent and may run concurrently; each block is always
    computed the same way so results do not depend on the thread count.
    """
    keys = g.edge_keys()

    def block(i: int) -> np.ndarray:
        return edge_pair_totals(g, dp, keys[i], np.arange(i, g.m), qc)

    return ordered_map(block, range(g.m), threads)


def avg_straightness_graph(g: SpatialGraph, dp: DistanceProvider, include_same_edge: bool = True,
                           qc: QuadratureConfig = DEFAULT_QC, threads: int | None = None) -> float:
    blocks = graph_pair_totals(g, dp, qc, threads)
    lengths = np.asarray(g.lengths)
    if include_same_edge:
        num = math.fsum(v for b in blocks for v in b)
        weights = [lengths[i] * lengths[i:] for i in range(g.m)]
        denom = math.fsum(w for ws in weights for w in ws) - math.fsum(lengths ** 2 / 2)
    else:
        num = math.fsum(v for b in blocks for v in b[1:])
        weights = [lengths[i] * lengths[i + 1:] for i in range(g.m)]
        denom = math.fsum(w for ws in weights for w in ws)
    return num / denom if denom > 0 else 0.0
