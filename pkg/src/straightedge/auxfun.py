"""The Straightness integrand and its antiderivative along a target edge.

For ``p1`` fixed on edge ``(u1, v1)`` and ``p2`` moving along ``(u2, v2)``,
the point-to-point Straightness on one branch of the graph distance is

    f(l1, l2) = |p2 - p1| / (alpha + beta * l1 + gamma * l2)

with ``beta, gamma`` in ``{-1, +1}``. Writing ``s = l2 + m`` where ``m`` is
the projection of ``u2 - p1`` on the unit direction of the target edge and
``h`` the distance from ``p1`` to the target's supporting line, the numerator
is ``sqrt(s**2 + h**2)`` and the denominator ``gamma * (s + k)``. The
antiderivative in ``l2`` is then

    gamma * (R - k * asinh(s / h) - sqrt(W) * log|(h**2 - k*s + sqrt(W)*R) / (s + k)|)

with ``R = sqrt(s**2 + h**2)`` and ``W = k**2 + h**2``. When ``p1`` is on the
supporting line (``h == 0``) the collinear branch
``sign(s) * (s - k * log|s + k|)`` is used, shifted to stay continuous at
``s = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BranchUndefined, NonPositiveDenominator

# Relative size of the line offset below which a configuration is collinear.
COLLINEAR_RTOL = 1e-12

ROUTES = ("u1u2", "u1v2", "v1u2", "v1v2")


@dataclass(frozen=True)
class AuxParams:
    """Parameters of one instance of the integrand.

    ``u1``/``dir1`` and ``u2``/``dir2`` are the first end-vertex and unit
    direction of the source and target edges.
    """

    alpha: float
    beta: int
    gamma: int
    u1: tuple[float, float]
    dir1: tuple[float, float]
    u2: tuple[float, float]
    dir2: tuple[float, float]

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError("alpha must be non-negative")
        if self.beta not in (-1, 1) or self.gamma not in (-1, 1):
            raise ValueError("beta and gamma must be -1 or +1")


def route_params(route: str, d_u1u2: float, d_u1v2: float, d_v1u2: float, d_v1v2: float,
                 len1: float, len2: float) -> tuple[float, int, int]:
    """``(alpha, beta, gamma)`` of the integrand for a route through two end-vertices."""
    if route == "u1u2":
        return d_u1u2, 1, 1
    if route == "u1v2":
        return d_u1v2 + len2, 1, -1
    if route == "v1u2":
        return len1 + d_v1u2, -1, 1
    if route == "v1v2":
        return len1 + d_v1v2 + len2, -1, -1
    raise ValueError(f"unknown route {route!r}")


def make_params(g, e1, e2, route: str, dists) -> AuxParams:
    """Build the integrand parameters for edges ``e1``, ``e2`` of graph ``g``.

    ``dists`` is ``(d(u1,u2), d(u1,v2), d(v1,u2), d(v1,v2))``.
    """
    i1, i2 = g.edge_index(e1), g.edge_index(e2)
    (u1, v1), (u2, v2) = g.edges[i1], g.edges[i2]
    len1, len2 = float(g.lengths[i1]), float(g.lengths[i2])
    alpha, beta, gamma = route_params(route, *dists, len1, len2)
    c = g.coords
    dir1 = tuple((c[v1] - c[u1]) / len1)
    dir2 = tuple((c[v2] - c[u2]) / len2)
    return AuxParams(alpha, beta, gamma, tuple(map(float, c[u1])), tuple(map(float, dir1)),
                     tuple(map(float, c[u2])), tuple(map(float, dir2)))


def _numerator(params: AuxParams, ell1, ell2):
    x1 = params.u1[0] + ell1 * params.dir1[0]
    y1 = params.u1[1] + ell1 * params.dir1[1]
    x2 = params.u2[0] + ell2 * params.dir2[0]
    y2 = params.u2[1] + ell2 * params.dir2[1]
    return np.hypot(x2 - x1, y2 - y1)


def aux_f(params: AuxParams, ell1, ell2):
    ell1 = np.asarray(ell1, dtype=float)
    ell2 = np.asarray(ell2, dtype=float)
    denom = params.alpha + params.beta * ell1 + params.gamma * ell2
    if np.any(denom <= 0):
        raise NonPositiveDenominator("integrand denominator is not positive")
    out = _numerator(params, ell1, ell2) / denom
    return float(out) if out.ndim == 0 else out


def _line_frame(px, py, ux, uy, dx, dy, a0, gamma):
    """Shift ``m``, offset ``h`` and pole ``k`` of the target line seen from ``p1``."""
    wx, wy = ux - px, uy - py
    m = dx * wx + dy * wy
    h = np.abs(dx * wy - dy * wx)
    k = gamma * a0 - m
    scale = np.maximum(np.hypot(wx, wy), np.abs(a0))
    collinear = h <= COLLINEAR_RTOL * scale
    return m, h, k, collinear


def _primitive(s, h, k, gamma, collinear):
    """Antiderivative of ``gamma * sqrt(s^2 + h^2) / (s + k)`` in ``s``."""
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        R = np.hypot(s, h)
        W = k * k + h * h
        sqW = np.sqrt(W)
        direct = h * h - k * s
        # Conjugate form avoids cancellation when h^2 - k s is negative.
        num = np.where(
            direct >= 0,
            direct + sqW * R,
            h * h * (s + k) ** 2 / (sqW * R - direct),
        )
        log_arg = np.log(num) - np.log(np.abs(s + k))
        hs = np.where(collinear, 1.0, h)
        general = R - k * np.arcsinh(s / hs) - sqW * log_arg

        kl = np.where(k == 0, 0.0, k * np.log(np.abs(k)))
        line = np.sign(s) * (s - k * np.log(np.abs(s + k))) - np.where(s < 0, 2 * kl, 0.0)
        line = np.where(s == 0, -kl, line)
        return gamma * np.where(collinear, line, general)


def definite_integral(px, py, ux, uy, dx, dy, a0, gamma, t0, t1):
    """Integral of ``|p2 - p1| / (a0 + gamma * t)`` for ``t`` in ``[t0, t1]``.

    ``p1 = (px, py)`` is fixed, ``p2 = (ux, uy) + t * (dx, dy)`` with a unit
    direction. All arguments broadcast; no validity checks are made, and the
    result is ``nan``/``inf`` where the closed form breaks down.
    """
    m, h, k, collinear = _line_frame(px, py, ux, uy, dx, dy, a0, gamma)
    return _primitive(t1 + m, h, k, gamma, collinear) - _primitive(t0 + m, h, k, gamma, collinear)


def antiderivative_F(params: AuxParams, ell1, ell2):
    """Closed-form antiderivative of ``aux_f`` with respect to ``ell2``.

    Defined up to an additive constant; only differences are meaningful.
    """
    ell1 = np.asarray(ell1, dtype=float)
    ell2 = np.asarray(ell2, dtype=float)
    px = params.u1[0] + ell1 * params.dir1[0]
    py = params.u1[1] + ell1 * params.dir1[1]
    a0 = params.alpha + params.beta * ell1
    m, h, k, collinear = _line_frame(px, py, params.u2[0], params.u2[1],
                                     params.dir2[0], params.dir2[1], a0, params.gamma)
    if np.any(a0 + params.gamma * ell2 <= 0):
        raise NonPositiveDenominator("integrand denominator is not positive")
    out = _primitive(ell2 + m, h, k, params.gamma, collinear)
    if not np.all(np.isfinite(out)):
        raise BranchUndefined("closed form is undefined for this configuration")
    return float(out) if out.ndim == 0 else out
