import math

import numpy as np
import pytest

from straightedge.graph import build_graph
from straightedge.paths import make_provider


def floyd_warshall(g):
    """Independent all-pairs oracle, dense numpy relaxation."""
    d = np.full((g.n, g.n), np.inf)
    np.fill_diagonal(d, 0.0)
    for (u, v), length in zip(g.edges.tolist(), g.lengths.tolist()):
        d[u, v] = d[v, u] = min(d[u, v], length)
    for k in range(g.n):
        d = np.minimum(d, d[:, k:k + 1] + d[k:k + 1, :])
    return d


def l_graph():
    return build_graph([(0, 0), (1, 0), (1, 1)], [(0, 1), (1, 2)])


def unit_square():
    return build_graph([(0, 0), (1, 0), (1, 1), (0, 1)], [(0, 1), (1, 2), (2, 3), (0, 3)])


def collinear_path(spacings):
    xs = np.concatenate([[0.0], np.cumsum(spacings)])
    return build_graph([(x, 0.0) for x in xs], [(i, i + 1) for i in range(len(spacings))])


def two_unit_edges():
    return build_graph([(0, 0), (1, 0), (5, 5), (6, 5)], [(0, 1), (2, 3)])


def single_edge(length=1.0):
    return build_graph([(0, 0), (length, 0)], [(0, 1)])


def petersen():
    outer = [(math.cos(2 * math.pi * i / 5), math.sin(2 * math.pi * i / 5)) for i in range(5)]
    inner = [(0.5 * x, 0.5 * y) for x, y in outer]
    edges = [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(outer + inner, edges)


def grid_with_diagonals():
    coords = [(c, r) for r in range(5) for c in range(5)]
    edges = [(r * 5 + c, r * 5 + c + 1) for r in range(5) for c in range(4)]
    edges += [(r * 5 + c, (r + 1) * 5 + c) for r in range(4) for c in range(5)]
    edges += [(r * 5 + c, (r + 1) * 5 + c + 1) for r in range(4) for c in range(4)]
    edges += [(1, 5), (4, 8), (16, 20), (19, 23)]
    return build_graph(coords, edges)


def route_minimum(g, dist, p1, p2):
    """Shortest of the four routes through the end-vertices of both edges."""
    (u1, v1), l1 = p1.edge, p1.ell
    (u2, v2), l2 = p2.edge, p2.ell
    L1, L2 = g.length(p1.edge), g.length(p2.edge)
    if tuple(p1.edge) == tuple(p2.edge):
        return abs(l1 - l2)
    return min(
        l1 + dist[u1, u2] + l2,
        l1 + dist[u1, v2] + L2 - l2,
        L1 - l1 + dist[v1, u2] + l2,
        L1 - l1 + dist[v1, v2] + L2 - l2,
    )


@pytest.fixture
def lg():
    return l_graph()


@pytest.fixture
def square():
    return unit_square()


@pytest.fixture
def provider():
    return make_provider


SQRT2 = math.sqrt(2)
# Confirmed with two independent scipy quadratures (1-D and 2-D).
L_GRAPH_POINT_EDGE = 0.7792904556340131
L_GRAPH_POINT_GRAPH = (1 + L_GRAPH_POINT_EDGE) / 2


def _unit(rng):
    a = rng.uniform(0, 2 * math.pi)
    return (math.cos(a), math.sin(a))


def random_aux_case(rng, collinear_share=0.15):
    """Random integrand parameters, a fixed ``ell1`` and an interval on the target.

    ``alpha`` is chosen so the denominator dominates the numerator on the
    interval, as a graph distance dominates the Euclidean one.
    """
    from straightedge.auxfun import AuxParams

    u1, dir1 = tuple(rng.uniform(-1, 1, 2)), _unit(rng)
    ell1 = float(rng.uniform(0, 2))
    p1 = np.array(u1) + ell1 * np.array(dir1)
    dir2 = _unit(rng)
    if rng.random() < collinear_share:
        u2 = tuple(p1 - rng.uniform(-2, 2) * np.array(dir2))
    else:
        u2 = tuple(rng.uniform(-1, 1, 2))
    len2 = float(rng.uniform(0.05, 2))
    a, b = sorted(rng.uniform(0, len2, 2))
    if rng.random() < 0.3:
        a, b = 0.0, len2
    beta, gamma = int(rng.choice([-1, 1])), int(rng.choice([-1, 1]))
    ts = np.linspace(a, b, 2001)
    num = np.hypot(u2[0] + ts * dir2[0] - p1[0], u2[1] + ts * dir2[1] - p1[1])
    need = np.max(num - beta * ell1 - gamma * ts) + (b - a) / 1000
    alpha = max(need, beta * -ell1 + 1e-3, 0.0) + float(rng.uniform(1e-3, 1.0))
    params = AuxParams(float(alpha), beta, gamma, u1, dir1, u2, dir2)
    return params, ell1, float(a), float(b)


def quad_oracle(params, ell1, a, b):
    """Adaptive quadrature of the integrand with the kink of |p2 - p1| as a knot."""
    from scipy.integrate import quad

    from straightedge.auxfun import aux_f

    p1 = np.array(params.u1) + ell1 * np.array(params.dir1)
    foot = -float(np.dot(np.array(params.u2) - p1, params.dir2))
    points = [foot] if a < foot < b else None
    value, _ = quad(lambda t: aux_f(params, ell1, t), a, b, points=points,
                    epsabs=1e-15, epsrel=1e-13, limit=400)
    return value


# Acceptance results, printed as one line per criterion at the end of the run.
ACCEPTANCE: dict[int, str] = {}


def record(criterion: int, passed: bool, detail: str) -> bool:
    ACCEPTANCE[criterion] = f"criterion {criterion:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
    return passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
