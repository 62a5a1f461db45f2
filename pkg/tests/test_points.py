import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import collinear_path, floyd_warshall, l_graph, route_minimum, two_unit_edges, unit_square
from straightedge.errors import Disconnected, SameEdge
from straightedge.generators import random_planar, spatial_erdos_renyi
from straightedge.graph import EdgeKey, PointRef, build_graph, euclidean_between_points
from straightedge.paths import make_provider
from straightedge.points import (
    break_even_point,
    break_even_vertex,
    graph_distance_points,
    graph_distance_vertex_point,
    straightness_points,
)


def test_break_even_vertex_examples():
    path = collinear_path([1, 1])
    assert break_even_vertex(path, make_provider(path), 0, (1, 2)).lam == 1.0
    tri = build_graph([(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)], [(0, 1), (1, 2), (0, 2)])
    assert break_even_vertex(tri, make_provider(tri), 2, (0, 1)).lam == pytest.approx(0.5, abs=1e-15)
    sq = unit_square()
    assert break_even_vertex(sq, make_provider(sq), 0, (2, 3)).lam == 0.0


def test_break_even_vertex_disconnected():
    g = two_unit_edges()
    with pytest.raises(Disconnected):
        break_even_vertex(g, make_provider(g), 0, (2, 3))


def test_break_even_is_clamped_with_raw_kept():
    # Target far along a chain: the raw value lands beyond the edge.
    g = collinear_path([1, 1])
    be = break_even_vertex(g, make_provider(g), 0, (1, 2))
    assert be.lam == 1.0 and be.raw == 1.0 and not be.clamped


def test_graph_distance_vertex_point_examples():
    sq = unit_square()
    dp = make_provider(sq)
    assert graph_distance_vertex_point(sq, dp, 0, PointRef(EdgeKey(2, 3), 0.3)) == pytest.approx(1.7)
    assert graph_distance_vertex_point(sq, dp, 0, PointRef(EdgeKey(2, 3), 0.0)) == 2.0
    path = collinear_path([1, 1])
    assert graph_distance_vertex_point(path, make_provider(path), 0, PointRef(EdgeKey(1, 2), 0.5)) == 1.5
    g = two_unit_edges()
    assert math.isinf(graph_distance_vertex_point(g, make_provider(g), 0, PointRef(EdgeKey(2, 3), 0.5)))


def test_break_even_point_l_graph():
    g = l_graph()
    be = break_even_point(g, make_provider(g), PointRef(EdgeKey(0, 1), 0.0), (1, 2))
    assert (be.lam, be.case) == (1.0, 1)


def test_break_even_point_h_graph_is_midpoint():
    coords = [(0, 0), (0, 1), (0, 2), (2, 0), (2, 1), (2, 2)]
    g = build_graph(coords, [(0, 1), (1, 2), (3, 4), (4, 5), (1, 4), (0, 3)])
    be = break_even_point(g, make_provider(g), PointRef(EdgeKey(1, 4), 1.0), (0, 3))
    assert be.lam == pytest.approx(1.0, abs=1e-15)


def test_break_even_point_errors():
    g = l_graph()
    dp = make_provider(g)
    with pytest.raises(SameEdge):
        break_even_point(g, dp, PointRef(EdgeKey(0, 1), 0.4), (0, 1))
    with pytest.raises(SameEdge):
        break_even_point(g, dp, PointRef(EdgeKey(0, 1), 1.0), (1, 2))
    h = two_unit_edges()
    with pytest.raises(Disconnected):
        break_even_point(h, make_provider(h), PointRef(EdgeKey(0, 1), 0.4), (2, 3))


def test_square_break_even_against_scan():
    sq = unit_square()
    dp = make_provider(sq)
    p1 = PointRef(EdgeKey(0, 1), 0.5)
    be = break_even_point(sq, dp, p1, (2, 3))
    dist = floyd_warshall(sq)
    ts = np.linspace(0, 1, 10_000)
    via_u = np.array([min(0.5 + dist[0, 2], 0.5 + dist[1, 2]) + t for t in ts])
    via_v = np.array([min(0.5 + dist[0, 3], 0.5 + dist[1, 3]) + 1 - t for t in ts])
    # Break-even is where the two route families cross.
    cross = ts[np.argmin(np.abs(via_u - via_v))]
    assert be.lam == pytest.approx(cross, abs=1e-4)
    for t in ts[::50]:
        d = graph_distance_points(sq, dp, p1, PointRef(EdgeKey(2, 3), float(t)))
        assert d == pytest.approx(min(via_u[int(round(t * 9999))], via_v[int(round(t * 9999))]), abs=1e-9)


def test_graph_distance_points_examples():
    g = collinear_path([1])
    dp = make_provider(g)
    e = EdgeKey(0, 1)
    assert graph_distance_points(g, dp, PointRef(e, 0.2), PointRef(e, 0.9)) == pytest.approx(0.7)
    sq = unit_square()
    d = graph_distance_points(sq, make_provider(sq), PointRef(EdgeKey(0, 1), 0.0), PointRef(EdgeKey(2, 3), 0.5))
    assert d == 1.5
    h = two_unit_edges()
    assert math.isinf(graph_distance_points(h, make_provider(h), PointRef(EdgeKey(0, 1), 0.0),
                                            PointRef(EdgeKey(2, 3), 0.5)))


def test_straightness_points_examples():
    sq = unit_square()
    dp = make_provider(sq)
    s = straightness_points(sq, dp, PointRef(EdgeKey(0, 1), 0.0), PointRef(EdgeKey(2, 3), 0.5))
    assert s == pytest.approx(math.sqrt(1.25) / 1.5, rel=1e-14)
    e = EdgeKey(0, 1)
    assert straightness_points(sq, dp, PointRef(e, 0.1), PointRef(e, 0.8)) == 1.0
    assert straightness_points(sq, dp, PointRef(e, 0.3), PointRef(e, 0.3)) == 1.0
    h = two_unit_edges()
    assert straightness_points(h, make_provider(h), PointRef(e, 0.0), PointRef(EdgeKey(2, 3), 0.5)) == 0.0


def _random_point(g, rng):
    i = int(rng.integers(g.m))
    return PointRef(EdgeKey(*g.edges[i].tolist()), float(rng.random() * g.lengths[i]))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 100_000))
def test_distance_matches_route_minimum(seed):
    rng = np.random.default_rng(seed)
    g = random_planar(int(rng.integers(4, 13)), seed)
    dp = make_provider(g)
    dist = floyd_warshall(g)
    for _ in range(40):
        p1, p2 = _random_point(g, rng), _random_point(g, rng)
        got = graph_distance_points(g, dp, p1, p2)
        assert got == pytest.approx(route_minimum(g, dist, p1, p2), abs=1e-12)
        assert got >= euclidean_between_points(g, p1, p2) - 1e-12


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 100_000))
def test_branch_continuity(seed):
    rng = np.random.default_rng(seed)
    g = random_planar(10, seed)
    dp = make_provider(g)
    for _ in range(10):
        r = int(rng.integers(g.n))
        i = int(rng.integers(g.m))
        key = EdgeKey(*g.edges[i].tolist())
        lam = break_even_vertex(g, dp, r, key).lam
        L = g.length(key)
        left = dp.distance(r, key.u) + lam
        right = dp.distance(r, key.v) + L - lam
        if 0 < lam < L:
            assert left == pytest.approx(right, abs=1e-9)
        p1 = _random_point(g, rng)
        j = int(rng.integers(g.m))
        target = EdgeKey(*g.edges[j].tolist())
        try:
            be = break_even_point(g, dp, p1, target)
        except SameEdge:
            continue
        eps = 1e-9
        if eps < be.lam < g.length(target) - eps:
            below = graph_distance_points(g, dp, p1, PointRef(target, be.lam - eps))
            above = graph_distance_points(g, dp, p1, PointRef(target, be.lam + eps))
            assert below == pytest.approx(above, abs=1e-8)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 100_000))
def test_straightness_symmetric_and_bounded(seed):
    rng = np.random.default_rng(seed)
    g = spatial_erdos_renyi(10, 0.3, seed)
    if g.m == 0:
        return
    dp = make_provider(g)
    for _ in range(20):
        p1, p2 = _random_point(g, rng), _random_point(g, rng)
        s12 = straightness_points(g, dp, p1, p2)
        s21 = straightness_points(g, dp, p2, p1)
        assert 0.0 <= s12 <= 1.0 + 1e-15
        assert s12 == pytest.approx(s21, abs=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_vertex_as_point_edge_choice(seed):
    g = random_planar(15, seed)
    dp = make_provider(g)
    rng = np.random.default_rng(seed)
    for v in range(g.n):
        p2 = _random_point(g, rng)
        values = [straightness_points(g, dp, g.vertex_point(v, key), p2) for _, key, _ in g.adjacency[v]]
        assert max(values) - min(values) <= 1e-12


def test_similarity_invariance():
    g = random_planar(15, 9)
    t = g.transformed(angle=1.1, scale=3.7, shift=(-2.0, 5.0))
    dg, dt = make_provider(g), make_provider(t)
    rng = np.random.default_rng(9)
    for _ in range(200):
        i, j = rng.integers(g.m, size=2)
        a, b = rng.random(2)
        e1, e2 = EdgeKey(*g.edges[i].tolist()), EdgeKey(*g.edges[j].tolist())
        s = straightness_points(g, dg, PointRef(e1, a * g.lengths[i]), PointRef(e2, b * g.lengths[j]))
        st_ = straightness_points(t, dt, PointRef(e1, a * t.lengths[i]), PointRef(e2, b * t.lengths[j]))
        assert s == pytest.approx(st_, abs=1e-12)
