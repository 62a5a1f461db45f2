import math

import numpy as np
import pytest

from straightedge.errors import QuadratureNonConvergence
from straightedge.quadrature import QuadratureConfig, integrate, integrate_batch


def test_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(rel_tol=0)
    with pytest.raises(ValueError):
        QuadratureConfig(max_subdivisions=5)
    qc = QuadratureConfig()
    assert (qc.rel_tol, qc.abs_tol, qc.max_subdivisions) == (1e-8, 1e-10, 200)


def test_polynomial_exact():
    val, err = integrate(lambda x: 3 * x**2, 0.0, 2.0)
    assert val == pytest.approx(8.0, rel=1e-14)
    assert err < 1e-12


def test_smooth_function():
    val, _ = integrate(np.exp, -1.0, 1.0)
    assert val == pytest.approx(math.e - 1 / math.e, rel=1e-13)


def test_kink_with_knot():
    val, _ = integrate(lambda x: np.abs(x - 0.3), 0.0, 1.0, points=[0.3])
    assert val == pytest.approx(0.045 + 0.245, rel=1e-14)


def test_kink_without_knot_still_converges():
    val, _ = integrate(lambda x: np.abs(x - 0.3), 0.0, 1.0)
    assert val == pytest.approx(0.29, rel=1e-8)


def test_batch_matches_individual():
    fns = [np.sin, np.cos, lambda x: 1 / (1 + x * x)]
    knots = [[0, 1], [0, 0.5, 2], [-1, 3]]

    def f(ids, x):
        out = np.empty_like(x)
        for j, fn in enumerate(fns):
            sel = ids == j
            out[sel] = fn(x[sel])
        return out

    vals, errs = integrate_batch(f, knots)
    assert vals[0] == pytest.approx(1 - math.cos(1), rel=1e-12)
    assert vals[1] == pytest.approx(math.sin(2), rel=1e-12)
    assert vals[2] == pytest.approx(math.atan(3) + math.atan(1), rel=1e-12)
    assert np.all(errs >= 0)


def test_non_convergence_reports_error_estimate():
    qc = QuadratureConfig(rel_tol=1e-15, abs_tol=1e-300, max_subdivisions=10)
    with pytest.raises(QuadratureNonConvergence) as info:
        integrate(lambda x: 1 / np.sqrt(np.abs(x - 0.31)), 0.0, 1.0, qc)
    assert info.value.error_estimate > 0


def test_deterministic():
    f = lambda x: np.sqrt(x) * np.sin(7 * x)  # noqa: E731
    assert integrate(f, 0, 3) == integrate(f, 0, 3)
