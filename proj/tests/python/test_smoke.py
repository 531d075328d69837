"""Smoke tests for the splinex Python extension module."""

import math

import numpy as np
import pytest

splinex = pytest.importorskip("splinex")


def test_bspline_values():
    assert splinex.bspline(0, 0.0) == 1.0
    assert splinex.bspline(3, 0.0) == pytest.approx(2.0 / 3.0)
    vals = splinex.bspline(3, np.array([0.0, 0.5, 1.0, 2.0]))
    assert vals == pytest.approx([2 / 3, 23 / 48, 1 / 6, 0.0])


def test_sample_spline():
    values, lo, hi = splinex.sample_spline(3, 2)
    assert (lo, hi) == (-3, 3)
    assert values[3] == pytest.approx(2.0 / 3.0)


def test_characteristic_function():
    w = np.linspace(0, math.pi, 7)
    assert splinex.characteristic_function(2, w) == pytest.approx(np.ones(7))


def test_eval_periodized():
    assert splinex.eval_periodized(1, 4, 0, 0.0) == pytest.approx(2.0)
    # 1-periodic
    assert splinex.eval_periodized(3, 8, 7, 1.0 / 16) == pytest.approx(
        splinex.eval_periodized(3, 8, 7, 1.0 + 1.0 / 16)
    )
    assert splinex.eval_periodized(3, 8, 7, 1.0 / 16, l2scaled=False) == pytest.approx(
        1.0 / 48
    )


def test_compact_dual_biorthogonality():
    h, K = splinex.compact_dual(3, 2)
    assert K == 2
    b, lo, hi = splinex.sample_spline(3, 2)

    def bval(k):
        return b[k - lo] if lo <= k <= hi else 0.0

    for shift in range(-3, 4):
        s = sum(h[k + K] * bval(k - 2 * shift) for k in range(-K, K + 1))
        assert s == pytest.approx(1.0 if shift == 0 else 0.0, abs=1e-10)


def test_dual_coeffs():
    c = splinex.discrete_dual_coeffs(0, 3, 16)
    assert c[0] == pytest.approx(1.0 / 3.0)
    assert np.abs(c[1:]).max() < 1e-13
    cont = splinex.continuous_dual_coeffs(1, 64)
    ratio = abs(cont[6] / cont[5])
    assert ratio == pytest.approx(2 - math.sqrt(3), abs=1e-2)


def test_fit_1d():
    prob = splinex.Problem("interval:0,0.5", [3], [2], [128])
    pts = prob.points()
    assert pts.shape == (prob.num_points, 1)
    b = np.exp(pts[:, 0])
    fit = prob.fit(b, solver="reduced-az")
    assert fit.residual_norm < 1e-7
    assert fit.x.shape == (128,)
    assert np.linalg.norm(prob.evaluate(fit.x) - b) == pytest.approx(
        fit.residual_norm, rel=1e-9
    )


def test_fit_2d_disk():
    prob = splinex.Problem("disk:0.5,0.5,0.333", [3, 3], [2, 2], [24, 24])
    pts = prob.points()
    b = np.exp(pts[:, 0] * pts[:, 1])
    fit = prob.fit(b, solver="sparse-az")
    assert fit.residual_norm < 1e-4
    assert fit.block_cols > 0
    assert "total_s" in fit.timings


def test_solver_errors():
    prob = splinex.Problem("interval:0,0.5", [3], [2], [64], zdual="gram")
    b = np.ones(prob.num_points)
    with pytest.raises(Exception):
        prob.fit(b, solver="sparse-az")
