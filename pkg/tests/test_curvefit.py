import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ctrkit import Point2, circumcircle, fit_circle_lsq, radius_rmse


def on_circle(cx, cy, r, degrees):
    a = np.radians(np.asarray(degrees, dtype=float))
    return np.column_stack([cx + r * np.cos(a), cy + r * np.sin(a)])


def geometric_fit_grid(pts, c0, half_width, levels=8, n=41):
    """Brute-force geometric circle fit: shrinking grid over the center,
    best radius for a center is the mean distance."""
    best = np.asarray(c0, dtype=float)
    w = half_width
    for _ in range(levels):
        xs = np.linspace(best[0] - w, best[0] + w, n)
        ys = np.linspace(best[1] - w, best[1] + w, n)
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        d = np.hypot(pts[:, 0][None, None, :] - X[..., None], pts[:, 1][None, None, :] - Y[..., None])
        cost = np.sum((d - d.mean(axis=-1, keepdims=True)) ** 2, axis=-1)
        i, j = np.unravel_index(np.argmin(cost), cost.shape)
        best = np.array([xs[i], ys[j]])
        w *= 4.0 / (n - 1)
    r = np.hypot(pts[:, 0] - best[0], pts[:, 1] - best[1]).mean()
    return best, r


def test_circumcircle_symmetric():
    f = circumcircle((0, 0), (2, 0), (1, 1))
    assert f.center.x == pytest.approx(1.0, abs=1e-12)
    assert f.center.y == pytest.approx(0.0, abs=1e-12)
    assert f.radius == pytest.approx(1.0, abs=1e-12)
    assert f.rms_residual < 1e-12 and f.n_points == 3


def test_circumcircle_generated():
    p = on_circle(5, -3, 28.26, [10, 40, 80])
    f = circumcircle(*p)
    assert abs(f.center.x - 5) < 1e-9 and abs(f.center.y + 3) < 1e-9
    assert abs(f.radius - 28.26) < 1e-9


def test_circumcircle_errors():
    with pytest.raises(ValueError, match="collinear points"):
        circumcircle((0, 0), (1, 0), (2, 0))
    with pytest.raises(ValueError, match="duplicate points"):
        circumcircle((0, 0), (0, 0), (2, 1))


def test_lsq_exact_points():
    f = fit_circle_lsq(on_circle(0, 0, 28.26, np.linspace(0, 340, 20)))
    assert f.radius == pytest.approx(28.26, abs=1e-9)
    assert f.rms_residual < 1e-9
    assert f.n_points == 20


def test_lsq_three_points_equals_circumcircle():
    p = on_circle(1.5, 2.0, 40.0, [5, 20, 33])
    a, b = fit_circle_lsq(p), circumcircle(*p)
    assert abs(a.radius - b.radius) < 1e-9
    assert abs(a.center.x - b.center.x) < 1e-9 and abs(a.center.y - b.center.y) < 1e-9


def test_lsq_noisy_against_geometric_oracle():
    rng = np.random.default_rng(2024)
    ang = np.radians(np.linspace(-30, 30, 50))
    r = 54.7 + rng.uniform(-0.1, 0.1, 50)
    pts = np.column_stack([r * np.cos(ang), r * np.sin(ang)])
    f = fit_circle_lsq(pts)
    c_ref, r_ref = geometric_fit_grid(pts, (0.0, 0.0), 10.0)
    assert abs(f.radius - r_ref) < 0.5
    assert abs(r_ref - 54.7) < 1.0
    # reported residual is geometric
    d = np.hypot(pts[:, 0] - f.center.x, pts[:, 1] - f.center.y) - f.radius
    assert f.rms_residual == pytest.approx(math.sqrt(np.mean(d**2)), rel=1e-12)


def test_lsq_errors():
    with pytest.raises(ValueError, match="insufficient points"):
        fit_circle_lsq([(0, 0), (1, 1)])
    with pytest.raises(ValueError, match="degenerate configuration"):
        fit_circle_lsq([(0, 0), (1, 1), (2, 2), (3, 3)])
    with pytest.raises(ValueError, match="degenerate configuration"):
        fit_circle_lsq([(1, 1)] * 4)


def test_accepts_point2():
    f = fit_circle_lsq([Point2(0, 0), Point2(2, 0), Point2(1, 1)])
    assert f.radius == pytest.approx(1.0)


@given(st.permutations([0, 1, 2]))
def test_circumcircle_permutation(perm):
    p = on_circle(3, 4, 17.0, [12, 47, 95])
    a = circumcircle(*p)
    b = circumcircle(*p[list(perm)])
    assert abs(a.radius - b.radius) < 1e-12 * 17
    assert abs(a.center.x - b.center.x) < 1e-12 * 17 and abs(a.center.y - b.center.y) < 1e-12 * 17


@settings(max_examples=200)
@given(st.floats(1.0, 500.0), st.floats(10.0, 350.0), st.floats(0, 360), st.integers(3, 60))
def test_lsq_zero_noise_recovery(r, span, start, n):
    f = fit_circle_lsq(on_circle(7, -2, r, np.linspace(start, start + span, n)))
    assert f.radius == pytest.approx(r, rel=1e-6)


@given(st.floats(-100, 100), st.floats(-100, 100), st.floats(0, 2 * math.pi), st.floats(0.1, 10.0))
def test_rigid_and_scale_equivariance(tx, ty, th, c):
    p = on_circle(1, 2, 30.0, [0, 25, 50, 70]) + np.array([[0.05, 0], [0, -0.04], [0.02, 0.03], [0, 0]])
    R = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
    q = p @ R.T + [tx, ty]
    for fit in (fit_circle_lsq, lambda pts: circumcircle(*pts[:3])):
        a, b = fit(p), fit(q)
        assert b.radius == pytest.approx(a.radius, abs=1e-9)
        expect = R @ np.array(a.center) + [tx, ty]
        assert np.allclose(b.center, expect, atol=1e-9, rtol=0)
        s = fit(p * c)
        assert s.radius == pytest.approx(c * a.radius, rel=1e-9)


def test_radius_rmse_examples():
    assert radius_rmse(54.7, [54.7] * 11) == 0
    assert radius_rmse(54.7, [56.4, 53.0]) == pytest.approx(1.7, abs=1e-12)
    m = [36.4 + (0.8 if i % 2 else -0.8) for i in range(11)]
    assert radius_rmse(36.4, m) == pytest.approx(0.8, abs=1e-12)
    with pytest.raises(ValueError, match="no measurements"):
        radius_rmse(1.0, [])


@given(st.lists(st.floats(10, 100), min_size=1, max_size=20), st.randoms())
def test_radius_rmse_permutation(vals, rnd):
    shuffled = list(vals)
    rnd.shuffle(shuffled)
    assert radius_rmse(50.0, shuffled) == pytest.approx(radius_rmse(50.0, vals), rel=1e-12)
    assert (radius_rmse(50.0, vals) == 0) == all(v == 50.0 for v in vals)
