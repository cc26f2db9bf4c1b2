"""Circle fits to digitized centerline points and radius error statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

COLLINEAR_TOL = 1e-9  # twice the triangle area, mm^2


class Point2(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class CircleFit:
    center: Point2
    radius: float
    rms_residual: float
    n_points: int


def _as_array(points) -> np.ndarray:
    if isinstance(points, np.ndarray):
        pts = points.astype(float, copy=False).reshape(-1, 2)
    else:
        pts = np.asarray([tuple(p) for p in points], dtype=float).reshape(-1, 2)
    if not np.all(np.isfinite(pts)):
        raise ValueError("non-finite coordinates")
    return pts


def _rms_radial(pts: np.ndarray, cx: float, cy: float, r: float) -> float:
    d = np.hypot(pts[:, 0] - cx, pts[:, 1] - cy) - r
    return float(np.sqrt(np.mean(d * d)))


def circumcircle(p1, p2, p3) -> CircleFit:
    """The circle through three points."""
    (ax, ay), (bx, by), (cx, cy) = p1, p2, p3
    if (ax, ay) == (bx, by) or (ax, ay) == (cx, cy) or (bx, by) == (cx, cy):
        raise ValueError("duplicate points")
    # work relative to the first point
    bx, by, cx, cy = bx - ax, by - ay, cx - ax, cy - ay
    d = 2.0 * (bx * cy - by * cx)
    if abs(d) < COLLINEAR_TOL:
        raise ValueError("collinear points")
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    center = Point2(ax + ux, ay + uy)
    r = math.hypot(ux, uy)
    res = [math.hypot(px - center.x, py - center.y) - r for px, py in (p1, p2, p3)]
    return CircleFit(center, r, math.sqrt(sum(d * d for d in res) / 3), 3)


def fit_circle_lsq(points: Iterable[Sequence[float]]) -> CircleFit:
    """Algebraic least-squares circle.

    Minimizes ``sum((x^2 + y^2 + D x + E y + F)^2)`` over (D, E, F). On
    centroid-centered coordinates F drops out of the normal equations,
    leaving a 2x2 system for the center. ``rms_residual`` reports
    geometric radial residuals.
    """
    pts = _as_array(points)
    n = len(pts)
    if n < 3:
        raise ValueError("insufficient points")
    mean = pts.mean(axis=0)
    u = pts[:, 0] - mean[0]
    v = pts[:, 1] - mean[1]
    uu, vv = u @ u, v @ v
    uv = u @ v
    w = u * u + v * v
    bu, bv = 0.5 * (u @ w), 0.5 * (v @ w)
    det = uu * vv - uv * uv
    if not det > 1e-12 * (uu + vv) ** 2:
        raise ValueError("degenerate configuration")
    uc = (bu * vv - bv * uv) / det
    vc = (bv * uu - bu * uv) / det
    r = math.sqrt(uc * uc + vc * vc + (uu + vv) / n)
    cx, cy = float(uc + mean[0]), float(vc + mean[1])
    return CircleFit(Point2(cx, cy), r, _rms_radial(pts, cx, cy, r), n)


def radius_rmse(predicted_radius: float, measured_radii: Sequence[float]) -> float:
    m = np.asarray(measured_radii, dtype=float)
    if m.size == 0:
        raise ValueError("no measurements")
    d = m - predicted_radius
    return float(np.sqrt(np.mean(d * d)))
