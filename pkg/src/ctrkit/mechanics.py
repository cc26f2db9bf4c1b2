"""In-plane equilibrium of overlapping precurved tubes and planar shape synthesis.

Nested tubes aligned in a common bending plane settle at the
stiffness-weighted mean of their precurvatures. Along a tube assembly the
set of tubes (and sections) present changes at each section transition,
so the centerline is a chain of constant-curvature arcs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .tube import GEOM_TOL, Tube, bending_stiffness, validate_nesting


@dataclass(frozen=True)
class StiffnessTerm:
    stiffness: float  # E*I, N*mm^2
    precurvature: float  # 1/mm

    def __post_init__(self):
        if not self.stiffness > 0:
            raise ValueError("stiffness must be > 0")


@dataclass(frozen=True)
class Arc:
    curvature: float
    length: float

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("arc length must be >= 0")
        if not abs(self.curvature) * self.length < 2 * math.pi:
            raise ValueError("arc closes on itself (|curvature| * length >= 2*pi)")

    @property
    def radius(self) -> float:
        return math.inf if self.curvature == 0 else 1.0 / self.curvature


@dataclass(frozen=True)
class PlanarShape:
    arcs: tuple[Arc, ...]

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))

    @property
    def length(self) -> float:
        return sum(a.length for a in self.arcs)


@dataclass(frozen=True)
class PairEquilibrium:
    curvature: float
    radius: float  # signed; inf when straight
    straight: bool


def equilibrium_curvature(terms: Sequence[StiffnessTerm]) -> float:
    """Stiffness-weighted mean precurvature of tubes sharing one segment."""
    if not terms:
        raise ValueError("no tubes in segment")
    num = 0.0
    den = 0.0
    for t in terms:
        num += t.stiffness * t.precurvature
        den += t.stiffness
    kappa = num / den
    # keep the weighted mean inside its convex hull despite rounding
    lo = min(t.precurvature for t in terms)
    hi = max(t.precurvature for t in terms)
    return min(max(kappa, lo), hi)


def equilibrium_radius_pair(outer: Tube, inner: Tube, min_clearance: float | None = None) -> PairEquilibrium:
    """Equilibrium of two tubes whose curved sections fully overlap."""
    report = validate_nesting([outer, inner], min_clearance)
    if not report.ok:
        raise ValueError("; ".join(report.failures()))
    kappa = equilibrium_curvature(
        [
            StiffnessTerm(bending_stiffness(outer), outer.precurvature),
            StiffnessTerm(bending_stiffness(inner), inner.precurvature),
        ]
    )
    # cancellation residue of opposite precurvatures counts as straight
    if abs(kappa) <= 1e-12 * max(abs(outer.precurvature), abs(inner.precurvature)):
        return PairEquilibrium(0.0, math.inf, True)
    return PairEquilibrium(kappa, 1.0 / kappa, False)


def compose_shape(tube_set, insertions: Sequence[float]) -> PlanarShape:
    """Piecewise-constant-curvature centerline of an in-plane tube assembly.

    ``insertions[i]`` is how far tube ``i`` extends beyond the base (s = 0);
    its curved section is the distal ``curved_len`` of that extent. Exposed
    lengths must not increase from outer to inner tube.
    """
    tubes = list(tube_set)
    if not tubes:
        raise ValueError("empty tube set")
    if len(insertions) != len(tubes):
        raise ValueError("need one exposed length per tube")
    ext = [float(e) for e in insertions]
    for t, e in zip(tubes, ext):
        if e < 0 or e > t.total_len + GEOM_TOL:
            raise ValueError("exposed length must lie within [0, tube length]")
    for a, b in zip(ext, ext[1:]):
        if b > a + GEOM_TOL:
            raise ValueError("non-telescoping configuration")

    marks = {0.0}
    for t, e in zip(tubes, ext):
        marks.add(e)
        marks.add(max(e - t.curved_len, 0.0))
    s = sorted(marks)

    stiff = [bending_stiffness(t) for t in tubes]
    arcs = []
    for a, b in zip(s, s[1:]):
        if b - a <= GEOM_TOL:
            continue
        mid = 0.5 * (a + b)
        terms = []
        for t, e, ei in zip(tubes, ext, stiff):
            if mid < e:
                curved = mid >= e - t.curved_len
                terms.append(StiffnessTerm(ei, t.precurvature if curved else 0.0))
        if not terms:
            break
        arcs.append(Arc(equilibrium_curvature(terms), b - a))
    return PlanarShape(tuple(arcs))


def sample_shape(shape: PlanarShape, step: float) -> np.ndarray:
    """Sample the centerline; rows are ``(s, x, y, kappa)``.

    Starts at the origin heading along +x. Each arc is split into
    ``ceil(length / step)`` equal pieces, so spacing never exceeds ``step``.
    """
    if not step > 0:
        raise ValueError("step must be > 0")
    rows = [(0.0, 0.0, 0.0, shape.arcs[0].curvature if shape.arcs else 0.0)]
    x = y = theta = s0 = 0.0
    for arc in shape.arcs:
        if arc.length == 0:
            continue
        n = max(1, math.ceil(arc.length / step - 1e-12))
        k = arc.curvature
        c0, s_0 = math.cos(theta), math.sin(theta)
        for j in range(1, n + 1):
            u = arc.length * j / n
            if k == 0:
                px, py = x + u * c0, y + u * s_0
            else:
                px = x + (math.sin(theta + k * u) - s_0) / k
                py = y - (math.cos(theta + k * u) - c0) / k
            rows.append((s0 + u, px, py, k))
        x, y = rows[-1][1], rows[-1][2]
        theta += k * arc.length
        s0 += arc.length
    return np.array(rows, dtype=float)


def arc_points(shape: PlanarShape, step: float) -> np.ndarray:
    """(N, 2) array of centerline points with spacing <= ``step``."""
    return sample_shape(shape, step)[:, 1:3]
