"""Grid search over printable tube pairs for a target equilibrium radius."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import numpy as np

from . import _backend
from .tube import (
    GEOM_TOL,
    NYLON12_MJF,
    Material,
    Tube,
    bending_stiffness,
    clearance_ok,
    diametral_clearance,
    straightening_strain,
)


@dataclass(frozen=True)
class DesignConstraints:
    od_min: float = 2.2
    od_max: float = 6.0
    wall_min: float = 0.6
    min_clearance: float = 0.4
    max_recoverable_strain: float = 0.02
    radius_min: float = 20.0
    radius_max: float = 100.0
    curved_len: float = 50.0

    def __post_init__(self):
        if not self.od_min <= self.od_max:
            raise ValueError("constraints: od_min must be <= od_max")
        if not self.wall_min > 0:
            raise ValueError("constraints: wall_min must be > 0")
        if self.min_clearance < 0:
            raise ValueError("constraints: min_clearance must be >= 0")
        if not 0 < self.max_recoverable_strain < 1:
            raise ValueError("constraints: max_recoverable_strain must lie in (0, 1)")
        if not 0 < self.radius_min <= self.radius_max:
            raise ValueError("constraints: require 0 < radius_min <= radius_max")
        if self.curved_len < 0:
            raise ValueError("constraints: curved_len must be >= 0")


@dataclass(frozen=True)
class DesignGrid:
    """Explicit per-tube candidate values.

    Radii are unsigned; ``include_straight`` adds a straight tube option.
    """

    od_values: tuple[float, ...]
    wall_values: tuple[float, ...]
    radius_values: tuple[float, ...]
    include_straight: bool = True

    def __post_init__(self):
        for name in ("od_values", "wall_values", "radius_values"):
            vals = tuple(float(v) for v in getattr(self, name))
            if any(not v > 0 for v in vals):
                raise ValueError("invalid grid")
            object.__setattr__(self, name, vals)

    @classmethod
    def from_steps(
        cls,
        c: DesignConstraints,
        od_step: float = 0.2,
        wall_step: float = 0.2,
        n_radii: int = 16,
        wall_max: float | None = None,
        include_straight: bool = True,
    ) -> "DesignGrid":
        """Regular od/wall grids from the constraint minima and a log-spaced radius grid."""
        if not (od_step > 0 and wall_step > 0 and n_radii >= 1):
            raise ValueError("invalid grid")
        wall_max = c.wall_min if wall_max is None else wall_max
        return cls(
            _steps(c.od_min, c.od_max, od_step),
            _steps(c.wall_min, wall_max, wall_step),
            log_radii(c.radius_min, c.radius_max, n_radii),
            include_straight,
        )

    @property
    def n_tubes(self) -> int:
        return len(self.od_values) * len(self.wall_values) * (
            len(self.radius_values) + self.include_straight
        )


def _steps(lo, hi, step):
    n = int(math.floor((hi - lo) / step + 1e-9))
    return tuple(round(lo + i * step, 9) for i in range(n + 1))


def log_radii(lo, hi, n):
    if n == 1 or lo == hi:
        return (float(lo),)
    vals = np.geomspace(lo, hi, n)
    vals[0], vals[-1] = lo, hi
    return tuple(float(v) for v in vals)


@dataclass(frozen=True)
class FeasibilityReport:
    failures: tuple[str, ...] = ()
    ok: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "ok", not self.failures)


@dataclass(frozen=True)
class CandidateDesign:
    outer: Tube
    inner: Tube
    predicted_equilibrium_radius: float  # inf when straight
    straightening_strain_inner: float
    straightening_strain_outer: float
    score: float

    def sort_key(self):
        return (
            self.score,
            self.outer.od,
            self.inner.od,
            abs(self.outer.radius),
            self.outer.wall,
            self.inner.wall,
            abs(self.inner.radius),
        )


def _tube_failures(tube, c, label):
    out = []
    if not c.od_min - GEOM_TOL <= tube.od <= c.od_max + GEOM_TOL:
        out.append(f"{label} od {tube.od:g} outside [{c.od_min:g}, {c.od_max:g}]")
    if tube.wall < c.wall_min - GEOM_TOL:
        out.append(f"{label} wall {tube.wall:g} < {c.wall_min:g}")
    eps = straightening_strain(tube)
    if eps > c.max_recoverable_strain + GEOM_TOL:
        out.append(
            f"{label} straightening strain {eps:.4f} > {c.max_recoverable_strain:.4f}"
        )
    if tube.precurvature != 0:
        r = abs(tube.radius)
        if not c.radius_min - GEOM_TOL <= r <= c.radius_max + GEOM_TOL:
            out.append(f"{label} radius {r:g} outside [{c.radius_min:g}, {c.radius_max:g}]")
    return out


def _tube_ok(tube, c):
    return not _tube_failures(tube, c, "")


def check_feasibility(outer: Tube, inner: Tube, c: DesignConstraints) -> FeasibilityReport:
    """Evaluate every printability, nesting and strain predicate for a pair."""
    fails = _tube_failures(outer, c, "outer") + _tube_failures(inner, c, "inner")
    if not clearance_ok(outer, inner, c.min_clearance):
        fails.append(
            f"clearance {diametral_clearance(outer, inner):.3f} < {c.min_clearance:.3f}"
        )
    if outer.material != inner.material:
        fails.append("tubes do not share a material")
    return FeasibilityReport(tuple(fails))


def score(candidate_prediction: float, target: float) -> float:
    """Curvature-space error between a predicted and a target curvature."""
    return abs(candidate_prediction - target)


def _grid_tubes(grid: DesignGrid, c: DesignConstraints, material: Material) -> list[Tube]:
    radii = list(grid.radius_values) + ([math.inf] if grid.include_straight else [])
    tubes = []
    for od in grid.od_values:
        for wall in grid.wall_values:
            if wall > od / 2 + GEOM_TOL:
                continue
            for r in radii:
                k = 0.0 if math.isinf(r) else 1.0 / r
                if abs(k) * od / 2 >= 1:
                    continue
                t = Tube(od, wall, k, c.curved_len, 0.0, material)
                if _tube_ok(t, c):
                    tubes.append(t)
    return tubes


def enumerate_designs(
    target_radius: float,
    c: DesignConstraints,
    grid: DesignGrid,
    material: Material = NYLON12_MJF,
    workers: int = 1,
) -> list[CandidateDesign]:
    """All feasible grid pairs, best match to ``target_radius`` first.

    Sorted by curvature error, then outer od, inner od, outer radius (and
    walls and inner radius as final tie-breakers). ``workers > 1`` splits
    the outer-tube range across threads; the merged list is identical to
    the serial one.
    """
    if not target_radius > 0:
        raise ValueError("target radius must be > 0")
    tubes = _grid_tubes(grid, c, material)
    if not tubes:
        return []
    od = np.array([t.od for t in tubes])
    wall = np.array([t.wall for t in tubes])
    curv = np.array([t.precurvature for t in tubes])
    stiff = np.array([bending_stiffness(t) for t in tubes])
    strain = [straightening_strain(t) for t in tubes]
    target = 1.0 / target_radius
    n = len(tubes)

    def scan(bounds):
        return _backend.pair_scan(od, wall, curv, stiff, c.min_clearance, target, *bounds)

    workers = max(1, min(int(workers), n))
    edges = np.linspace(0, n, workers + 1).astype(int)
    chunks = [(int(a), int(b)) for a, b in zip(edges, edges[1:]) if b > a]
    if workers == 1:
        parts = [scan(ch) for ch in chunks]
    else:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(scan, chunks))

    oi = np.concatenate([np.asarray(p[0], dtype=np.intp) for p in parts])
    ii = np.concatenate([np.asarray(p[1], dtype=np.intp) for p in parts])
    kap = np.concatenate([np.asarray(p[2], dtype=float) for p in parts])
    sc = np.concatenate([np.asarray(p[3], dtype=float) for p in parts])
    if not len(oi):
        return []
    # same straight rule as equilibrium_radius_pair
    kmax = np.maximum(np.abs(curv[oi]), np.abs(curv[ii]))
    straight = np.abs(kap) <= 1e-12 * kmax
    with np.errstate(divide="ignore"):
        pred = np.where(straight, np.inf, 1.0 / np.where(straight, 1.0, kap))
    abs_r = np.where(curv == 0, np.inf, np.abs(1.0 / np.where(curv == 0, 1.0, curv)))
    # lexsort keys are given last-to-first; matches CandidateDesign.sort_key
    order = np.lexsort((abs_r[ii], wall[ii], wall[oi], abs_r[oi], od[ii], od[oi], sc))
    return [
        CandidateDesign(tubes[i], tubes[j], r, strain[j], strain[i], s)
        for i, j, r, s in zip(oi[order].tolist(), ii[order].tolist(), pred[order].tolist(), sc[order].tolist())
    ]
