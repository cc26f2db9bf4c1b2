"""Reduction of tensile and fatigue test records to material parameters."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .tube import Tube, fiber_strain

DEFAULT_FIT_WINDOW = 0.005
DEFAULT_DEVIATION_TOL = 0.02


@dataclass(frozen=True)
class StressStrainCurve:
    samples: tuple[tuple[float, float], ...]  # (strain, stress MPa)

    def __post_init__(self):
        s = tuple((float(e), float(p)) for e, p in self.samples)
        object.__setattr__(self, "samples", s)
        if len(s) < 2:
            raise ValueError("stress-strain curve needs >= 2 samples")
        if s[0][0] < 0:
            raise ValueError("strains must be >= 0")
        if any(b[0] <= a[0] for a, b in zip(s, s[1:])):
            raise ValueError("strains must be strictly increasing")

    @property
    def strains(self):
        return [e for e, _ in self.samples]

    @property
    def stresses(self):
        return [p for _, p in self.samples]


@dataclass(frozen=True)
class TensileSummary:
    youngs_modulus: float  # MPa
    proportional_limit_strain: float
    break_strain: float


@dataclass(frozen=True)
class FatigueLog:
    records: tuple[tuple[int, float], ...]  # (cycle, precurvature 1/mm)

    def __post_init__(self):
        r = tuple((int(c), float(k)) for c, k in self.records)
        object.__setattr__(self, "records", r)
        if not r:
            raise ValueError("empty fatigue log")
        if r[0][0] != 0:
            raise ValueError("fatigue log must start at cycle 0")
        if any(b[0] <= a[0] for a, b in zip(r, r[1:])):
            raise ValueError("cycles must be strictly increasing")
        if any(k < 0 for _, k in r):
            raise ValueError("logged curvatures must be >= 0")


@dataclass(frozen=True)
class FatigueSummary:
    retention: tuple[tuple[int, float], ...]
    final_retention: float
    exceeds_elastic_limit: bool
    peak_strain: float


@dataclass(frozen=True)
class PlasticSetPrediction:
    exceeds: bool
    peak_strain: float
    margin: float


def analyze_tensile(
    curve: StressStrainCurve,
    fit_window_strain: float = DEFAULT_FIT_WINDOW,
    deviation_tol: float = DEFAULT_DEVIATION_TOL,
) -> TensileSummary:
    """Modulus, proportional limit and break strain of a tensile curve.

    The modulus is the zero-intercept least-squares slope over samples with
    strain <= ``fit_window_strain``. The proportional limit is the first
    sampled strain whose stress departs from the fitted line by more than
    ``deviation_tol`` (relative), or the last strain if none does.
    """
    if not 0 < deviation_tol < 1:
        raise ValueError("deviation_tol must lie in (0, 1)")
    strains = curve.strains
    if strains[-1] < fit_window_strain:
        raise ValueError("curve does not span the fit window")
    window = [(e, p) for e, p in curve.samples if e <= fit_window_strain]
    if len(window) < 2:
        raise ValueError("window too small")
    sxx = sum(e * e for e, _ in window)
    if sxx == 0:
        raise ValueError("window too small")
    E = sum(e * p for e, p in window) / sxx
    if not E > 0:
        raise ValueError("non-positive fitted modulus")

    limit = strains[-1]
    for e, p in curve.samples:
        if e <= 0:
            continue
        if abs(p - E * e) / (E * e) > deviation_tol:
            limit = e
            break
    return TensileSummary(E, limit, strains[-1])


def analyze_fatigue(log: FatigueLog, tube: Tube) -> FatigueSummary:
    """Precurvature retention over cycles and the straightening strain verdict."""
    k0 = log.records[0][1]
    if k0 <= 0:
        raise ValueError("straight reference tube")
    retention = tuple((c, k / k0) for c, k in log.records)
    # full straightening of the tube as it was at cycle 0
    ref = Tube(tube.od, tube.wall, k0, tube.curved_len, tube.straight_len, tube.material)
    peak = fiber_strain(ref, 0.0)
    return FatigueSummary(
        retention=retention,
        final_retention=retention[-1][1],
        exceeds_elastic_limit=peak > tube.material.elastic_limit_strain,
        peak_strain=peak,
    )


def predict_plastic_set(tube: Tube, applied_curvature: float = 0.0) -> PlasticSetPrediction:
    peak = fiber_strain(tube, applied_curvature)
    limit = tube.material.elastic_limit_strain
    return PlasticSetPrediction(peak > limit, peak, limit - peak)


def retention_is_monotone(summary: FatigueSummary) -> bool:
    r = [x for _, x in summary.retention]
    return all(b <= a for a, b in zip(r, r[1:]))


def fatigue_log_from_radii(rows: Sequence[tuple[int, float]]) -> FatigueLog:
    """Build a log from (cycle, radius mm) rows."""
    recs = []
    for c, r in rows:
        if r is None or r == 0:
            raise ValueError(f"cycle {c}: radius must be non-zero")
        recs.append((c, 1.0 / abs(r)))
    return FatigueLog(tuple(recs))
