"""Tube, material and tube-set types with annular-beam geometry.

Units are fixed throughout the package: lengths in mm, moduli in MPa,
bending stiffness in N*mm^2 (MPa * mm^4), curvature in 1/mm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

# Absolute slack for comparisons of lengths/strains built from decimal inputs
# (3.8 - 2*0.6 - 2.2 is 0.3999999999999995 in binary floating point).
GEOM_TOL = 1e-9

DEFAULT_CLEARANCE = 0.4


@dataclass(frozen=True)
class Material:
    name: str
    youngs_modulus: float  # MPa
    elastic_limit_strain: float
    break_strain: float
    notes: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.youngs_modulus > 0:
            raise ValueError(f"material {self.name!r}: youngs_modulus must be > 0")
        if not 0 < self.elastic_limit_strain < self.break_strain < 1:
            raise ValueError(
                f"material {self.name!r}: require 0 < elastic_limit_strain < break_strain < 1"
            )


NYLON12_MJF = Material(
    name="nylon12-mjf",
    youngs_modulus=1510.0,
    elastic_limit_strain=0.02,
    break_strain=0.177,
    notes="MJF-printed Nylon-12, tensile test",
)


@dataclass(frozen=True)
class Tube:
    """Annular tube with a proximal straight section and a distal curved one.

    ``precurvature`` is signed; 0 encodes a straight tube.
    """

    od: float
    wall: float
    precurvature: float = 0.0
    curved_len: float = 0.0
    straight_len: float = 0.0
    material: Material = NYLON12_MJF

    def __post_init__(self):
        if not self.od > 0:
            raise ValueError("tube: od must be > 0")
        if not 0 < self.wall <= self.od / 2 + GEOM_TOL:
            raise ValueError("tube: require 0 < wall <= od/2")
        if self.curved_len < 0 or self.straight_len < 0:
            raise ValueError("tube: section lengths must be >= 0")
        if not abs(self.precurvature) * (self.od / 2) < 1:
            raise ValueError("tube: |precurvature| * od/2 must be < 1")

    @classmethod
    def from_radius(cls, od, wall, radius, **kw) -> "Tube":
        """Build a tube from a precurvature radius; ``None`` or ``inf`` is straight."""
        k = 0.0 if radius is None or math.isinf(radius) else 1.0 / radius
        return cls(od=od, wall=wall, precurvature=k, **kw)

    @property
    def radius(self) -> float:
        """Signed precurvature radius, ``inf`` for a straight tube."""
        return math.inf if self.precurvature == 0 else 1.0 / self.precurvature

    @property
    def total_len(self) -> float:
        return self.straight_len + self.curved_len


@dataclass(frozen=True)
class TubeSet:
    """Nested tubes, outermost first."""

    tubes: tuple[Tube, ...]
    clearance: float = DEFAULT_CLEARANCE

    def __post_init__(self):
        object.__setattr__(self, "tubes", tuple(self.tubes))
        if self.clearance < 0:
            raise ValueError("tube set: clearance must be >= 0")

    def __len__(self):
        return len(self.tubes)

    def __iter__(self):
        return iter(self.tubes)

    def __getitem__(self, i):
        return self.tubes[i]


def inner_diameter(tube: Tube) -> float:
    return max(tube.od - 2 * tube.wall, 0.0)


def second_moment_of_area(tube: Tube) -> float:
    """Area moment of the annulus about a diameter, mm^4."""
    di = inner_diameter(tube)
    return math.pi / 64 * (tube.od**4 - di**4)


def bending_stiffness(tube: Tube) -> float:
    """E*I in N*mm^2."""
    return tube.material.youngs_modulus * second_moment_of_area(tube)


def fiber_strain(tube: Tube, applied_curvature: float) -> float:
    """Outer-fiber strain magnitude when bent from its precurvature to ``applied_curvature``."""
    if not abs(applied_curvature) * (tube.od / 2) < 1:
        raise ValueError("applied curvature radius must exceed tube radius")
    return (tube.od / 2) * abs(applied_curvature - tube.precurvature)


def straightening_strain(tube: Tube) -> float:
    return fiber_strain(tube, 0.0)


def max_recoverable_curvature_change(tube: Tube) -> float:
    """Largest |curvature change| that keeps the outer fiber within the elastic limit."""
    return tube.material.elastic_limit_strain / (tube.od / 2)


@dataclass(frozen=True)
class PairClearance:
    outer_index: int
    inner_index: int
    clearance: float
    ok: bool


@dataclass(frozen=True)
class NestingReport:
    pairs: tuple[PairClearance, ...]
    min_clearance: float
    ok: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "ok", all(p.ok for p in self.pairs))

    def failures(self) -> list[str]:
        return [
            f"clearance between tube {p.outer_index} and tube {p.inner_index} is "
            f"{p.clearance:.3f} mm < required {self.min_clearance:.3f} mm"
            for p in self.pairs
            if not p.ok
        ]


def diametral_clearance(outer: Tube, inner: Tube) -> float:
    return inner_diameter(outer) - inner.od


def clearance_ok(outer: Tube, inner: Tube, min_clearance: float) -> bool:
    return diametral_clearance(outer, inner) >= min_clearance - GEOM_TOL


def validate_nesting(tube_set, min_diametral_clearance: float | None = None) -> NestingReport:
    """Check every consecutive outer/inner pair for diametral clearance.

    ``tube_set`` may be a :class:`TubeSet` or a plain sequence of tubes,
    outermost first. When no clearance is given the set's own is used.
    """
    tubes = list(tube_set)
    if not tubes:
        raise ValueError("empty tube set")
    if min_diametral_clearance is None:
        min_diametral_clearance = getattr(tube_set, "clearance", DEFAULT_CLEARANCE)
    pairs = []
    for i in range(len(tubes) - 1):
        outer, inner = tubes[i], tubes[i + 1]
        c = diametral_clearance(outer, inner)
        pairs.append(
            PairClearance(i, i + 1, c, clearance_ok(outer, inner, min_diametral_clearance))
        )
    return NestingReport(tuple(pairs), min_diametral_clearance)
