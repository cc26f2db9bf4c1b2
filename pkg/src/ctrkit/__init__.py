"""Mechanics and design toolkit for concentric tube robots made of printed polymer tubes."""

from ._backend import BACKEND
from .curvefit import CircleFit, Point2, circumcircle, fit_circle_lsq, radius_rmse
from .design import (
    CandidateDesign,
    DesignConstraints,
    DesignGrid,
    check_feasibility,
    enumerate_designs,
    score,
)
from .mechanics import (
    Arc,
    PairEquilibrium,
    PlanarShape,
    StiffnessTerm,
    arc_points,
    compose_shape,
    equilibrium_curvature,
    equilibrium_radius_pair,
    sample_shape,
)
from .testdata import (
    FatigueLog,
    FatigueSummary,
    StressStrainCurve,
    TensileSummary,
    analyze_fatigue,
    analyze_tensile,
    predict_plastic_set,
)
from .tube import (
    NYLON12_MJF,
    Material,
    Tube,
    TubeSet,
    bending_stiffness,
    fiber_strain,
    inner_diameter,
    max_recoverable_curvature_change,
    second_moment_of_area,
    straightening_strain,
    validate_nesting,
)

__version__ = "0.1.0"
