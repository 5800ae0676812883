"""Derivative-free root finding for pairs of complex transcendental equations.

The central solver extends the one-dimensional Muller iteration to systems
of two complex equations in two complex unknowns: each outer iteration fits
a plane through three samples of one function, intersects it with z = 0 to
obtain a linear relation between the unknowns, and runs the 1D Muller
iteration on the other function restricted to that line. Broyden and
finite-difference Newton baselines operate on the real 4-dimensional view
of the same systems, and a problem corpus (including black-hole
quasi-normal-mode systems built from Leaver-type continued fractions)
drives the benchmark harness.
"""

from ._numba import NUMBA_ENABLED
from .baselines import broyden_solve, from_real, newton_fd_solve, to_real
from .muller1d import muller1d, muller1d_step
from .solver2d import (
    ZeroLine,
    fit_plane,
    intersect_zero_plane,
    muller2d_solve,
    seed_points,
)
from .types import (
    BivariateSystem,
    CFNonConvergence,
    DegenerateGeometry,
    DegenerateStep,
    EquationOrder,
    EvaluationFailure,
    IterationRecord,
    Muller1DResult,
    PlaneCoeffs,
    PointPair,
    PrecondViolation,
    RootResult,
    SolverConfig,
    SolverError,
    Status,
    Variant,
)

__version__ = "0.1.0"

__all__ = [
    "BivariateSystem",
    "CFNonConvergence",
    "DegenerateGeometry",
    "DegenerateStep",
    "EquationOrder",
    "EvaluationFailure",
    "IterationRecord",
    "Muller1DResult",
    "NUMBA_ENABLED",
    "PlaneCoeffs",
    "PointPair",
    "PrecondViolation",
    "RootResult",
    "SolverConfig",
    "SolverError",
    "Status",
    "Variant",
    "ZeroLine",
    "broyden_solve",
    "fit_plane",
    "from_real",
    "intersect_zero_plane",
    "muller1d",
    "muller1d_step",
    "muller2d_solve",
    "newton_fd_solve",
    "seed_points",
    "to_real",
]
