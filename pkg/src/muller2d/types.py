"""Shared domain types: configuration, results, statuses, and error classes."""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

#: Default base used when a scale-aware seed perturbation is derived from the
#: starting point: delta = 1e-3 * (1 + |start|) * (1 + 1j) / sqrt(2).
DELTA_BASE = 1e-3
DELTA_DIRECTION = (1.0 + 1.0j) / math.sqrt(2.0)


def is_finite(z: complex) -> bool:
    """True when neither component of ``z`` is NaN or infinite."""
    return cmath.isfinite(z)


class SolverError(Exception):
    """Base class for solver-level errors."""


class PrecondViolation(SolverError):
    """An operation was called with inputs violating its preconditions."""


class DegenerateStep(SolverError):
    """Both Muller denominators vanished: the sample triple is flat."""


class DegenerateGeometry(SolverError):
    """Plane fit or zero-plane intersection is numerically singular."""


class EvaluationFailure(SolverError):
    """A function evaluation failed or produced a non-finite value.

    Attributes:
        point: The (x,) or (x, y) argument at which evaluation failed.
        function: Label of the offending function ("f", "f1" or "f2").
    """

    def __init__(self, message: str, point=None, function: str = "f"):
        super().__init__(message)
        self.point = point
        self.function = function


class CFNonConvergence(SolverError):
    """A continued fraction hit its depth cap far from convergence."""


class Status(enum.Enum):
    """Terminal state of a solve."""

    CONVERGED = "converged"
    CONVERGED_ONE_ZERO = "converged-one-zero"
    MAX_ITERATIONS = "max-iterations"
    MAX_OUTER_ITERATIONS = "max-outer-iterations"
    INNER_DIVERGENCE = "inner-divergence"
    EVALUATION_FAILURE = "evaluation-failure"
    DEGENERATE_GEOMETRY = "degenerate-geometry"
    # Baseline-solver terminal states (Broyden / finite-difference Newton).
    JACOBIAN_BREAKDOWN = "jacobian-breakdown"
    SINGULAR_JACOBIAN = "singular-jacobian"
    SINGULAR_UPDATE = "singular-update"
    STALLED = "stalled"

    @property
    def succeeded(self) -> bool:
        return self in (Status.CONVERGED, Status.CONVERGED_ONE_ZERO)


class Variant(enum.Enum):
    """How the second coordinate is updated after the inner solve in x."""

    M1 = "m1"  # read y from the fitted linear relation
    M2 = "m2"  # run a second inner 1D solve in y


class EquationOrder(enum.Enum):
    F1_F2 = "as-given"
    F2_F1 = "swapped"
    ALTERNATE = "alternate"


# Keep the spelled-out aliases; the CLI uses the value strings above.
EquationOrder.AS_GIVEN = EquationOrder.F1_F2  # type: ignore[attr-defined]
EquationOrder.SWAPPED = EquationOrder.F2_F1  # type: ignore[attr-defined]

RecombineMatrix = tuple[tuple[complex, complex], tuple[complex, complex]]


class PointPair(NamedTuple):
    """A candidate (x, y) iterate."""

    x: complex
    y: complex

    @property
    def finite(self) -> bool:
        return is_finite(self.x) and is_finite(self.y)


class PlaneCoeffs(NamedTuple):
    """Coefficients of the interpolating plane z = c1*x + c2*y + c3."""

    c1: complex
    c2: complex
    c3: complex


@dataclass(frozen=True)
class SolverConfig:
    """Tunables shared by every solver in the package.

    Attributes:
        digits: Target precision d; iterations stop when steps drop
            below 10**-digits.
        inner_cap: Iteration cap P for the inner 1D Muller subroutine.
        outer_cap: Iteration cap N for the outer loop (also the cap for
            standalone 1D solves).
        seed_delta: Complex perturbation used to build the three starting
            samples. None selects the scale-aware default
            1e-3 * (1 + |start|) * (1+1j)/sqrt(2).
        residual_tol: |F| threshold below which a residual counts as small.
        zero_tol: Threshold for the one-function-zero exit. None selects
            1e-10 * (1 + |F| scale at the seed points).
        variant: M1 or M2.
        order: Equation ordering strategy.
        recombine: Optional nonsingular 2x2 matrix ((a1, b1), (a2, b2));
            when set the solver iterates on G_i = a_i*F1 + b_i*F2 while
            reporting residuals of the original pair.
    """

    digits: int = 12
    inner_cap: int = 6
    outer_cap: int = 100
    seed_delta: complex | None = None
    residual_tol: float = 1e-6
    zero_tol: float | None = None
    variant: Variant = Variant.M1
    order: EquationOrder = EquationOrder.F1_F2
    recombine: RecombineMatrix | None = None

    def __post_init__(self):
        if self.digits < 1:
            raise PrecondViolation(f"digits must be >= 1, got {self.digits}")
        if self.inner_cap < 1:
            raise PrecondViolation(f"inner_cap must be >= 1, got {self.inner_cap}")
        if self.outer_cap < 1:
            raise PrecondViolation(f"outer_cap must be >= 1, got {self.outer_cap}")
        if self.residual_tol <= 0:
            raise PrecondViolation("residual_tol must be positive")
        if self.zero_tol is not None and self.zero_tol <= 0:
            raise PrecondViolation("zero_tol must be positive")
        if self.seed_delta is not None:
            d = complex(self.seed_delta)
            if not is_finite(d) or abs(d) == 0.0:
                raise PrecondViolation("seed_delta must be finite and nonzero")
            object.__setattr__(self, "seed_delta", d)
        if self.recombine is not None:
            (a1, b1), (a2, b2) = self.recombine
            a1, b1, a2, b2 = complex(a1), complex(b1), complex(a2), complex(b2)
            det = a1 * b2 - b1 * a2
            if abs(det) <= 1e-12:
                raise PrecondViolation(
                    f"recombine matrix is singular (|det| = {abs(det):.3e})")
            object.__setattr__(self, "recombine", ((a1, b1), (a2, b2)))

    @property
    def step_tol(self) -> float:
        return 10.0 ** (-self.digits)

    def resolve_delta(self, scale: float) -> complex:
        """Seed perturbation, derived from the start magnitude when unset."""
        if self.seed_delta is not None:
            return self.seed_delta
        return DELTA_BASE * (1.0 + scale) * DELTA_DIRECTION


@dataclass
class IterationRecord:
    """Snapshot of one outer iteration, suitable for CSV traces."""

    index: int
    x: complex
    y: complex
    f1_abs: float
    f2_abs: float
    step_x: float
    step_y: float
    inner_iters_used: int


@dataclass
class Muller1DResult:
    """Outcome of a one-dimensional Muller solve."""

    x: complex
    status: Status
    iterations: int
    evals: int
    f_abs: float
    last_step: float
    iterates: list[complex] = field(default_factory=list)
    f_abs_history: list[float] = field(default_factory=list)


@dataclass
class RootResult:
    """Outcome of a two-dimensional solve (Muller, Broyden or Newton)."""

    x: complex
    y: complex
    status: Status
    trace: list[IterationRecord] = field(default_factory=list)
    evals_f1: int = 0
    evals_f2: int = 0
    last_plane: PlaneCoeffs | None = None
    failure: EvaluationFailure | None = None
    detail: str = ""

    @property
    def f1_abs(self) -> float:
        return self.trace[-1].f1_abs if self.trace else math.inf

    @property
    def f2_abs(self) -> float:
        return self.trace[-1].f2_abs if self.trace else math.inf

    @property
    def outer_iterations(self) -> int:
        return self.trace[-1].index if self.trace else 0

    @property
    def inner_iterations(self) -> int:
        return sum(r.inner_iters_used for r in self.trace)


class BivariateSystem:
    """A pair of complex bivariate functions with exact evaluation counts.

    The callables receive (x, y) complex and return a complex value. A
    non-finite return value is converted into an EvaluationFailure at this
    boundary; callables may also raise EvaluationFailure themselves. Each
    call increments the per-function counter exactly once, including calls
    that fail.
    """

    def __init__(self, f1: Callable[[complex, complex], complex],
                 f2: Callable[[complex, complex], complex], name: str = ""):
        self._f1 = f1
        self._f2 = f2
        self.name = name
        self.evals_f1 = 0
        self.evals_f2 = 0

    def _eval(self, fn, label: str, x: complex, y: complex) -> complex:
        try:
            value = complex(fn(x, y))
        except EvaluationFailure as exc:
            if exc.point is None:
                exc.point = (x, y)
            exc.function = label
            raise
        except (ZeroDivisionError, OverflowError, ValueError) as exc:
            raise EvaluationFailure(
                f"{label} failed at ({x!r}, {y!r}): {exc}",
                point=(x, y), function=label) from exc
        if not is_finite(value):
            raise EvaluationFailure(
                f"{label} returned a non-finite value at ({x!r}, {y!r})",
                point=(x, y), function=label)
        return value

    def eval_f1(self, x: complex, y: complex) -> complex:
        self.evals_f1 += 1
        return self._eval(self._f1, "f1", x, y)

    def eval_f2(self, x: complex, y: complex) -> complex:
        self.evals_f2 += 1
        return self._eval(self._f2, "f2", x, y)

    def reset_counters(self) -> None:
        self.evals_f1 = 0
        self.evals_f2 = 0
