"""One-dimensional Muller iteration for complex-valued functions.

The step fits a parabola through three samples and moves to the parabola
zero selected by the larger-modulus denominator; on quadratics the step is
exact, on affine functions it reduces to the secant step.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable

from .types import (
    DegenerateStep,
    EvaluationFailure,
    Muller1DResult,
    PrecondViolation,
    SolverConfig,
    Status,
    is_finite,
)

#: Below this the parabola is considered flat (both denominators vanish).
_DENOM_FLOOR = 1e-300
#: A step larger than this multiple of (1 + |x|) is a runaway parabola;
#: the iteration reports divergence instead of evaluating at the wild point.
_MAX_STEP_FACTOR = 1e6


def muller1d_step(x2: complex, x1: complex, x0: complex,
                  f2: complex, f1: complex, f0: complex) -> complex:
    """One Muller step from samples (x2, x1, x0) = (x_{j-2}, x_{j-1}, x_j).

    Returns x_{j+1}. The denominator is whichever of B +/- sqrt(B^2 - 4AC)
    has the larger modulus, ties resolved toward the + branch.

    Raises:
        PrecondViolation: if consecutive abscissae coincide.
        DegenerateStep: if both denominators vanish (flat triple).
    """
    if x1 == x2 or x0 == x1:
        raise PrecondViolation("muller1d_step requires pairwise distinct abscissae")
    q = (x0 - x1) / (x1 - x2)
    a = f0 * q - q * (1.0 + q) * f1 + q * q * f2
    b = (2.0 * q + 1.0) * f0 - (1.0 + q) ** 2 * f1 + q * q * f2
    c = (1.0 + q) * f0
    disc = cmath.sqrt(b * b - 4.0 * a * c)
    d_plus = b + disc
    d_minus = b - disc
    denom = d_plus if abs(d_plus) >= abs(d_minus) else d_minus
    if abs(denom) < _DENOM_FLOOR:
        raise DegenerateStep("both Muller denominators vanish")
    return x0 - (x0 - x1) * 2.0 * c / denom


@dataclass
class _CoreResult:
    x: complex
    status: Status
    iterations: int
    evals: int
    f_abs: float
    last_step: float
    iterates: list[complex]
    f_abs_history: list[float]
    nonfinite: bool = False  # True when the divergence produced non-finite iterates


def iterate_muller(f: Callable[[complex], complex],
                   seeds: tuple[complex, complex, complex],
                   step_tol: float, cap: int) -> _CoreResult:
    """Drive the Muller step from three explicit seeds.

    Evaluates ``f`` at the seeds (three evaluations) and then once per
    iteration. On a cap or degenerate exit the reported point is the best
    iterate seen so far (smallest |f|, ties resolved toward the latest).
    EvaluationFailure propagates to the caller.
    """
    xs = list(seeds)
    fs = [f(x) for x in xs]
    evals = 3
    max_step = _MAX_STEP_FACTOR * (1.0 + max(abs(x) for x in xs))
    best_x, best_f = xs[0], abs(fs[0])
    for x, fx in zip(xs[1:], fs[1:]):
        if abs(fx) <= best_f:
            best_x, best_f = x, abs(fx)
    iterates: list[complex] = []
    f_hist: list[float] = []
    last_step = cmath.inf
    iterations = 0
    while iterations < cap:
        iterations += 1
        try:
            x_new = muller1d_step(xs[-3], xs[-2], xs[-1], fs[-3], fs[-2], fs[-1])
        except (DegenerateStep, PrecondViolation):
            return _CoreResult(best_x, Status.INNER_DIVERGENCE, iterations - 1,
                               evals, best_f, last_step, iterates, f_hist)
        if not is_finite(x_new):
            return _CoreResult(best_x, Status.INNER_DIVERGENCE, iterations - 1,
                               evals, best_f, last_step, iterates, f_hist,
                               nonfinite=True)
        if abs(x_new - xs[-1]) > max_step:
            return _CoreResult(best_x, Status.INNER_DIVERGENCE, iterations - 1,
                               evals, best_f, last_step, iterates, f_hist)
        f_new = f(x_new)
        evals += 1
        iterates.append(x_new)
        f_hist.append(abs(f_new))
        if abs(f_new) <= best_f:
            best_x, best_f = x_new, abs(f_new)
        last_step = abs(x_new - xs[-1])
        xs.append(x_new)
        fs.append(f_new)
        if last_step < step_tol:
            return _CoreResult(x_new, Status.CONVERGED, iterations, evals,
                               abs(f_new), last_step, iterates, f_hist)
    return _CoreResult(best_x, Status.MAX_ITERATIONS, iterations, evals,
                       best_f, last_step, iterates, f_hist)


def muller1d(f: Callable[[complex], complex], start: complex,
             cfg: SolverConfig | None = None) -> Muller1DResult:
    """Standalone 1D Muller solve from a single starting point.

    The three initial samples are {start - delta, start, start + delta};
    the iteration cap is cfg.outer_cap and convergence means a step below
    10**-digits. EvaluationFailure from ``f`` propagates with the offending
    point attached.
    """
    cfg = cfg or SolverConfig()
    start = complex(start)
    if not is_finite(start):
        raise PrecondViolation("start must be finite")
    delta = cfg.resolve_delta(abs(start))
    seeds = (start - delta, start, start + delta)
    core = iterate_muller(_wrap(f), seeds, cfg.step_tol, cfg.outer_cap)
    return Muller1DResult(core.x, core.status, core.iterations, core.evals,
                          core.f_abs, core.last_step, core.iterates,
                          core.f_abs_history)


def _wrap(f: Callable[[complex], complex]) -> Callable[[complex], complex]:
    """Convert non-finite values and arithmetic faults into EvaluationFailure."""

    def wrapped(x: complex) -> complex:
        try:
            value = complex(f(x))
        except EvaluationFailure as exc:
            if exc.point is None:
                exc.point = x
            raise
        except (ZeroDivisionError, OverflowError, ValueError) as exc:
            raise EvaluationFailure(f"f failed at {x!r}: {exc}", point=x) from exc
        if not is_finite(value):
            raise EvaluationFailure(f"f returned a non-finite value at {x!r}",
                                    point=x)
        return value

    return wrapped
