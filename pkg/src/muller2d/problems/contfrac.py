"""Generic three-term-recurrence continued fractions with inversion.

A CFProblem supplies coefficient generators alpha_n, beta_n, gamma_n as
functions of (n, unknowns). Its k-times-inverted residual is

    beta_k - alpha_{k-1} gamma_k / (beta_{k-1} - alpha_{k-2} gamma_{k-1} / (...))
           - alpha_k gamma_{k+1} / (beta_{k+1} - alpha_{k+1} gamma_{k+2} / (...))

with the finite head evaluated by direct recursion and the infinite tail by
the modified Lentz algorithm. Zeros of the residual in the unknowns are the
problem's roots; the k-th inversion makes the k-th overtone the numerically
dominant one.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable, Sequence

from ..types import CFNonConvergence, EvaluationFailure, PrecondViolation, is_finite

#: Division-rescue constant of the modified Lentz algorithm (and start
#: value for vanishing leading denominators); a1/LENTZ_TINY must not
#: overflow for any coefficients the solvers visit.
LENTZ_TINY = 1e-30

CoeffFn = Callable[[int, tuple[complex, ...]], complex]


@dataclass(frozen=True)
class CFProblem:
    """A continued-fraction root condition built from a three-term recurrence."""

    alpha: CoeffFn
    beta: CoeffFn
    gamma: CoeffFn
    inversion_index: int = 0
    max_depth: int = 3000
    cf_tol: float = 1e-14

    def __post_init__(self):
        if self.max_depth < 1:
            raise PrecondViolation("max_depth must be positive")
        if not 0 <= self.inversion_index < self.max_depth:
            raise PrecondViolation("inversion_index must lie in [0, max_depth)")
        if self.cf_tol <= 0:
            raise PrecondViolation("cf_tol must be positive")


def lentz(a: Callable[[int], complex], b: Callable[[int], complex],
          tol: float = 1e-14, max_depth: int = 3000) -> tuple[complex, float, int]:
    """Evaluate b0 + a1/(b1 + a2/(b2 + ...)) by the modified Lentz algorithm.

    Stops once the per-step multiplier is within tol of 1 (checked from the
    second step) or at max_depth. Returns (value, |last multiplier - 1|,
    steps used); convergence policing is left to the caller.
    """
    f = complex(b(0))
    if f == 0:
        f = complex(LENTZ_TINY)
    c = f
    d = 0j
    delta = 0j
    j = 0
    while j < max_depth:
        j += 1
        aj = complex(a(j))
        bj = complex(b(j))
        d = bj + aj * d
        if d == 0:
            d = complex(LENTZ_TINY)
        c = bj + aj / c
        if c == 0:
            c = complex(LENTZ_TINY)
        d = 1.0 / d
        delta = c * d
        f = f * delta
        if j >= 2 and abs(delta - 1.0) < tol:
            break
    return f, abs(delta - 1.0), j


def _as_tuple(u) -> tuple[complex, ...]:
    if isinstance(u, (tuple, list)):
        return tuple(complex(v) for v in u)
    return (complex(u),)


def cf_eval(problem: CFProblem, u) -> complex:
    """Residual of the inverted continued fraction at unknowns ``u``.

    Raises:
        EvaluationFailure: a generator produced a non-finite value.
        CFNonConvergence: the depth cap was reached with the Lentz step
            multiplier still farther than sqrt(cf_tol) from 1.
    """
    value, err, depth = cf_eval_info(problem, u)
    if depth >= problem.max_depth and err > problem.cf_tol ** 0.5:
        raise CFNonConvergence(
            f"continued fraction not converged at depth {depth} "
            f"(step deviation {err:.2e})")
    return value


def cf_eval_info(problem: CFProblem, u) -> tuple[complex, float, int]:
    """Like cf_eval but returns (value, lentz deviation, tail depth used)."""
    uu = _as_tuple(u)
    k = problem.inversion_index

    def coeff(fn: CoeffFn, n: int) -> complex:
        value = complex(fn(n, uu))
        if not is_finite(value):
            raise EvaluationFailure(
                f"CF generator returned a non-finite value at n={n}, u={uu!r}",
                point=uu)
        return value

    head = 0j
    for i in range(k):
        den = coeff(problem.beta, i) - coeff(problem.gamma, i) * head
        if den == 0:
            den = complex(LENTZ_TINY)
        head = coeff(problem.alpha, i) / den
    beta_k = coeff(problem.beta, k)
    finite_part = coeff(problem.gamma, k) * head if k > 0 else 0j

    def a(j: int) -> complex:
        sign = 1.0 if j == 1 else -1.0
        return sign * coeff(problem.alpha, k + j - 1) * coeff(problem.gamma, k + j)

    def b(j: int) -> complex:
        return 0j if j == 0 else coeff(problem.beta, k + j)

    tail, err, depth = lentz(a, b, problem.cf_tol, problem.max_depth)
    return beta_k - finite_part - tail, err, depth
