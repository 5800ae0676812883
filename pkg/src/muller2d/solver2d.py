"""Two-dimensional Muller solver for systems of two complex equations.

Each outer iteration fits the plane z = c1*x + c2*y + c3 through three
samples of the second function, intersects it with z = 0 to obtain a linear
relation y(x), and runs the inner 1D Muller iteration on the first function
restricted to that line. Variant M1 reads the other coordinate from the
relation; variant M2 runs a second inner solve for it.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

from .muller1d import iterate_muller
from .types import (
    BivariateSystem,
    DegenerateGeometry,
    EquationOrder,
    EvaluationFailure,
    IterationRecord,
    PlaneCoeffs,
    PointPair,
    PrecondViolation,
    RootResult,
    SolverConfig,
    Status,
    Variant,
    is_finite,
)

#: Row-scaled pivot-ratio limit beyond which the plane fit is degenerate.
_COND_LIMIT = 1e12
#: |c2| <= this multiple of |c1| flips the relation to its x(y) form.
_TRANSPOSE_REL = 1e-12
#: Consecutive degenerate plane fits tolerated before giving up.
_MAX_DEGENERATE = 3
#: Relative coincidence threshold for inner-solve seed abscissae.
_COINCIDE_REL = 1e-15


def seed_points(start: PointPair, delta: complex) -> tuple[PointPair, PointPair, PointPair]:
    """Three starting pairs built by shifting both coordinates by +/- delta."""
    if abs(delta) == 0.0:
        raise PrecondViolation("seed delta must be nonzero")
    x0, y0 = complex(start[0]), complex(start[1])
    return (PointPair(x0 - delta, y0 - delta),
            PointPair(x0, y0),
            PointPair(x0 + delta, y0 + delta))


def fit_plane(p1: PointPair, p2: PointPair, p3: PointPair,
              f1: complex, f2: complex, f3: complex) -> PlaneCoeffs:
    """Solve the 3x3 complex system for the interpolating plane coefficients.

    Gaussian elimination with row scaling and partial pivoting; the ratio of
    the largest to smallest scaled pivot magnitude serves as the condition
    estimate.

    Raises:
        DegenerateGeometry: collinear sample points (pivot ratio > 1e12).
    """
    rows = [[p1[0], p1[1], 1.0 + 0j, f1],
            [p2[0], p2[1], 1.0 + 0j, f2],
            [p3[0], p3[1], 1.0 + 0j, f3]]
    for row in rows:
        scale = max(abs(row[0]), abs(row[1]), abs(row[2]))
        if scale == 0.0:
            raise DegenerateGeometry("zero row in plane-fit matrix")
        inv = 1.0 / scale
        for k in range(4):
            row[k] *= inv
    pivots: list[float] = []
    for col in range(3):
        pivot_row = max(range(col, 3), key=lambda r: abs(rows[r][col]))
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
        pivot = rows[col][col]
        pivots.append(abs(pivot))
        if abs(pivot) == 0.0:
            raise DegenerateGeometry("singular plane-fit matrix (zero pivot)")
        for r in range(col + 1, 3):
            factor = rows[r][col] / pivot
            for k in range(col, 4):
                rows[r][k] -= factor * rows[col][k]
    if max(pivots) / min(pivots) > _COND_LIMIT:
        raise DegenerateGeometry(
            f"plane-fit matrix ill-conditioned (pivot ratio {max(pivots) / min(pivots):.2e})")
    c3 = rows[2][3] / rows[2][2]
    c2 = (rows[1][3] - rows[1][2] * c3) / rows[1][1]
    c1 = (rows[0][3] - rows[0][1] * c2 - rows[0][2] * c3) / rows[0][0]
    return PlaneCoeffs(c1, c2, c3)


class ZeroLine(NamedTuple):
    """Affine relation between the coordinates on the z = 0 intersection.

    When ``transposed`` is False this maps x -> y; otherwise y -> x.
    """

    slope: complex
    intercept: complex
    transposed: bool

    def __call__(self, t: complex) -> complex:
        return self.slope * t + self.intercept


def intersect_zero_plane(coeffs: PlaneCoeffs) -> ZeroLine:
    """Intersect the fitted plane with z = 0.

    Returns y(x) = (-c1*x - c3)/c2, or the transposed x(y) form when |c2|
    is negligible against |c1|.

    Raises:
        DegenerateGeometry: both |c1| and |c2| below 1e-14 * (1 + |c3|).
    """
    c1, c2, c3 = coeffs
    floor = 1e-14 * (1.0 + abs(c3))
    if abs(c1) < floor and abs(c2) < floor:
        raise DegenerateGeometry("fitted plane is parallel to z = 0")
    if abs(c2) > _TRANSPOSE_REL * abs(c1):
        return ZeroLine(-c1 / c2, -c3 / c2, False)
    return ZeroLine(-c2 / c1, -c3 / c1, True)


class _Effective:
    """Working pair (g1, g2): original functions after order/recombination.

    With a recombination matrix each g-evaluation costs one evaluation of
    each original function; ``pair`` always evaluates each original exactly
    once and returns both the working and the original values.
    """

    def __init__(self, system: BivariateSystem, recombine):
        self.system = system
        self.recombine = recombine

    def pair(self, x: complex, y: complex, swap: bool):
        f1 = self.system.eval_f1(x, y)
        f2 = self.system.eval_f2(x, y)
        if self.recombine is not None:
            (a1, b1), (a2, b2) = self.recombine
            g1 = a1 * f1 + b1 * f2
            g2 = a2 * f1 + b2 * f2
        else:
            g1, g2 = f1, f2
        if swap:
            g1, g2 = g2, g1
        return g1, g2, f1, f2

    def g(self, which: int, x: complex, y: complex, swap: bool) -> complex:
        if swap:
            which = 3 - which
        if self.recombine is not None:
            f1 = self.system.eval_f1(x, y)
            f2 = self.system.eval_f2(x, y)
            a, b = self.recombine[which - 1]
            return a * f1 + b * f2
        return self.system.eval_f1(x, y) if which == 1 else self.system.eval_f2(x, y)


def _distinct_seeds(values: tuple[complex, complex, complex],
                    delta: complex) -> tuple[complex, complex, complex]:
    """Re-perturb coinciding inner-solve seeds by delta/10 (scale-aware)."""
    a, b, c = values
    tol = _COINCIDE_REL * (1.0 + max(abs(a), abs(b), abs(c)))
    bump = delta / 10.0
    if abs(b - c) < tol:
        b = b + bump
    if abs(a - c) < tol or abs(a - b) < tol:
        a = a - bump
    if abs(a - b) < tol:  # delta so small the bump did not separate them
        a = a - 2.0 * bump
    return a, b, c


def muller2d_solve(system: BivariateSystem, start: PointPair | tuple,
                   cfg: SolverConfig | None = None) -> RootResult:
    """Solve F1(x, y) = F2(x, y) = 0 by the two-dimensional Muller iteration.

    Exit states:
      * CONVERGED: two consecutive pairs differ by < 10**-digits in both
        coordinates and both working residuals are below residual_tol.
      * CONVERGED_ONE_ZERO: one working function dropped below zero_tol
        while the other did not; the lagging variable was polished by a
        final inner solve with cap 3P.
      * MAX_OUTER_ITERATIONS, INNER_DIVERGENCE, DEGENERATE_GEOMETRY,
        EVALUATION_FAILURE: per the corresponding failure.

    The trace records residual moduli of the original functions even when a
    recombination matrix or a swapped order is active.
    """
    cfg = cfg or SolverConfig()
    start = PointPair(complex(start[0]), complex(start[1]))
    if not start.finite:
        raise PrecondViolation("start pair must be finite")
    delta = cfg.resolve_delta(max(abs(start.x), abs(start.y)))
    eff = _Effective(system, cfg.recombine)

    def record_failure(exc: EvaluationFailure, pts, trace) -> RootResult:
        x, y = pts[-1] if pts else start
        return RootResult(x, y, Status.EVALUATION_FAILURE, trace,
                          system.evals_f1, system.evals_f2,
                          failure=exc, detail=str(exc))

    trace: list[IterationRecord] = []
    pts: list[PointPair] = []
    try:
        pts = list(seed_points(start, delta))
        vals = [eff.pair(p.x, p.y, False) for p in pts]  # (g1, g2, f1, f2) unswapped
    except EvaluationFailure as exc:
        return record_failure(exc, pts, trace)

    scale = max(max(abs(v[0]), abs(v[1])) for v in vals)
    zero_tol = cfg.zero_tol if cfg.zero_tol is not None else 1e-10 * (1.0 + scale)
    step_tol = cfg.step_tol

    # History holds unswapped working values; per-iteration swapping only
    # relabels which cached column is fitted.
    g1s = [v[0] for v in vals]
    g2s = [v[1] for v in vals]

    last_plane: PlaneCoeffs | None = None
    degenerate_streak = 0

    try:
        n = 0
        while n < cfg.outer_cap:
            n += 1
            if cfg.order == EquationOrder.F2_F1:
                swap = True
            elif cfg.order == EquationOrder.ALTERNATE:
                swap = (n % 2 == 0)
            else:
                swap = False
            fit_vals = g1s if swap else g2s

            relation = None
            while relation is None:
                try:
                    last_plane = fit_plane(pts[0], pts[1], pts[2],
                                           fit_vals[0], fit_vals[1], fit_vals[2])
                    relation = intersect_zero_plane(last_plane)
                    degenerate_streak = 0
                except DegenerateGeometry:
                    degenerate_streak += 1
                    if degenerate_streak >= _MAX_DEGENERATE:
                        return RootResult(pts[-1].x, pts[-1].y,
                                          Status.DEGENERATE_GEOMETRY, trace,
                                          system.evals_f1, system.evals_f2,
                                          last_plane=last_plane,
                                          detail="3 consecutive degenerate plane fits")
                    # Shear the newest pair off the sample line and refresh
                    # its cached values (the seed triple is always collinear,
                    # so the first iteration lands here once by design).
                    bump = delta * (degenerate_streak / 10.0)
                    moved = PointPair(pts[2].x + bump, pts[2].y - bump)
                    g1m, g2m, _, _ = eff.pair(moved.x, moved.y, False)
                    pts[2] = moved
                    g1s[2], g2s[2] = g1m, g2m
                    fit_vals = g1s if swap else g2s

            prev = pts[-1]
            inner_total = 0
            if not relation.transposed:
                seeds = _distinct_seeds((pts[0].x, pts[1].x, pts[2].x), delta)
                inner1 = iterate_muller(
                    lambda t: eff.g(1, t, relation(t), swap),
                    seeds, step_tol, cfg.inner_cap)
                if inner1.nonfinite:
                    return RootResult(prev.x, prev.y, Status.INNER_DIVERGENCE,
                                      trace, system.evals_f1, system.evals_f2,
                                      last_plane=last_plane,
                                      detail="inner solve produced non-finite iterates")
                x_new = inner1.x
                inner_total += inner1.iterations
                if cfg.variant == Variant.M1:
                    y_new = relation(x_new)
                else:
                    seeds_y = _distinct_seeds((pts[0].y, pts[1].y, pts[2].y), delta)
                    inner2 = iterate_muller(
                        lambda u: eff.g(2, x_new, u, swap),
                        seeds_y, step_tol, cfg.inner_cap)
                    if inner2.nonfinite:
                        return RootResult(prev.x, prev.y, Status.INNER_DIVERGENCE,
                                          trace, system.evals_f1, system.evals_f2,
                                          last_plane=last_plane,
                                          detail="inner solve produced non-finite iterates")
                    y_new = inner2.x
                    inner_total += inner2.iterations
            else:
                # Degenerate c2: exchange the roles of x and y this iteration.
                seeds = _distinct_seeds((pts[0].y, pts[1].y, pts[2].y), delta)
                inner1 = iterate_muller(
                    lambda u: eff.g(1, relation(u), u, swap),
                    seeds, step_tol, cfg.inner_cap)
                if inner1.nonfinite:
                    return RootResult(prev.x, prev.y, Status.INNER_DIVERGENCE,
                                      trace, system.evals_f1, system.evals_f2,
                                      last_plane=last_plane,
                                      detail="inner solve produced non-finite iterates")
                y_new = inner1.x
                inner_total += inner1.iterations
                if cfg.variant == Variant.M1:
                    x_new = relation(y_new)
                else:
                    seeds_x = _distinct_seeds((pts[0].x, pts[1].x, pts[2].x), delta)
                    inner2 = iterate_muller(
                        lambda t: eff.g(2, t, y_new, swap),
                        seeds_x, step_tol, cfg.inner_cap)
                    if inner2.nonfinite:
                        return RootResult(prev.x, prev.y, Status.INNER_DIVERGENCE,
                                          trace, system.evals_f1, system.evals_f2,
                                          last_plane=last_plane,
                                          detail="inner solve produced non-finite iterates")
                    x_new = inner2.x
                    inner_total += inner2.iterations

            if not (is_finite(x_new) and is_finite(y_new)):
                return RootResult(prev.x, prev.y, Status.INNER_DIVERGENCE, trace,
                                  system.evals_f1, system.evals_f2,
                                  last_plane=last_plane,
                                  detail="non-finite iterate")

            # The single per-iteration evaluation of each function outside
            # the inner subroutines.
            g1n, g2n, f1n, f2n = eff.pair(x_new, y_new, swap)
            step_x = abs(x_new - prev.x)
            step_y = abs(y_new - prev.y)
            trace.append(IterationRecord(n, x_new, y_new, abs(f1n), abs(f2n),
                                         step_x, step_y, inner_total))

            if (step_x < step_tol and step_y < step_tol
                    and abs(g1n) < cfg.residual_tol and abs(g2n) < cfg.residual_tol):
                return RootResult(x_new, y_new, Status.CONVERGED, trace,
                                  system.evals_f1, system.evals_f2,
                                  last_plane=last_plane)

            one_is_zero = abs(g1n) < zero_tol
            two_is_zero = abs(g2n) < zero_tol
            if one_is_zero != two_is_zero:
                polished = _one_zero_polish(eff, cfg, swap, pts,
                                            PointPair(x_new, y_new),
                                            zeroed=1 if one_is_zero else 2,
                                            delta=delta)
                if polished is None:
                    return RootResult(x_new, y_new, Status.INNER_DIVERGENCE,
                                      trace, system.evals_f1, system.evals_f2,
                                      last_plane=last_plane,
                                      detail="one-zero polish diverged")
                final, g1p, g2p, f1p, f2p, polish_iters = polished
                n += 1
                trace.append(IterationRecord(n, final.x, final.y,
                                             abs(f1p), abs(f2p),
                                             abs(final.x - x_new),
                                             abs(final.y - y_new), polish_iters))
                if abs(g1p) < cfg.residual_tol and abs(g2p) < cfg.residual_tol:
                    return RootResult(final.x, final.y, Status.CONVERGED_ONE_ZERO,
                                      trace, system.evals_f1, system.evals_f2,
                                      last_plane=last_plane)
                # Not actually a root yet: keep iterating from the polished
                # pair, which pins the vanished function's zero.
                x_new, y_new = final
                g1n, g2n = g1p, g2p

            pts = [pts[1], pts[2], PointPair(x_new, y_new)]
            g1u, g2u = (g2n, g1n) if swap else (g1n, g2n)
            g1s = [g1s[1], g1s[2], g1u]
            g2s = [g2s[1], g2s[2], g2u]
    except EvaluationFailure as exc:
        return record_failure(exc, pts, trace)

    last = pts[-1]
    return RootResult(last.x, last.y, Status.MAX_OUTER_ITERATIONS, trace,
                      system.evals_f1, system.evals_f2, last_plane=last_plane,
                      detail=f"no convergence within {cfg.outer_cap} outer iterations")


def _one_zero_polish(eff: _Effective, cfg: SolverConfig, swap: bool,
                     pts: list[PointPair], current: PointPair, zeroed: int,
                     delta: complex):
    """One function vanished before the other: polish the lagging variable.

    The variable the vanished function is most sensitive to (probed with the
    seed perturbation) is frozen so its zero survives, and the non-zero
    function is solved by an inner Muller run with cap 3P in the remaining
    variable. Returns (pair, g1, g2, f1, f2, iterations) at the polished
    pair, or None when the polish produced non-finite iterates; the caller
    decides whether the result qualifies as a root.
    """
    other = 3 - zeroed
    x0, y0 = current
    base = eff.g(zeroed, x0, y0, swap)
    sens_x = abs(eff.g(zeroed, x0 + delta, y0, swap) - base)
    sens_y = abs(eff.g(zeroed, x0, y0 + delta, swap) - base)
    fix_x = sens_x >= sens_y
    cap = 3 * cfg.inner_cap
    if fix_x:
        seeds = _distinct_seeds((pts[0].y, pts[1].y, y0), delta)
        polish = iterate_muller(lambda u: eff.g(other, x0, u, swap),
                                seeds, cfg.step_tol, cap)
        final = PointPair(x0, polish.x)
    else:
        seeds = _distinct_seeds((pts[0].x, pts[1].x, x0), delta)
        polish = iterate_muller(lambda t: eff.g(other, t, y0, swap),
                                seeds, cfg.step_tol, cap)
        final = PointPair(polish.x, y0)
    if polish.nonfinite or not final.finite:
        return None
    g1f, g2f, f1f, f2f = eff.pair(final.x, final.y, swap)
    return final, g1f, g2f, f1f, f2f, polish.iterations
