"""Quasi-Newton baselines over the real 4-dimensional view of the system.

Both solvers flatten (x, y) complex into (Re x, Im x, Re y, Im y) and the
residual pair likewise, so non-analytic constructions (phase couplings,
moduli) still admit a finite-difference Jacobian. Finite differences that
come out non-finite are reported as JACOBIAN_BREAKDOWN, never patched.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .types import (
    BivariateSystem,
    EvaluationFailure,
    IterationRecord,
    PointPair,
    PrecondViolation,
    RootResult,
    SolverConfig,
    Status,
)

#: One-sided finite-difference step is FD_STEP * (1 + |component|).
FD_STEP = 1e-7
#: Residual-norm halvings attempted before accepting the full step anyway.
MAX_HALVINGS = 8
_COND_LIMIT = 1e12
_UPDATE_FLOOR = 1e-300


def to_real(x: complex, y: complex) -> np.ndarray:
    """(x, y) -> (Re x, Im x, Re y, Im y); exact on components."""
    return np.array([x.real, x.imag, y.real, y.imag], dtype=float)


def from_real(v: np.ndarray) -> PointPair:
    return PointPair(complex(v[0], v[1]), complex(v[2], v[3]))


def _residual(system: BivariateSystem, v: np.ndarray) -> np.ndarray:
    x, y = from_real(v)
    r1 = system.eval_f1(x, y)
    r2 = system.eval_f2(x, y)
    return np.array([r1.real, r1.imag, r2.real, r2.imag], dtype=float)


def _fd_jacobian(system: BivariateSystem, v: np.ndarray,
                 r0: np.ndarray) -> np.ndarray:
    """One-sided finite-difference 4x4 Jacobian; may contain non-finite entries."""
    jac = np.empty((4, 4), dtype=float)
    for j in range(4):
        h = FD_STEP * (1.0 + abs(v[j]))
        vp = v.copy()
        vp[j] += h
        rp = _residual(system, vp)
        jac[:, j] = (rp - r0) / h
    return jac


def _steps(v_new: np.ndarray, v_old: np.ndarray) -> tuple[float, float]:
    dx = math.hypot(v_new[0] - v_old[0], v_new[1] - v_old[1])
    dy = math.hypot(v_new[2] - v_old[2], v_new[3] - v_old[3])
    return dx, dy


def _record(trace, n, v, r, step_x, step_y, halvings=0):
    x, y = from_real(v)
    trace.append(IterationRecord(n, x, y, math.hypot(r[0], r[1]),
                                 math.hypot(r[2], r[3]), step_x, step_y, halvings))


def _result(system, v, status, trace, **kw) -> RootResult:
    x, y = from_real(v)
    return RootResult(x, y, status, trace, system.evals_f1, system.evals_f2, **kw)


def _classify_exit(r: np.ndarray, step_x: float, step_y: float,
                   cfg: SolverConfig) -> Status | None:
    res1 = math.hypot(r[0], r[1])
    res2 = math.hypot(r[2], r[3])
    residual_ok = res1 < cfg.residual_tol and res2 < cfg.residual_tol
    step_ok = step_x < cfg.step_tol and step_y < cfg.step_tol
    if residual_ok:
        return Status.CONVERGED
    if step_ok:
        return Status.STALLED
    return None


def broyden_solve(system: BivariateSystem, start: PointPair | tuple,
                  cfg: SolverConfig | None = None) -> RootResult:
    """Good Broyden update on the finite-difference-initialized 4x4 Jacobian.

    Steps are damped by halving (at most 8 times) while the residual norm
    fails to decrease, after which the full step is accepted to avoid
    stagnation loops. Exits on step < 10**-digits, residual < residual_tol,
    or the outer cap.
    """
    cfg = cfg or SolverConfig()
    v = to_real(complex(start[0]), complex(start[1]))
    if not np.all(np.isfinite(v)):
        raise PrecondViolation("start pair must be finite")
    trace: list[IterationRecord] = []
    try:
        r = _residual(system, v)
        try:
            jac = _fd_jacobian(system, v, r)
        except EvaluationFailure as exc:
            return _result(system, v, Status.JACOBIAN_BREAKDOWN, trace,
                           failure=exc, detail=f"finite differences failed: {exc}")
        if not np.all(np.isfinite(jac)):
            return _result(system, v, Status.JACOBIAN_BREAKDOWN, trace,
                           detail="non-finite finite-difference Jacobian entries")

        for n in range(1, cfg.outer_cap + 1):
            try:
                step = np.linalg.solve(jac, -r)
            except np.linalg.LinAlgError:
                return _result(system, v, Status.SINGULAR_JACOBIAN, trace,
                               detail="singular Broyden matrix")
            if not np.all(np.isfinite(step)):
                return _result(system, v, Status.SINGULAR_JACOBIAN, trace,
                               detail="non-finite Broyden step")
            r_norm = float(np.linalg.norm(r))
            t = 1.0
            halvings = 0
            v_new = v + step
            r_new = _residual(system, v_new)
            while (np.linalg.norm(r_new) >= r_norm and halvings < MAX_HALVINGS):
                t *= 0.5
                halvings += 1
                v_new = v + t * step
                r_new = _residual(system, v_new)
            if np.linalg.norm(r_new) >= r_norm and halvings >= MAX_HALVINGS:
                t, v_new = 1.0, v + step  # accept the full step anyway
                r_new = _residual(system, v_new)
                halvings += 1

            dv = v_new - v
            dr = r_new - r
            denom = float(dv @ dv)
            step_x, step_y = _steps(v_new, v)
            _record(trace, n, v_new, r_new, step_x, step_y, halvings)
            if not np.all(np.isfinite(r_new)):
                return _result(system, v_new, Status.JACOBIAN_BREAKDOWN, trace,
                               detail="non-finite residual")
            if abs(denom) < _UPDATE_FLOOR:
                return _result(system, v_new, Status.SINGULAR_UPDATE, trace,
                               detail="Broyden update denominator vanished")
            jac = jac + np.outer((dr - jac @ dv) / denom, dv)
            if not np.all(np.isfinite(jac)):
                return _result(system, v_new, Status.JACOBIAN_BREAKDOWN, trace,
                               detail="non-finite Broyden update")
            v, r = v_new, r_new
            exit_status = _classify_exit(r, step_x, step_y, cfg)
            if exit_status is not None:
                return _result(system, v, exit_status, trace)
        return _result(system, v, Status.MAX_OUTER_ITERATIONS, trace)
    except EvaluationFailure as exc:
        return _result(system, v, Status.EVALUATION_FAILURE, trace,
                       failure=exc, detail=str(exc))


def newton_fd_solve(system: BivariateSystem, start: PointPair | tuple,
                    cfg: SolverConfig | None = None) -> RootResult:
    """Undamped Newton with a fresh one-sided finite-difference Jacobian.

    Each iteration costs exactly 4 stencil evaluations plus one evaluation
    at the accepted point, per function. A condition estimate above 1e12
    reports SINGULAR_JACOBIAN.
    """
    cfg = cfg or SolverConfig()
    v = to_real(complex(start[0]), complex(start[1]))
    if not np.all(np.isfinite(v)):
        raise PrecondViolation("start pair must be finite")
    trace: list[IterationRecord] = []
    try:
        r = _residual(system, v)
        for n in range(1, cfg.outer_cap + 1):
            try:
                jac = _fd_jacobian(system, v, r)
            except EvaluationFailure as exc:
                return _result(system, v, Status.JACOBIAN_BREAKDOWN, trace,
                               failure=exc, detail=f"finite differences failed: {exc}")
            if not np.all(np.isfinite(jac)):
                return _result(system, v, Status.JACOBIAN_BREAKDOWN, trace,
                               detail="non-finite finite-difference Jacobian entries")
            if np.linalg.cond(jac) > _COND_LIMIT:
                return _result(system, v, Status.SINGULAR_JACOBIAN, trace,
                               detail="Jacobian condition estimate above 1e12")
            step = np.linalg.solve(jac, -r)
            v_new = v + step
            r_new = _residual(system, v_new)
            step_x, step_y = _steps(v_new, v)
            _record(trace, n, v_new, r_new, step_x, step_y)
            v, r = v_new, r_new
            exit_status = _classify_exit(r, step_x, step_y, cfg)
            if exit_status is not None:
                return _result(system, v, exit_status, trace)
        return _result(system, v, Status.MAX_OUTER_ITERATIONS, trace)
    except EvaluationFailure as exc:
        return _result(system, v, Status.EVALUATION_FAILURE, trace,
                       failure=exc, detail=str(exc))
