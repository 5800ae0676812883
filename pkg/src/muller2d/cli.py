"""Command-line front end: single solves, benchmark runs, iteration traces.

Complex literals use the form "a+bi" with no spaces; pairs are
comma-separated, e.g. --start "0.74+0.17i,2.1+0.01i".

Exit codes: 0 converged (including the one-zero exit), 2 non-convergence,
3 evaluation failure, 4 bad arguments, 5 trace/CSV I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass

from .baselines import broyden_solve, newton_fd_solve
from .muller1d import muller1d
from .problems import BENCH_SETS, Preset, build_preset, parse_overrides, preset_names
from .solver2d import muller2d_solve
from .types import (
    EquationOrder,
    EvaluationFailure,
    IterationRecord,
    PointPair,
    PrecondViolation,
    RootResult,
    SolverConfig,
    Status,
    Variant,
)

EXIT_OK = 0
EXIT_NO_CONVERGENCE = 2
EXIT_EVAL_FAILURE = 3
EXIT_BAD_ARGS = 4
EXIT_IO = 5

SOLVERS = ("muller2d-m1", "muller2d-m2", "broyden", "newton", "muller1d")

TRACE_COLUMNS = ["n", "re_x", "im_x", "re_y", "im_y", "f1_abs", "f2_abs",
                 "step_x", "step_y", "inner_iters"]
BENCH_COLUMNS = ["problem", "solver", "status", "re_x", "im_x", "re_y", "im_y",
                 "res1", "res2", "outer_iters", "inner_iters",
                 "evals_f1", "evals_f2", "ms"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_BAD_ARGS)


def parse_complex(text: str) -> complex:
    """Parse "a+bi" (also plain reals and pure-imaginary forms)."""
    try:
        value = complex(text.strip().replace("i", "j"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"malformed complex number {text!r}") from exc
    if not (abs(value.real) < float("inf") and abs(value.imag) < float("inf")
            and value == value):
        raise argparse.ArgumentTypeError(f"non-finite complex number {text!r}")
    return value


def parse_pair(text: str) -> PointPair:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(
            f"expected two comma-separated complex numbers, got {text!r}")
    return PointPair(parse_complex(parts[0]), parse_complex(parts[1]))


def _add_common(p: _Parser) -> None:
    p.add_argument("--start", type=parse_pair, default=None,
                   help='start pair "a+bi,c+di" (defaults to the preset start)')
    p.add_argument("--variant", choices=["m1", "m2"], default=None)
    p.add_argument("--order", choices=[o.value for o in EquationOrder],
                   default=EquationOrder.F1_F2.value)
    p.add_argument("--digits", type=int, default=12)
    p.add_argument("--inner-cap", type=int, default=6)
    p.add_argument("--outer-cap", type=int, default=100)
    p.add_argument("--delta", type=parse_complex, default=None,
                   help="seed perturbation (default: scale-aware)")
    p.add_argument("--residual-tol", type=float, default=1e-6)
    p.add_argument("--depth", type=int, default=None,
                   help="continued-fraction depth override (QNM problems)")
    p.add_argument("--problem-config", default=None,
                   help='key=value[,key=value...] or a path to a key=value file '
                        "(keys: s, a, m, n, ell, depth, cf_tol)")


def build_parser() -> _Parser:
    parser = _Parser(prog="muller2d",
                     description="Two-dimensional Muller root finding and benchmarks")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run one solve and print JSON")
    solve.add_argument("--problem", required=True)
    solve.add_argument("--solver", choices=SOLVERS, default="muller2d-m1")
    _add_common(solve)
    solve.add_argument("--trace", metavar="PATH", default=None,
                       help="also write the per-iteration CSV trace")
    solve.add_argument("--json", action="store_true",
                       help="embed the iteration trace in the JSON output")

    trace = sub.add_parser("trace", help="run one solve and write its CSV trace")
    trace.add_argument("--problem", required=True)
    trace.add_argument("--solver", choices=SOLVERS, default="muller2d-m1")
    _add_common(trace)
    trace.add_argument("--trace", metavar="PATH", required=True)
    trace.add_argument("--json", action="store_true")

    bench = sub.add_parser("bench", help="run a (problem x solver) benchmark grid")
    bench.add_argument("--set", dest="bench_set", choices=sorted(BENCH_SETS),
                       required=True)
    bench.add_argument("--solvers", default="all",
                       help='comma list from {%s} or "all"' % ", ".join(SOLVERS[:4]))
    bench.add_argument("--csv", metavar="PATH", default=None)
    _add_common(bench)
    return parser


def _config_from_args(args, variant_from_solver: str | None) -> SolverConfig:
    variant = args.variant or variant_from_solver or "m1"
    return SolverConfig(
        digits=args.digits,
        inner_cap=args.inner_cap,
        outer_cap=args.outer_cap,
        seed_delta=args.delta,
        residual_tol=args.residual_tol,
        variant=Variant(variant),
        order=EquationOrder(args.order),
    )


def _load_preset(args) -> Preset:
    overrides = {}
    if args.problem_config:
        text = args.problem_config
        if "=" not in text:
            with open(text, "r", encoding="utf-8") as fh:
                text = fh.read()
        overrides.update(parse_overrides(text))
    if args.depth is not None:
        overrides["depth"] = str(args.depth)
    return build_preset(args.problem, overrides or None)


@dataclass
class _Cell:
    problem: str
    solver: str
    result: RootResult
    ms: float


def _run_solver(preset: Preset, solver: str, start: PointPair,
                cfg: SolverConfig) -> RootResult:
    system = preset.make()
    if solver == "muller2d-m1" or solver == "muller2d-m2":
        return muller2d_solve(system, start, cfg)
    if solver == "broyden":
        return broyden_solve(system, start, cfg)
    if solver == "newton":
        return newton_fd_solve(system, start, cfg)
    # univariate probe: solve F1(x, y0) in x at fixed y0
    y0 = start.y
    try:
        res1d = muller1d(lambda x: system.eval_f1(x, y0), start.x, cfg)
    except EvaluationFailure as exc:
        return RootResult(start.x, y0, Status.EVALUATION_FAILURE,
                          [], system.evals_f1, system.evals_f2,
                          failure=exc, detail=str(exc))
    trace = []
    prev = start.x
    for i, (x, fa) in enumerate(zip(res1d.iterates, res1d.f_abs_history), start=1):
        trace.append(IterationRecord(i, x, y0, fa, 0.0, abs(x - prev), 0.0, 0))
        prev = x
    return RootResult(res1d.x, y0, res1d.status, trace,
                      system.evals_f1, system.evals_f2)


def _status_exit(status: Status) -> int:
    if status.succeeded:
        return EXIT_OK
    if status == Status.EVALUATION_FAILURE:
        return EXIT_EVAL_FAILURE
    return EXIT_NO_CONVERGENCE


def _trace_rows(result: RootResult):
    for rec in result.trace:
        yield [rec.index, rec.x.real, rec.x.imag, rec.y.real, rec.y.imag,
               rec.f1_abs, rec.f2_abs, rec.step_x, rec.step_y,
               rec.inner_iters_used]


def _write_trace(path: str, result: RootResult) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRACE_COLUMNS)
        writer.writerows(_trace_rows(result))


def _solve_json(args, preset: Preset, result: RootResult, solver: str) -> dict:
    out = {
        "problem": preset.name,
        "solver": solver,
        "status": result.status.value,
        "x": {"re": result.x.real, "im": result.x.imag},
        "y": {"re": result.y.real, "im": result.y.imag},
        "residuals": {"f1": result.f1_abs, "f2": result.f2_abs},
        "iterations": {"outer": result.outer_iterations,
                       "inner": result.inner_iterations},
        "evals": {"f1": result.evals_f1, "f2": result.evals_f2},
    }
    if result.detail:
        out["detail"] = result.detail
    if getattr(args, "json", False):
        out["trace"] = [dict(zip(TRACE_COLUMNS, row)) for row in _trace_rows(result)]
    return out


def cmd_solve(args) -> int:
    try:
        preset = _load_preset(args)
        cfg = _config_from_args(args, args.solver.rsplit("-", 1)[-1]
                                if args.solver.startswith("muller2d-") else None)
    except (PrecondViolation, OSError) as exc:
        print(f"muller2d: error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    start = args.start or preset.start
    result = _run_solver(preset, args.solver, start, cfg)
    print(json.dumps(_solve_json(args, preset, result, args.solver)))
    if args.trace:
        try:
            _write_trace(args.trace, result)
        except OSError as exc:
            print(f"muller2d: trace write failed for {args.trace}: {exc}",
                  file=sys.stderr)
            return EXIT_IO
    return _status_exit(result.status)


def _format_table(rows: list[list[str]], header: list[str]) -> str:
    widths = [max(len(header[i]), *(len(r[i]) for r in rows)) if rows else len(header[i])
              for i in range(len(header))]
    def fmt(row):
        return "  ".join(str(cell).ljust(widths[i]) for i, cell in enumerate(row))
    lines = [fmt(header), fmt(["-" * w for w in widths])]
    lines.extend(fmt(r) for r in rows)
    return "\n".join(lines)


def cmd_bench(args) -> int:
    if args.solvers == "all":
        solvers = list(SOLVERS[:4])
    else:
        solvers = [s.strip() for s in args.solvers.split(",") if s.strip()]
        bad = [s for s in solvers if s not in SOLVERS[:4]]
        if bad:
            print(f"muller2d: error: unknown solvers {bad}", file=sys.stderr)
            return EXIT_BAD_ARGS
    problems = BENCH_SETS[args.bench_set]
    cells: list[_Cell] = []
    for name in sorted(problems):
        for solver in sorted(solvers):
            try:
                ns = argparse.Namespace(**vars(args))
                ns.problem = name
                preset = _load_preset(ns)
            except (PrecondViolation, OSError) as exc:
                print(f"muller2d: error: {exc}", file=sys.stderr)
                return EXIT_BAD_ARGS
            cfg = _config_from_args(args, solver.rsplit("-", 1)[-1]
                                    if solver.startswith("muller2d-") else None)
            start = args.start or preset.start
            t0 = time.perf_counter()
            result = _run_solver(preset, solver, start, cfg)
            ms = 1000.0 * (time.perf_counter() - t0)
            cells.append(_Cell(name, solver, result, ms))

    csv_rows = []
    for cell in cells:
        r = cell.result
        csv_rows.append([cell.problem, cell.solver, r.status.value,
                         r.x.real, r.x.imag, r.y.real, r.y.imag,
                         r.f1_abs, r.f2_abs, r.outer_iterations,
                         r.inner_iterations, r.evals_f1, r.evals_f2,
                         f"{cell.ms:.3f}"])
    if args.csv:
        try:
            with open(args.csv, "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh)
                writer.writerow(BENCH_COLUMNS)
                writer.writerows(csv_rows)
        except OSError as exc:
            print(f"muller2d: CSV write failed for {args.csv}: {exc}",
                  file=sys.stderr)
            return EXIT_IO

    display = [[row[0], row[1], row[2],
                f"{row[3]:+.10g}{row[4]:+.10g}i", f"{row[5]:+.10g}{row[6]:+.10g}i",
                f"{row[7]:.2e}", f"{row[8]:.2e}", str(row[9]), str(row[10]),
                str(row[11]), str(row[12]), row[13]]
               for row in csv_rows]
    print(_format_table(display, ["problem", "solver", "status", "x", "y",
                                  "res1", "res2", "outer", "inner",
                                  "evals_f1", "evals_f2", "ms"]))

    required_failed = False
    for cell in cells:
        if not cell.solver.startswith("muller2d"):
            continue
        preset = build_preset(cell.problem)
        if preset.expect_converge and not cell.result.status.succeeded:
            required_failed = True
    return EXIT_NO_CONVERGENCE if required_failed else EXIT_OK


def cmd_trace(args) -> int:
    return cmd_solve(args)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_BAD_ARGS
    if args.command == "solve":
        return cmd_solve(args)
    if args.command == "trace":
        return cmd_trace(args)
    return cmd_bench(args)


if __name__ == "__main__":
    sys.exit(main())
