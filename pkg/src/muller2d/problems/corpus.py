"""Analytic test-problem corpus with oracle-verified roots.

Golden root values marked "oracle" were produced by the brute-force
grid-scan + bisection oracle reimplemented in the test suite; the corpus
only stores the frozen numbers.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Callable

from ..types import BivariateSystem, EvaluationFailure, PointPair


@dataclass(frozen=True)
class CorpusProblem:
    """One corpus entry: fresh system factory, known roots, suggested start."""

    name: str
    make: Callable[[], BivariateSystem]
    roots: tuple[PointPair, ...]
    start: PointPair
    description: str
    expect_converge: bool = True
    aliases: tuple[str, ...] = ()


def _affine() -> BivariateSystem:
    return BivariateSystem(lambda x, y: x + y - 3.0,
                           lambda x, y: x - y - 1.0, name="affine")


def _circle_line() -> BivariateSystem:
    return BivariateSystem(lambda x, y: x * x + y * y - 2.0,
                           lambda x, y: x - y, name="circle-line")


#: Oracle root of exp(x) + y*x - 7 = 0 at y = 2 (bisection to 1e-12).
C3_ROOT_X = 1.423723382439996
#: Oracle root at y = 3.
C3_ROOT_X_Y3 = 1.2125976333300712


def _integer_pathology() -> BivariateSystem:
    """F1 pins y to an integer; F2 couples both unknowns transcendentally.

    F1 depends on y alone (its x-derivative vanishes identically), so once
    the integer coordinate locks, derivative-based solvers probe a function
    that no longer responds in half their stencil directions.
    """

    def f1(x: complex, y: complex) -> complex:
        return cmath.sin(cmath.pi * y)

    def f2(x: complex, y: complex) -> complex:
        return cmath.exp(x) + y * x - 7.0

    return BivariateSystem(f1, f2, name="integer-pathology")


#: Oracle root of the double-transcendental pair (grid scan 1e-3 + bisection).
C4_ROOT = PointPair(1.4539749388736953, -0.99318413842726)


def _double_transcendental() -> BivariateSystem:
    return BivariateSystem(lambda x, y: cmath.sin(x) + y,
                           lambda x, y: x + cmath.cos(y) - 2.0,
                           name="double-transcendental")


#: The evaluation-failure disk of C5: |x - 2| < this radius fails.
C5_FAIL_RADIUS = 0.3


def _failure_region() -> BivariateSystem:
    """Affine system whose F1 signals failure in a disk containing the root."""

    def f1(x: complex, y: complex) -> complex:
        if abs(x - 2.0) < C5_FAIL_RADIUS:
            raise EvaluationFailure(
                f"f1 undefined inside |x - 2| < {C5_FAIL_RADIUS}", point=(x, y))
        return x + y - 3.0

    return BivariateSystem(f1, lambda x, y: x - y - 1.0, name="failure-region")


def corpus() -> list[CorpusProblem]:
    """The five corpus problems with fresh (zero-counter) systems."""
    return [
        CorpusProblem(
            name="affine",
            make=_affine,
            roots=(PointPair(2.0 + 0j, 1.0 + 0j),),
            start=PointPair(0.0 + 0j, 0.0 + 0j),
            description="nonsingular affine pair; unique closed-form root",
            aliases=("c1",),
        ),
        CorpusProblem(
            name="circle-line",
            make=_circle_line,
            roots=(PointPair(1.0 + 0j, 1.0 + 0j), PointPair(-1.0 + 0j, -1.0 + 0j)),
            start=PointPair(0.8 + 0j, 0.9 + 0j),
            description="circle x^2 + y^2 = 2 meets the line y = x",
            aliases=("c2",),
        ),
        CorpusProblem(
            name="integer-pathology",
            make=_integer_pathology,
            roots=(PointPair(C3_ROOT_X + 0j, 2.0 + 0j),
                   PointPair(C3_ROOT_X_Y3 + 0j, 3.0 + 0j)),
            start=PointPair(1.2 + 0.1j, 2.2 + 0.1j),
            description="one equation depends on y alone with integer roots",
            aliases=("c3",),
        ),
        CorpusProblem(
            name="double-transcendental",
            make=_double_transcendental,
            roots=(C4_ROOT,),
            start=PointPair(1.3 + 0.1j, -0.8 + 0.1j),
            description="sin/cos coupled pair; root frozen from the scan oracle",
            aliases=("c4",),
        ),
        CorpusProblem(
            name="failure-region",
            make=_failure_region,
            roots=(PointPair(2.0 + 0j, 1.0 + 0j),),
            start=PointPair(0.0 + 0j, 0.0 + 0j),
            description="affine pair whose root hides inside an evaluation-failure disk",
            expect_converge=False,
            aliases=("c5",),
        ),
    ]
