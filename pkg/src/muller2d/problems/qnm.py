"""Black-hole quasi-normal-mode test systems via Leaver continued fractions.

All frequencies and the spin parameter are expressed in 2M = 1 units with
Im(omega) > 0 for damped modes. The Schwarzschild system has unknowns
(omega, l); the Kerr system has unknowns (omega, A) with the angular
eigenvalue normalized so that A -> l(l+1) - s(s+1) as the spin vanishes.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from scipy.special import loggamma

from ..types import BivariateSystem, CFNonConvergence, EvaluationFailure, PrecondViolation
from .contfrac import CFProblem
from .kernels import kerr_angular_cf, kerr_radial_cf, rw_cf

#: Default tail depth for the QNM continued fractions. The generic CFProblem
#: default (3000) under-resolves overtones n >= 7 at the benchmark tolerances,
#: so the QNM presets run much deeper; the kernels make this cheap.
QNM_MAX_DEPTH = 100_000
QNM_CF_TOL = 1e-14


class Family(enum.Enum):
    SCHWARZSCHILD_RW = "schwarzschild-rw"
    KERR_TEUKOLSKY = "kerr-teukolsky"


@dataclass(frozen=True)
class QNMProblemSpec:
    """Parameters selecting one QNM root-finding problem (2M = 1 throughout).

    ``n`` is the overtone hint: it selects the continued-fraction inversion
    index that makes that overtone the numerically dominant root. ``ell``
    is used only to pick the angular inversion for Kerr (the angular
    eigenvalue itself is an unknown there) and for preset naming.
    """

    family: Family
    s: int = 2
    a: float = 0.0
    m: int = 0
    n: int = 0
    ell: int = 2
    max_depth: int = QNM_MAX_DEPTH
    cf_tol: float = QNM_CF_TOL

    MASS_CONVENTION = "2M=1"

    def __post_init__(self):
        if self.n < 0:
            raise PrecondViolation("overtone hint n must be non-negative")
        if not 0.0 <= self.a < 0.5:
            raise PrecondViolation("spin must satisfy 0 <= a < M (a < 1/2 in 2M=1 units)")
        if self.family == Family.SCHWARZSCHILD_RW and self.a != 0.0:
            raise PrecondViolation("Schwarzschild problems require a = 0")
        if self.max_depth < 1 or self.cf_tol <= 0:
            raise PrecondViolation("max_depth must be positive and cf_tol > 0")

    @property
    def angular_inversion(self) -> int:
        return max(self.ell - max(abs(self.m), abs(self.s)), 0)


def _police(label: str, point, value_err_depth, max_depth: int, cf_tol: float) -> complex:
    """Convert kernel output into a value, raising on CF non-convergence."""
    value, err, depth = value_err_depth
    if depth >= max_depth and err > cf_tol ** 0.5:
        exc = CFNonConvergence(
            f"{label} continued fraction unconverged at depth {depth} "
            f"(step deviation {err:.2e})")
        raise EvaluationFailure(str(exc), point=point, function=label) from exc
    return value


#: Far-field saturation for the angular surrogate: |value| is clamped into
#: [e^-300, e^300] away from its zeros so wild solver excursions see huge
#: finite magnitudes instead of overflow (IEEE doubles lack the exponent
#: range the true function needs at |Im l| beyond a few hundred).
_SURROGATE_LOG_CAP = 300.0
_LOG_PI = math.log(math.pi)


def angular_surrogate(ell: complex) -> complex:
    """sin(pi*l) / Gamma(l - 1): entire in l, zero at every integer l >= 2.

    Evaluated in log space through sin(pi*z) = pi / (Gamma(z) Gamma(1-z))
    with the magnitude saturated in the far field. Integers l <= 1 are also
    zeros (of higher order, the sine zero joining the reciprocal-gamma
    zero), so starting points must sit near the target angular momentum;
    the benchmark starts near l = 2.
    """
    z = complex(ell)
    t1 = complex(loggamma(z))
    t2 = complex(loggamma(1.0 - z))
    t3 = complex(loggamma(z - 1.0))
    if not (cmath.isfinite(t1) and cmath.isfinite(t2) and cmath.isfinite(t3)):
        # A gamma pole was hit exactly: the reciprocal vanishes.
        return 0j
    w = _LOG_PI - t1 - t2 - t3
    re = min(max(w.real, -_SURROGATE_LOG_CAP), _SURROGATE_LOG_CAP)
    return cmath.exp(complex(re, w.imag))


def schwarzschild_system(spec: QNMProblemSpec) -> BivariateSystem:
    """System in (omega, l): angular surrogate and Regge-Wheeler radial CF."""
    if spec.family != Family.SCHWARZSCHILD_RW:
        raise PrecondViolation("spec.family must be SCHWARZSCHILD_RW")
    s2 = float(spec.s * spec.s)

    def f1(omega: complex, ell: complex) -> complex:
        return angular_surrogate(ell)

    def f2(omega: complex, ell: complex) -> complex:
        out = rw_cf(omega, ell, s2, spec.n, spec.max_depth, spec.cf_tol)
        return _police("regge-wheeler-cf", (omega, ell), out,
                       spec.max_depth, spec.cf_tol)

    return BivariateSystem(f1, f2, name=f"schwarzschild-l{spec.ell}-n{spec.n}")


def kerr_system(spec: QNMProblemSpec) -> BivariateSystem:
    """System in (omega, A): radial Teukolsky CF and angular spheroidal CF."""
    if spec.family != Family.KERR_TEUKOLSKY:
        raise PrecondViolation("spec.family must be KERR_TEUKOLSKY")
    ang_inv = spec.angular_inversion

    def f1(omega: complex, a_sep: complex) -> complex:
        out = kerr_radial_cf(omega, a_sep, spec.a, spec.s, spec.m,
                             spec.n, spec.max_depth, spec.cf_tol)
        return _police("kerr-radial-cf", (omega, a_sep), out,
                       spec.max_depth, spec.cf_tol)

    def f2(omega: complex, a_sep: complex) -> complex:
        out = kerr_angular_cf(omega, a_sep, spec.a, spec.s, spec.m,
                              ang_inv, spec.max_depth, spec.cf_tol)
        return _police("kerr-angular-cf", (omega, a_sep), out,
                       spec.max_depth, spec.cf_tol)

    return BivariateSystem(f1, f2, name=f"kerr-s{spec.s}-a{spec.a}-n{spec.n}")


# ---------------------------------------------------------------------------
# CFProblem views of the same recurrences. These route through the generic
# engine (problems.contfrac) and exist for cross-checks against the kernels
# and for callers who want the raw three-term recurrences.

def rw_cf_problem(spec: QNMProblemSpec) -> CFProblem:
    """Regge-Wheeler recurrence as a CFProblem in unknowns (omega, l)."""
    s2 = float(spec.s * spec.s)

    def alpha(n: int, u):
        rho = 1j * u[0]
        return n * n + (2.0 * rho + 2.0) * n + 2.0 * rho + 1.0

    def beta(n: int, u):
        rho = 1j * u[0]
        lam = u[1] * (u[1] + 1.0)
        return -(2.0 * n * n + (8.0 * rho + 2.0) * n + 8.0 * rho * rho
                 + 4.0 * rho + lam - s2 + 1.0)

    def gamma(n: int, u):
        rho = 1j * u[0]
        return n * n + 4.0 * rho * n + 4.0 * rho * rho - s2

    return CFProblem(alpha, beta, gamma, inversion_index=spec.n,
                     max_depth=spec.max_depth, cf_tol=spec.cf_tol)


def kerr_radial_cf_problem(spec: QNMProblemSpec) -> CFProblem:
    """Radial Teukolsky recurrence as a CFProblem in unknowns (omega, A)."""
    import math

    def dconst(u):
        w = 0.5 * u[0]
        a = 2.0 * spec.a
        root = math.sqrt(1.0 - a * a)
        sigma_p = (2.0 * w * (1.0 + root) - spec.m * a) / (2.0 * root)
        sigma_m = (2.0 * w * (1.0 - root) - spec.m * a) / (2.0 * root)
        zeta = -1j * w
        xi = -spec.s + 1j * sigma_p
        eta = 1j * sigma_m
        p = root * zeta
        alpha_e = 1.0 + spec.s + xi + eta - 2.0 * zeta + spec.s
        gamma_e = 1.0 + spec.s + 2.0 * eta
        delta_e = 1.0 + spec.s + 2.0 * xi
        sigma_e = (u[1] + a * a * w * w - 8.0 * w * w
                   + p * (2.0 * alpha_e + gamma_e - delta_e)
                   + (1.0 + spec.s - 0.5 * (gamma_e + delta_e))
                   * (spec.s + 0.5 * (gamma_e + delta_e)))
        return (delta_e,
                4.0 * p - 2.0 * alpha_e + gamma_e - delta_e - 2.0,
                2.0 * alpha_e - gamma_e + 2.0,
                alpha_e * (4.0 * p - delta_e) - sigma_e,
                alpha_e * (alpha_e - gamma_e + 1.0))

    def alpha(n: int, u):
        d0, _, _, _, _ = dconst(u)
        return n * n + (d0 + 1.0) * n + d0

    def beta(n: int, u):
        _, d1, _, d3, _ = dconst(u)
        return -2.0 * n * n + (d1 + 2.0) * n + d3

    def gamma(n: int, u):
        _, _, d2, _, d4 = dconst(u)
        return n * n + (d2 - 3.0) * n + d4 - d2 + 2.0

    return CFProblem(alpha, beta, gamma, inversion_index=spec.n,
                     max_depth=spec.max_depth, cf_tol=spec.cf_tol)


def kerr_angular_cf_problem(spec: QNMProblemSpec) -> CFProblem:
    """Angular spheroidal recurrence as a CFProblem in unknowns (omega, A)."""
    k1 = 0.5 * abs(spec.m - spec.s)
    k2 = 0.5 * abs(spec.m + spec.s)

    def alpha(n: int, u):
        return -2.0 * (n + 1.0) * (n + 2.0 * k1 + 1.0)

    def beta(n: int, u):
        cc = spec.a * u[0]
        return (n * (n - 1.0) + 2.0 * n * (k1 + k2 + 1.0 - 2.0 * cc)
                - (2.0 * cc * (2.0 * k1 + spec.s + 1.0)
                   - (k1 + k2) * (k1 + k2 + 1.0))
                - (cc * cc + spec.s * (spec.s + 1.0) + u[1]))

    def gamma(n: int, u):
        cc = spec.a * u[0]
        return 2.0 * cc * (n + k1 + k2 + spec.s)

    return CFProblem(alpha, beta, gamma, inversion_index=spec.angular_inversion,
                     max_depth=spec.max_depth, cf_tol=spec.cf_tol)
