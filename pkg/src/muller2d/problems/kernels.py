"""Hot continued-fraction kernels for the QNM problems.

Each kernel evaluates a k-times-inverted Leaver-type continued fraction:
finite head by direct recursion, infinite tail by modified Lentz, returning
(value, |last step multiplier - 1|, tail depth used). The functions are
self-contained scalar loops so numba can compile them; the pure-Python
fallback (MULLER2D_DISABLE_NUMBA=1) runs the identical source.

Conventions: frequencies and the spin parameter are in 2M = 1 units with
Im(omega) > 0 for damped modes, matching the benchmark tables.
"""

from __future__ import annotations

import math

from .._numba import maybe_jit

# Lentz rescue constant; also the start value for the b0 = 0 tail. Must be
# large enough that a1/_TINY cannot overflow for the coefficient magnitudes
# the solvers visit (Numerical-Recipes convention).
_TINY = 1e-30


def _rw_cf_impl(omega: complex, ell: complex, s2: float,
                inv: int, max_depth: int, tol: float):
    """Regge-Wheeler radial continued fraction (Schwarzschild, 2M = 1).

    Three-term recurrence in rho = i*omega with angular eigenvalue
    ell*(ell+1); s2 is the squared spin weight.
    """
    rho = 1j * omega
    lam = ell * (ell + 1.0)
    r2 = rho * rho

    head = 0j
    for i in range(inv):
        fi = float(i)
        al = fi * fi + (2.0 * rho + 2.0) * fi + 2.0 * rho + 1.0
        be = -(2.0 * fi * fi + (8.0 * rho + 2.0) * fi + 8.0 * r2 + 4.0 * rho
               + lam - s2 + 1.0)
        ga = fi * fi + 4.0 * rho * fi + 4.0 * r2 - s2
        den_h = be - ga * head
        if den_h == 0:
            den_h = _TINY + 0j
        head = al / den_h
    fk = float(inv)
    beta_k = -(2.0 * fk * fk + (8.0 * rho + 2.0) * fk + 8.0 * r2 + 4.0 * rho
               + lam - s2 + 1.0)
    gamma_k = fk * fk + 4.0 * rho * fk + 4.0 * r2 - s2
    finite = gamma_k * head
    alpha_prev = fk * fk + (2.0 * rho + 2.0) * fk + 2.0 * rho + 1.0

    f = _TINY + 0j
    c = f
    d = 0j
    delta = 0j
    j = 0
    while j < max_depth:
        j += 1
        fn = float(inv + j)
        be = -(2.0 * fn * fn + (8.0 * rho + 2.0) * fn + 8.0 * r2 + 4.0 * rho
               + lam - s2 + 1.0)
        ga = fn * fn + 4.0 * rho * fn + 4.0 * r2 - s2
        aj = alpha_prev * ga
        if j > 1:
            aj = -aj
        alpha_prev = fn * fn + (2.0 * rho + 2.0) * fn + 2.0 * rho + 1.0
        d = be + aj * d
        if d == 0:
            d = _TINY + 0j
        c = be + aj / c
        if c == 0:
            c = _TINY + 0j
        d = 1.0 / d
        delta = c * d
        f = f * delta
        if j >= 2 and abs(delta - 1.0) < tol:
            break
    return beta_k - finite - f, abs(delta - 1.0), j


def _kerr_radial_cf_impl(omega: complex, a_sep: complex, a_hat: float,
                         s: int, m: int, inv: int, max_depth: int, tol: float):
    """Radial Teukolsky continued fraction in (omega, separation constant).

    The recurrence is parameterized by the characteristic exponents at the
    horizons and infinity, folded into the constants d0..d4.
    """
    w = 0.5 * omega          # M = 1 frequency
    a = 2.0 * a_hat          # M = 1 spin
    root = math.sqrt(1.0 - a * a)
    sigma_p = (2.0 * w * (1.0 + root) - m * a) / (2.0 * root)
    sigma_m = (2.0 * w * (1.0 - root) - m * a) / (2.0 * root)
    zeta = -1j * w
    xi = -s + 1j * sigma_p
    eta = 1j * sigma_m
    p = root * zeta
    alpha_e = 1.0 + s + xi + eta - 2.0 * zeta + s
    gamma_e = 1.0 + s + 2.0 * eta
    delta_e = 1.0 + s + 2.0 * xi
    sigma_e = (a_sep + a * a * w * w - 8.0 * w * w
               + p * (2.0 * alpha_e + gamma_e - delta_e)
               + (1.0 + s - 0.5 * (gamma_e + delta_e))
               * (s + 0.5 * (gamma_e + delta_e)))
    d0 = delta_e
    d1 = 4.0 * p - 2.0 * alpha_e + gamma_e - delta_e - 2.0
    d2 = 2.0 * alpha_e - gamma_e + 2.0
    d3 = alpha_e * (4.0 * p - delta_e) - sigma_e
    d4 = alpha_e * (alpha_e - gamma_e + 1.0)
    g_const = d4 - d2 + 2.0

    head = 0j
    for i in range(inv):
        fi = float(i)
        al = fi * fi + (d0 + 1.0) * fi + d0
        be = -2.0 * fi * fi + (d1 + 2.0) * fi + d3
        ga = fi * fi + (d2 - 3.0) * fi + g_const
        den_h = be - ga * head
        if den_h == 0:
            den_h = _TINY + 0j
        head = al / den_h
    fk = float(inv)
    beta_k = -2.0 * fk * fk + (d1 + 2.0) * fk + d3
    gamma_k = fk * fk + (d2 - 3.0) * fk + g_const
    finite = gamma_k * head
    alpha_prev = fk * fk + (d0 + 1.0) * fk + d0

    f = _TINY + 0j
    c = f
    d = 0j
    delta = 0j
    j = 0
    while j < max_depth:
        j += 1
        fn = float(inv + j)
        be = -2.0 * fn * fn + (d1 + 2.0) * fn + d3
        ga = fn * fn + (d2 - 3.0) * fn + g_const
        aj = alpha_prev * ga
        if j > 1:
            aj = -aj
        alpha_prev = fn * fn + (d0 + 1.0) * fn + d0
        d = be + aj * d
        if d == 0:
            d = _TINY + 0j
        c = be + aj / c
        if c == 0:
            c = _TINY + 0j
        d = 1.0 / d
        delta = c * d
        f = f * delta
        if j >= 2 and abs(delta - 1.0) < tol:
            break
    return beta_k - finite - f, abs(delta - 1.0), j


def _kerr_angular_cf_impl(omega: complex, a_sep: complex, a_hat: float,
                          s: int, m: int, inv: int, max_depth: int, tol: float):
    """Spin-weighted spheroidal continued fraction in (omega, separation)."""
    cc = a_hat * omega       # = a_{M=1} * omega_{M=1}
    k1 = 0.5 * abs(m - s)
    k2 = 0.5 * abs(m + s)
    b_const = (-(2.0 * cc * (2.0 * k1 + s + 1.0) - (k1 + k2) * (k1 + k2 + 1.0))
               - (cc * cc + s * (s + 1.0) + a_sep))

    head = 0j
    for i in range(inv):
        fi = float(i)
        al = -2.0 * (fi + 1.0) * (fi + 2.0 * k1 + 1.0)
        be = fi * (fi - 1.0) + 2.0 * fi * (k1 + k2 + 1.0 - 2.0 * cc) + b_const
        ga = 2.0 * cc * (fi + k1 + k2 + s)
        den_h = be - ga * head
        if den_h == 0:
            den_h = _TINY + 0j
        head = al / den_h
    fk = float(inv)
    beta_k = fk * (fk - 1.0) + 2.0 * fk * (k1 + k2 + 1.0 - 2.0 * cc) + b_const
    gamma_k = 2.0 * cc * (fk + k1 + k2 + s)
    finite = gamma_k * head
    alpha_prev = -2.0 * (fk + 1.0) * (fk + 2.0 * k1 + 1.0)

    f = _TINY + 0j
    c = f
    d = 0j
    delta = 0j
    j = 0
    while j < max_depth:
        j += 1
        fn = float(inv + j)
        be = fn * (fn - 1.0) + 2.0 * fn * (k1 + k2 + 1.0 - 2.0 * cc) + b_const
        ga = 2.0 * cc * (fn + k1 + k2 + s)
        aj = alpha_prev * ga
        if j > 1:
            aj = -aj
        alpha_prev = -2.0 * (fn + 1.0) * (fn + 2.0 * k1 + 1.0)
        d = be + aj * d
        if d == 0:
            d = _TINY + 0j
        c = be + aj / c
        if c == 0:
            c = _TINY + 0j
        d = 1.0 / d
        delta = c * d
        f = f * delta
        if j >= 2 and abs(delta - 1.0) < tol:
            break
    return beta_k - finite - f, abs(delta - 1.0), j


# Pure-Python handles (always available, used by the kernel benchmark and
# the numba-agreement tests).
rw_cf_py = _rw_cf_impl
kerr_radial_cf_py = _kerr_radial_cf_impl
kerr_angular_cf_py = _kerr_angular_cf_impl

# Dispatch path: jitted unless disabled by env flag or numba is missing.
rw_cf = maybe_jit(_rw_cf_impl)
kerr_radial_cf = maybe_jit(_kerr_radial_cf_impl)
kerr_angular_cf = maybe_jit(_kerr_angular_cf_impl)
