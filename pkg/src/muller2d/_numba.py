"""Optional numba acceleration for the hot continued-fraction kernels.

Set MULLER2D_DISABLE_NUMBA=1 to force the pure-Python path; the same
source functions run either way, so both paths produce identical results.
"""

from __future__ import annotations

import os

DISABLE_ENV = "MULLER2D_DISABLE_NUMBA"

try:
    from numba import njit as _njit
    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _njit = None
    _HAVE_NUMBA = False

NUMBA_ENABLED = _HAVE_NUMBA and os.environ.get(DISABLE_ENV, "") not in ("1", "true", "yes")


def maybe_jit(func):
    """Apply @njit(cache=True) when enabled, otherwise return func unchanged."""
    if NUMBA_ENABLED:
        return _njit(cache=True)(func)
    return func
