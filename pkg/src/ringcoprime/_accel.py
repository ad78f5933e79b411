"""Backend selection for the numeric kernels.

Numba is used when importable.  Setting ``RINGCOPRIME_DISABLE_NUMBA=1`` in the
environment forces the pure-numpy implementations instead.
"""

from __future__ import annotations

import os

ENV_FLAG = "RINGCOPRIME_DISABLE_NUMBA"

DISABLED = os.environ.get(ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

HAVE_NUMBA = _numba is not None
USE_NUMBA = HAVE_NUMBA and not DISABLED


def njit(func):
    """Compile ``func`` in nopython mode when numba is present, else return it unchanged."""
    if _numba is None:
        return func
    return _numba.njit(cache=True, nogil=True)(func)


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
