"""Optional numba acceleration.

Set ``ADESIGN_DISABLE_NUMBA=1`` to force the pure-numpy kernels even when
numba is importable. The choice is read at import and can be flipped at
runtime with :func:`use_numba` (tests and the benchmark do this).
"""

from __future__ import annotations

import logging
import os
from contextlib import contextmanager

DISABLE_ENV = "ADESIGN_DISABLE_NUMBA"

try:
    import numba

    logging.getLogger("numba").setLevel(logging.WARNING)
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAVE_NUMBA = False

_enabled = HAVE_NUMBA and os.environ.get(DISABLE_ENV, "").lower() not in ("1", "true", "yes")


def njit(func):
    """``numba.njit(cache=True, nogil=True)`` when available, identity otherwise."""
    if HAVE_NUMBA:
        return numba.njit(cache=True, nogil=True)(func)
    return func


def numba_enabled() -> bool:
    return _enabled


def backend_name() -> str:
    return "numba" if _enabled else "numpy"


@contextmanager
def use_numba(flag: bool):
    """Temporarily select a backend; selecting numba without numba is a no-op."""
    global _enabled
    old = _enabled
    _enabled = bool(flag) and HAVE_NUMBA
    try:
        yield _enabled
    finally:
        _enabled = old
