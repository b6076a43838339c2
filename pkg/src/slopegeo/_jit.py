"""Numba shim.

Set ``SLOPEGEO_DISABLE_NUMBA=1`` to run every kernel as plain Python/numpy.
The flag is read once at import time.
"""
import os

_DISABLED = os.environ.get("SLOPEGEO_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False
    _njit = None


def njit(*args, **kw):
    """``numba.njit`` when available and enabled, identity decorator otherwise."""
    if HAVE_NUMBA:
        kw.setdefault("cache", True)
        return _njit(*args, **kw)
    if len(args) == 1 and callable(args[0]) and not kw:
        return args[0]
    return lambda f: f
