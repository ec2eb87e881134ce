"""Numba switch for the numeric kernels.

Set ``DUALFRAMES_NO_JIT=1`` to run every kernel as plain Python/numpy. The
compiled and interpreted paths execute the same source.
"""
import os

_FLAG = os.environ.get("DUALFRAMES_NO_JIT", "").strip().lower()

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional extra
    numba = None

USE_NUMBA = numba is not None and _FLAG not in ("1", "true", "yes", "on")


def jit(func):
    if USE_NUMBA:
        return numba.njit(cache=True)(func)
    return func


def python_impl(kernel):
    """Return the interpreted version of a kernel regardless of the flag."""
    return getattr(kernel, "py_func", kernel)
