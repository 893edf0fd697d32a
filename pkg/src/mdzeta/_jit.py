"""Optional numba acceleration.

Hot kernels are written twice: a numba ``@njit`` loop and a vectorised numpy
path.  Setting ``MDZETA_DISABLE_NUMBA=1`` in the environment (or not having
numba installed) selects the numpy path everywhere.  The flag is read at call
time so tests and the benchmark can toggle it.
"""

from __future__ import annotations

import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

ENV_FLAG = "MDZETA_DISABLE_NUMBA"

_BACKENDS = ("numba", "numpy")


def numba_enabled() -> bool:
    flag = os.environ.get(ENV_FLAG, "").strip().lower()
    if flag in {"1", "true", "yes", "on"}:
        return False
    return HAVE_NUMBA


def resolve_backend(backend: str | None = None) -> str:
    """Return ``"numba"`` or ``"numpy"``; ``None`` means follow the env flag."""
    if backend is None:
        return "numba" if numba_enabled() else "numpy"
    if backend not in _BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; expected one of {_BACKENDS}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not installed")
    return backend


def njit(func):
    """``numba.njit(cache=True)`` when numba is importable, else identity.

    The plain Python function stays reachable as ``.py_func`` in both cases,
    which is how the numpy path calls the array-compatible helpers.
    """
    if HAVE_NUMBA:
        return numba.njit(cache=True)(func)
    func.py_func = func
    return func
