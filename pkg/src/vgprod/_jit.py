"""JIT plumbing for the hot numeric kernels.

The residue-series and contour-quadrature kernels are compiled with numba
by default.  Setting the environment variable ``VGPROD_DISABLE_NUMBA=1``
before import selects a pure-Python/numpy fallback path (same source, no
compilation).  ``benchmarks/bench_kernels.py`` compares the two.
"""

import os

NUMBA_ENABLED = os.environ.get("VGPROD_DISABLE_NUMBA", "") not in ("1", "true", "yes")

if NUMBA_ENABLED:
    try:
        from numba import njit as _numba_njit
    except ImportError:  # pragma: no cover - numba is a hard dependency
        NUMBA_ENABLED = False

if NUMBA_ENABLED:
    def njit(func=None, **kwargs):
        kwargs.setdefault("cache", True)
        if func is None:
            return _numba_njit(**kwargs)
        return _numba_njit(**kwargs)(func)
else:
    def njit(func=None, **kwargs):
        if func is None:
            return lambda f: f
        return func
