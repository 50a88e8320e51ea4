"""Kernel backend selection.

Two interchangeable kernel sets exist: numba-jitted loops (default) and a
pure-numpy fallback.  ``LRCC_BACKEND=numpy`` forces the fallback; anything
else prefers numba when it is importable.  Both stay importable side by side
so tests and benchmarks can compare them directly.
"""

from __future__ import annotations

import os

from . import _kernels_numpy

try:
    from . import _kernels_numba
except ImportError:  # pragma: no cover - numba is a hard dep, but stay usable
    _kernels_numba = None


def get_backend(name: str | None = None):
    """Return a kernel module by name, or the environment-selected default."""
    if name is None:
        name = os.environ.get("LRCC_BACKEND", "numba").strip().lower()
    if name == "numpy":
        return _kernels_numpy
    if name == "numba":
        if _kernels_numba is None:
            return _kernels_numpy
        return _kernels_numba
    raise ValueError(f"unknown backend {name!r}: expected 'numba' or 'numpy'")


active = get_backend()
