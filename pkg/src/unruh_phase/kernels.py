"""Backend selection for the hot loops.

The Cython extension is used when it was built; otherwise (or when the
environment variable ``UNRUH_PHASE_PURE_PYTHON`` is non-empty) the pure-Python
implementations are used. ``BACKEND`` names the active one.
"""
import os

from . import _kernels_py

if os.environ.get("UNRUH_PHASE_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

rk4_linear = _impl.rk4_linear
overlap_phase_sum = _impl.overlap_phase_sum

__all__ = ["BACKEND", "rk4_linear", "overlap_phase_sum"]
