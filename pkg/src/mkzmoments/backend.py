"""Kernel backend selection: compiled extension if available, else pure Python.

Set ``MKZMOMENTS_PURE_PYTHON=1`` to force the fallback (used by the backend
benchmark and by tests that exercise both paths).
"""

import os

if os.environ.get("MKZMOMENTS_PURE_PYTHON"):
    from . import kernels as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import kernels as _impl

polylog_series = _impl.polylog_series
mkz_moment_series = _impl.mkz_moment_series
hyp2f1_1_2_series = _impl.hyp2f1_1_2_series


def backend_name() -> str:
    """Which kernel implementation is active: "cython" or "python"."""
    return _impl.IMPLEMENTATION
