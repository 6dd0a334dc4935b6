"""Reduction kernel selection.

The compiled extension is used when it imported cleanly; set
STABLEVOL_PURE_PYTHON=1 to force the pure-Python kernel. Both kernels
implement the identical contract and are cross-checked in the test suite.
"""

from __future__ import annotations

import os

from . import _reduction_py

try:
    from . import _speedups
except ImportError:  # extension not built; pure Python still works
    _speedups = None


def active_backend() -> str:
    if os.environ.get("STABLEVOL_PURE_PYTHON") == "1":
        return "python"
    return "c" if _speedups is not None else "python"


def reduce_columns(columns, order, clearing=True, track_v=False):
    if active_backend() == "c":
        return _speedups.reduce_columns(columns, order, clearing, track_v)
    return _reduction_py.reduce_columns(columns, order, clearing, track_v)
