"""Kernel backend selection.

The compiled extension ``geo3d._speedups`` is used when it imported cleanly;
otherwise the numpy fallback ``geo3d._pykernels`` takes over.  Setting the
environment variable ``GEO3D_PURE_PYTHON=1`` forces the fallback, which the
benchmark and the backend-equivalence tests rely on.
"""

from __future__ import annotations

import os

from geo3d import _pykernels

BACKEND = "python"

if os.environ.get("GEO3D_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from geo3d import _speedups as _impl  # type: ignore[no-redef]

        BACKEND = "c"
    except ImportError:
        _impl = _pykernels

derivative_grids = _impl.derivative_grids
idw_many = _impl.idw_many
variogram_accumulate = _impl.variogram_accumulate
levenshtein = _impl.levenshtein

__all__ = [
    "BACKEND",
    "derivative_grids",
    "idw_many",
    "levenshtein",
    "variogram_accumulate",
]
