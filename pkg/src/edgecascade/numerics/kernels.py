"""Double-precision batch densities; compiled when available.

Set EDGECASCADE_PURE_PYTHON=1 to force the numpy implementation.
"""
from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels
if os.environ.get("EDGECASCADE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

gue_density = _impl.gue_density
lue_density = _impl.lue_density

__all__ = ["BACKEND", "gue_density", "lue_density"]
