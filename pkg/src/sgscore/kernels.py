"""Inner-loop kernels, compiled when available.

The Cython build is optional. Set ``SGSCORE_PURE_PYTHON=1`` to force the
pure-Python implementations even when the extension is importable.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKENDS = {"python": _pykernels}

try:
    from . import _ckernels
except ImportError:
    _ckernels = None
else:
    BACKENDS["cython"] = _ckernels

if _ckernels is not None and not os.environ.get("SGSCORE_PURE_PYTHON"):
    BACKEND = "cython"
else:
    BACKEND = "python"

_active = BACKENDS[BACKEND]
max_matching = _active.max_matching
lcs_length = _active.lcs_length
kendall_counts = _active.kendall_counts

__all__ = ["BACKEND", "BACKENDS", "max_matching", "lcs_length", "kendall_counts"]
