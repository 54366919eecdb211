"""Kernel backend selection.

Set ``SUPEROSC_NO_NUMBA=1`` to force the pure-numpy kernels (e.g. for
debugging or on platforms without a working numba).  The choice is made once
at import time; ``BACKEND`` reports which path is active.
"""

from __future__ import annotations

import os

_disabled = os.environ.get("SUPEROSC_NO_NUMBA", "").lower() in ("1", "true", "yes")

if not _disabled:
    try:
        from . import kernels_numba as _impl
        BACKEND = "numba"
    except ImportError:
        from . import kernels_numpy as _impl
        BACKEND = "numpy"
else:
    from . import kernels_numpy as _impl
    BACKEND = "numpy"

mode_sum = _impl.mode_sum
gauss_mode_integral = _impl.gauss_mode_integral
