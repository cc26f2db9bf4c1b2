"""Select the compiled pair-scan kernel, falling back to pure Python.

Set ``CTRKIT_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("CTRKIT_PURE_PYTHON", "") not in ("", "0"):
    kernels = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        kernels = _kernels_py
        BACKEND = "python"

pair_scan = kernels.pair_scan
