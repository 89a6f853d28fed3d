"""Select the kernel implementation at import time.

The compiled extension is used when it imports cleanly, unless
``MODEMSIM_PURE_PYTHON`` is set to a non-empty value other than ``0``.
"""
import os

from . import _fallback

_force_python = os.environ.get("MODEMSIM_PURE_PYTHON", "") not in ("", "0")

kernels = _fallback
BACKEND = "python"
if not _force_python:
    try:
        from . import _kernels
    except ImportError:  # extension not built
        pass
    else:
        kernels = _kernels
        BACKEND = "compiled"
