"""Kernel selection: compiled extension when available, pure Python otherwise.

Set KISIN_PURE_PYTHON=1 to force the fallback (used by the benchmark and by
tests comparing the two implementations).
"""

from __future__ import annotations

import os

from . import _pykernel

if os.environ.get("KISIN_PURE_PYTHON"):
    _impl = _pykernel
else:
    try:
        from . import _kernel as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pykernel

IMPLEMENTATION = "compiled" if _impl is not _pykernel else "pure-python"
solve_points = _impl.solve_points
