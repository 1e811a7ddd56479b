"""Kernel backend selection.

Prefers the compiled Cython extension, falls back to the numpy
implementation when the extension is absent.  Set ``SPINVDW_PURE_PYTHON=1``
to force the fallback (used by the test suite and the benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("SPINVDW_PURE_PYTHON"):
    from . import _kernels_py as _impl

    KERNEL_BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        KERNEL_BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl  # type: ignore[no-redef]

        KERNEL_BACKEND = "python"

schmidt_entropy_grid = _impl.schmidt_entropy_grid
