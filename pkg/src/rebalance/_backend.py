"""Kernel backend selection.

The compiled extension is used when it imports; setting the environment
variable ``REBALANCE_PURE_PYTHON=1`` forces the numpy fallback.
"""

import os

from . import _kernels_py

_FORCE_PURE = os.environ.get("REBALANCE_PURE_PYTHON", "") not in ("", "0")

compiled = None
if not _FORCE_PURE:
    try:
        from . import _kernels as compiled
    except ImportError:
        compiled = None

kernels = compiled if compiled is not None else _kernels_py
name = "compiled" if compiled is not None else "python"


def get(backend=None):
    """Kernel module for ``backend`` ('compiled', 'python' or None for default)."""
    if backend is None:
        return kernels
    if backend == "python":
        return _kernels_py
    if backend == "compiled":
        if compiled is None:
            raise RuntimeError("compiled kernels are not available")
        return compiled
    raise ValueError(f"unknown backend {backend!r}")
