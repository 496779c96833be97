"""Kernel backend selection.

The compiled extension is used when importable; ``PLANAR_VACUUM_PURE=1`` forces
the pure-Python twin (useful for benchmarking and debugging).
"""
import os

if os.environ.get("PLANAR_VACUUM_PURE") == "1":
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels
    except ImportError:  # pragma: no cover - depends on build
        from . import _kernels_py as kernels

from . import _kernels_py as pure_kernels

BACKEND = kernels.BACKEND

__all__ = ["kernels", "pure_kernels", "BACKEND"]
