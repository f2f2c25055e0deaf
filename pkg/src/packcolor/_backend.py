"""Pick the compiled kernels when built, else the pure-Python reference.

Set ``PACKCOLOR_PURE=1`` to force the reference implementation.
"""
import os

from . import _pykernels

try:
    if os.environ.get("PACKCOLOR_PURE"):
        raise ImportError("pure backend requested")
    from . import _ckernels as kernels
    BACKEND = "compiled"
except ImportError:
    kernels = _pykernels
    BACKEND = "python"


def get(name: str | None = None):
    """Kernel module by name: ``"compiled"``, ``"python"`` or ``None`` (active)."""
    if name is None:
        return kernels
    if name == "python":
        return _pykernels
    if name == "compiled":
        from . import _ckernels
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")
