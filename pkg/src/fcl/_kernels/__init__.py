"""Backend selection for the hot amplitude-sweep kernels.

The compiled Cython extension is preferred when built; the numpy reference
implementation is the fallback. Set FCL_BACKEND=python or FCL_BACKEND=compiled
to force a choice (the latter raises if the extension is missing).
"""
import os

from . import pyref

_requested = os.environ.get("FCL_BACKEND", "auto").lower()

if _requested not in ("auto", "compiled", "python"):
    raise ImportError(
        f"FCL_BACKEND={_requested!r} not recognized; use auto, compiled, or python"
    )

if _requested == "python":
    _impl = pyref
    BACKEND = "python"
else:
    try:
        from . import _core as _impl
        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise ImportError(
                "FCL_BACKEND=compiled but the fcl._kernels._core extension is not built"
            )
        _impl = pyref
        BACKEND = "python"

field_sweep = _impl.field_sweep
cluster_sweep = _impl.cluster_sweep
floquet_sweep = _impl.floquet_sweep
exchange_sweep = _impl.exchange_sweep
exchange_local = _impl.exchange_local

__all__ = [
    "BACKEND",
    "field_sweep",
    "cluster_sweep",
    "floquet_sweep",
    "exchange_sweep",
    "exchange_local",
    "pyref",
]
