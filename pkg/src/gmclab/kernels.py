"""Backend selection for the hot kernels.

The compiled extension is used when importable; ``GMCLAB_PURE=1`` forces the
numpy fallback.  ``BACKEND`` records which one is active.
"""
import os

from gmclab import _kernels_py
from gmclab._kernels_py import clog1p

if os.environ.get("GMCLAB_PURE"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from gmclab import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

loggamma = _impl.loggamma
log_gamma2 = _impl.log_gamma2
weighted_expsum = _impl.weighted_expsum

__all__ = ["clog1p", "loggamma", "log_gamma2", "weighted_expsum", "BACKEND"]
