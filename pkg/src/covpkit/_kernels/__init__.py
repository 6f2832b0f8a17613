"""Kernel backend selection.

The compiled extension is preferred when importable; the pure-Python twin is
the fallback.  Set ``COVPKIT_PURE_KERNELS=1`` to force the fallback (used by
the benchmark and the backend-equivalence tests).
"""

import os

if os.environ.get("COVPKIT_PURE_KERNELS") == "1":
    from . import _pykernels as _impl

    BACKEND = "pure"
else:
    try:
        from . import _fastkernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _pykernels as _impl

        BACKEND = "pure"

echelon = _impl.echelon
det_bareiss = _impl.det_bareiss

__all__ = ["BACKEND", "echelon", "det_bareiss"]
