"""Distance-kernel backend selection.

The compiled extension is preferred when available; set NLDD_PURE_PYTHON=1
to force the numpy fallback (used by the benchmark and for debugging).
"""

import os

if os.environ.get("NLDD_PURE_PYTHON"):
    from . import _dist_py as _impl
else:
    try:
        from . import _dist_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _dist_py as _impl

BACKEND = _impl.BACKEND
sq_dists = _impl.sq_dists
pairwise_sq_dists = _impl.pairwise_sq_dists
