"""Hot-loop kernels, compiled when available.

The Cython build (``_ckernels``) is used if it imports; otherwise the
pure-Python module is used.  Set ``SNAPSTREAM_PURE=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKENDS = {"python": _kernels_py}

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None
else:
    BACKENDS["cython"] = _ckernels

if _ckernels is not None and os.environ.get("SNAPSTREAM_PURE", "") in ("", "0"):
    BACKEND = "cython"
    _impl = _ckernels
else:
    BACKEND = "python"
    _impl = _kernels_py

sliding_bag_counts = _impl.sliding_bag_counts
layer_runs = _impl.layer_runs
bsort_order = _impl.bsort_order

__all__ = ["BACKEND", "BACKENDS", "sliding_bag_counts", "layer_runs", "bsort_order"]
