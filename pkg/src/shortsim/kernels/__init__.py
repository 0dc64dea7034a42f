"""Training kernels with a compiled fast path.

The Cython extension is used when it has been built; otherwise the NumPy
implementation takes over transparently. Set ``SHORTSIM_PURE_PYTHON=1`` to
force the NumPy backend (used by the benchmark and the backend-parity tests).
"""

from __future__ import annotations

import os

if os.environ.get("SHORTSIM_PURE_PYTHON"):
    from shortsim.kernels import _numpy as _impl
else:
    try:
        from shortsim.kernels import _inner as _impl  # type: ignore[no-redef]
    except ImportError:
        from shortsim.kernels import _numpy as _impl  # type: ignore[no-redef]

BACKEND: str = _impl.BACKEND
batch_objective_grad = _impl.batch_objective_grad
weighted_mean_distances = _impl.weighted_mean_distances

__all__ = ["BACKEND", "batch_objective_grad", "weighted_mean_distances"]
