"""Backend selection for the hot loops.

The compiled ``_kernels`` extension is used when it imports; otherwise the
numpy implementation in ``_pykernels`` takes over. Set ``HYPERAVG_PURE=1``
to force the fallback. Both modules are importable directly for
benchmarks and cross-checks.
"""

from __future__ import annotations

import os

from . import _pykernels as fallback

compiled = None
if os.environ.get("HYPERAVG_PURE") != "1":
    try:
        from . import _kernels as compiled
    except ImportError:
        compiled = None

active = compiled if compiled is not None else fallback
BACKEND: str = active.BACKEND

run_batch = active.run_batch
enumerate_sq_norms = active.enumerate_sq_norms
jacobi_eigenvalues = active.jacobi_eigenvalues
