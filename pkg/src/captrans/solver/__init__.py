"""Optimal-plan solvers for capacity-constrained transportation instances.

Two engines share one pivot sequence:

* a compiled kernel (Cython, int64 and float64 paths), used when it was
  built and the instance's scaled magnitudes fit machine integers;
* a pure-Python kernel, always available, arbitrary-precision in exact
  mode and the reference for bit-identical float behaviour.

Set CAPTRANS_PURE=1 to force the pure kernel. ``active_backend`` reports
which engine a solve would use.
"""
from __future__ import annotations

import os

try:
    from . import _kernel as _compiled
except ImportError:  # extension not built; pure fallback
    _compiled = None

HAVE_COMPILED = _compiled is not None


def compiled_enabled() -> bool:
    return HAVE_COMPILED and os.environ.get("CAPTRANS_PURE", "") != "1"


from .core import SolveResult, active_backend, phase1_feasibility, solve  # noqa: E402
from .oracle import oracle_solve  # noqa: E402

__all__ = [
    "SolveResult",
    "solve",
    "oracle_solve",
    "phase1_feasibility",
    "active_backend",
    "HAVE_COMPILED",
    "compiled_enabled",
]
