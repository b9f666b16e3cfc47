"""Cost functions and the mixed-derivative assumption check.

Built-in kinds:

* ``quadratic``            c(x, y) = (x - y)^2 / 2
* ``periodic-quadratic``   c(x, y) = min over integer shifts k of (x - y - k)^2,
                           evaluated with k in {-1, 0, 1}, which is the full
                           minimum on the fundamental domain [-1/2, 1/2]^2
* ``tabulated``            an explicit matrix of per-cell values

The sampler estimates d2c/dxdy by a central cross difference at grid
midpoints and reports whether the non-degeneracy hypothesis (mixed second
derivative bounded away from zero) holds at the sampled points. It is a
diagnostic: solving proceeds regardless of the verdict.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DimensionError, DomainError
from .scalars import Scalar, as_matrix, ensure_scalar

COST_KINDS = ("quadratic", "periodic-quadratic", "tabulated")


@dataclass(frozen=True)
class CostSpec:
    """Declarative description of a cost function."""

    kind: str
    matrix: Optional[np.ndarray] = None  # tabulated only

    def __post_init__(self):
        if self.kind not in COST_KINDS:
            raise DomainError(f"unknown cost kind {self.kind!r}")
        if self.kind == "tabulated" and self.matrix is None:
            raise DomainError("tabulated cost requires a matrix")
        if self.kind != "tabulated" and self.matrix is not None:
            raise DomainError(f"{self.kind} cost takes no matrix")

    @staticmethod
    def quadratic() -> "CostSpec":
        return CostSpec(kind="quadratic")

    @staticmethod
    def periodic_quadratic() -> "CostSpec":
        return CostSpec(kind="periodic-quadratic")

    @staticmethod
    def tabulated(rows: Sequence[Sequence], mode: str) -> "CostSpec":
        rows = list(rows)
        m = len(rows)
        n = len(rows[0]) if m else 0
        if m == 0 or n == 0:
            raise DimensionError("tabulated cost must be non-empty")
        return CostSpec(kind="tabulated", matrix=as_matrix(rows, m, n, mode, "tabulated cost"))


def evaluate_cost(spec: CostSpec, x: Scalar, y: Scalar) -> Scalar:
    """Pointwise evaluation; exact for rational inputs on the built-in kinds."""
    if spec.kind == "quadratic":
        d = x - y
        return d * d / 2
    if spec.kind == "periodic-quadratic":
        z = x - y
        return min((z - k) * (z - k) for k in (-1, 0, 1))
    raise DomainError("tabulated costs have no pointwise form; index the matrix")


def _mixed_second_difference(c: Callable[[Scalar, Scalar], Scalar],
                             x: Scalar, y: Scalar, s: Scalar) -> Scalar:
    # [c(x+s,y+s) - c(x+s,y-s) - c(x-s,y+s) + c(x-s,y-s)] / (4 s^2)
    num = c(x + s, y + s) - c(x + s, y - s) - c(x - s, y + s) + c(x - s, y - s)
    return num / (4 * s * s)


@dataclass
class NondegeneracyReport:
    """Outcome of sampling d2c/dxdy on a grid of midpoint pairs."""

    points: List[Tuple[Scalar, Scalar]]
    estimates: List[Scalar]
    min_abs: Optional[Scalar]
    step: Optional[Scalar]
    threshold: float
    verdict: str  # "pass" | "degenerate" | "unchecked"
    degenerate_points: List[Tuple[int, int]] = field(default_factory=list)


def sample_nondegeneracy(spec, grid_x, grid_y, step=None, threshold: float = 1e-6) -> NondegeneracyReport:
    """Sample the mixed second derivative of the cost at all midpoint pairs.

    ``spec`` is a CostSpec or a plain callable c(x, y). Tabulated costs have
    no off-grid values to difference, so they come back ``"unchecked"``
    rather than faking a pass. The step must stay below half a cell so the
    stencil never leaves the cells being probed.
    """
    if isinstance(spec, CostSpec) and spec.kind == "tabulated":
        return NondegeneracyReport(points=[], estimates=[], min_abs=None, step=None,
                                   threshold=threshold, verdict="unchecked")
    if isinstance(spec, CostSpec):
        func = lambda x, y: evaluate_cost(spec, x, y)
    elif callable(spec):
        func = spec
    else:
        raise DomainError("spec must be a CostSpec or a callable c(x, y)")

    half_cell = min(grid_x.delta, grid_y.delta) / 2
    if step is None:
        step = half_cell / 2
    else:
        step = ensure_scalar(step, grid_x.mode)
    if not (0 < step < half_cell):
        raise DomainError(f"step must lie in (0, {half_cell}); got {step}")

    points: List[Tuple[Scalar, Scalar]] = []
    estimates: List[Scalar] = []
    degenerate: List[Tuple[int, int]] = []
    min_abs = None
    for i, x in enumerate(grid_x.midpoints):
        for j, y in enumerate(grid_y.midpoints):
            est = _mixed_second_difference(func, x, y, step)
            points.append((x, y))
            estimates.append(est)
            finite = not isinstance(est, float) or math.isfinite(est)
            if not finite or abs(est) <= threshold:
                degenerate.append((i, j))
            if finite and (min_abs is None or abs(est) < min_abs):
                min_abs = abs(est)
    verdict = "pass" if not degenerate and min_abs is not None and min_abs > threshold else "degenerate"
    return NondegeneracyReport(points=points, estimates=estimates, min_abs=min_abs,
                               step=step, threshold=threshold, verdict=verdict,
                               degenerate_points=degenerate)
