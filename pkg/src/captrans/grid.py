"""1-D grids and midpoint discretization of densities, capacities, costs.

All discrete quantities are masses (density times cell volume), never
densities: marginal constraints are then plain row/column sums and no
cell-width factors appear in the LP. Midpoint quadrature keeps exact-mode
rationality and is second-order accurate.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

import numpy as np

from ._config import BALANCE_ABS_TOL
from .costs import CostSpec, evaluate_cost
from .errors import DimensionError, DomainError
from .scalars import Scalar, check_mode, ensure_scalar, zeros


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid of n cells on [lo, hi] with midpoint sample points."""

    lo: Scalar
    hi: Scalar
    n: int
    mode: str = "exact"

    def __post_init__(self):
        check_mode(self.mode)
        object.__setattr__(self, "lo", ensure_scalar(self.lo, self.mode))
        object.__setattr__(self, "hi", ensure_scalar(self.hi, self.mode))
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"cell count must be a positive integer, got {self.n!r}")
        if not self.lo < self.hi:
            raise DomainError(f"need lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def delta(self) -> Scalar:
        return (self.hi - self.lo) / self.n

    @property
    def midpoints(self) -> tuple:
        d = self.delta
        if self.mode == "exact":
            return tuple(self.lo + d * Fraction(2 * i + 1, 2) for i in range(self.n))
        return tuple(self.lo + d * (i + 0.5) for i in range(self.n))


DensityInput = Union[Callable[[Scalar], Scalar], Sequence]
BoundInput = Union[Callable[[Scalar, Scalar], Scalar], Sequence]


def discretize_marginal(density: DensityInput, grid: Grid1D) -> np.ndarray:
    """Mass vector: density(x_i) * delta for a callable, or table_i * delta.

    Negative samples are a domain error; a marginal is a measure.
    """
    d = grid.delta
    out = zeros(grid.n, grid.mode)
    if callable(density):
        samples = [ensure_scalar(density(x), grid.mode) for x in grid.midpoints]
    else:
        samples = list(density)
        if len(samples) != grid.n:
            raise DimensionError(f"density table has {len(samples)} entries, grid has {grid.n}")
        samples = [ensure_scalar(v, grid.mode) for v in samples]
    for i, v in enumerate(samples):
        if v < 0:
            raise DomainError(f"negative density sample {v} at cell {i}")
        out[i] = v * d
    return out


def discretize_capacity(bound: BoundInput, grid_x: Grid1D, grid_y: Grid1D) -> np.ndarray:
    """Capacity mass matrix: bound(x_i, y_j) * delta_x * delta_y."""
    if grid_x.mode != grid_y.mode:
        raise DomainError("grids must share a mode")
    cell = grid_x.delta * grid_y.delta
    out = zeros((grid_x.n, grid_y.n), grid_x.mode)
    if callable(bound):
        for i, x in enumerate(grid_x.midpoints):
            for j, y in enumerate(grid_y.midpoints):
                v = ensure_scalar(bound(x, y), grid_x.mode)
                if v < 0:
                    raise DomainError(f"negative capacity sample {v} at cell ({i}, {j})")
                out[i, j] = v * cell
        return out
    rows = list(bound)
    if len(rows) != grid_x.n:
        raise DimensionError(f"capacity table has {len(rows)} rows, grid has {grid_x.n}")
    for i, row in enumerate(rows):
        row = list(row)
        if len(row) != grid_y.n:
            raise DimensionError(f"capacity table row {i} has {len(row)} entries, expected {grid_y.n}")
        for j, raw in enumerate(row):
            v = ensure_scalar(raw, grid_x.mode)
            if v < 0:
                raise DomainError(f"negative capacity sample {v} at cell ({i}, {j})")
            out[i, j] = v * cell
    return out


def discretize_cost(spec: CostSpec, grid_x: Grid1D, grid_y: Grid1D) -> np.ndarray:
    """Cost matrix c(x_i, y_j); tabulated specs are validated and copied.

    Tabulated entries are taken as-is (they are already per-cell costs,
    not densities, so no cell-volume factor applies).
    """
    if grid_x.mode != grid_y.mode:
        raise DomainError("grids must share a mode")
    if spec.kind == "tabulated":
        m, n = spec.matrix.shape
        if (m, n) != (grid_x.n, grid_y.n):
            raise DimensionError(f"tabulated cost is {m}x{n}, grids are {grid_x.n}x{grid_y.n}")
        out = zeros((m, n), grid_x.mode)
        for i in range(m):
            for j in range(n):
                out[i, j] = ensure_scalar(spec.matrix[i, j], grid_x.mode)
        return out
    out = zeros((grid_x.n, grid_y.n), grid_x.mode)
    for i, x in enumerate(grid_x.midpoints):
        for j, y in enumerate(grid_y.midpoints):
            out[i, j] = evaluate_cost(spec, x, y)
    return out


def balance_marginals(f: np.ndarray, g: np.ndarray, mode: str):
    """Equalize total masses after discretization.

    Exact mode: any discrepancy is an error (the instance is ill-posed).
    Float mode: a discrepancy beyond BALANCE_ABS_TOL rescales the smaller
    side to match; below that it is left alone.
    """
    check_mode(mode)
    sf = f.sum()
    sg = g.sum()
    if mode == "exact":
        if sf != sg:
            raise DomainError(f"total masses differ exactly: {sf} vs {sg}")
        return f, g
    diff = abs(float(sf) - float(sg))
    if diff <= BALANCE_ABS_TOL:
        return f, g
    if sf == 0 or sg == 0:
        raise DomainError("cannot rebalance against zero total mass")
    if sf < sg:
        return f * (sg / sf), g
    return f, g * (sf / sg)
