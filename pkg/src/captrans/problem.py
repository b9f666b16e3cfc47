"""Discrete capacity-constrained transportation instances.

A DiscreteProblem is the data of the LP

    minimize    sum c_ij h_ij
    subject to  row sums of h = f,  column sums of h = g,
                0 <= h_ij <= capacity_ij,

together with three built-in instance families reproducing the worked
examples (checkerboard, four-tile, periodic strip) on [-1/2, 1/2].
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from ._config import MARGINAL_REL_TOL
from .costs import CostSpec
from .errors import DimensionError, DomainError
from .grid import Grid1D, discretize_capacity, discretize_cost, discretize_marginal
from .scalars import Scalar, as_matrix, as_vector, check_mode, ensure_scalar, zeros


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class DiscreteProblem:
    """Immutable instance; all containers are validated at construction."""

    cost: np.ndarray
    f: np.ndarray
    g: np.ndarray
    capacity: np.ndarray
    mode: str = "exact"

    def __post_init__(self):
        check_mode(self.mode)
        f = self.f if isinstance(self.f, np.ndarray) else as_vector(self.f, len(list(self.f)), self.mode, "f")
        g = self.g if isinstance(self.g, np.ndarray) else as_vector(self.g, len(list(self.g)), self.mode, "g")
        m, n = len(f), len(g)
        if m < 1 or n < 1:
            raise DimensionError("marginals must be non-empty")
        cost = self.cost if isinstance(self.cost, np.ndarray) else as_matrix(self.cost, m, n, self.mode, "cost")
        cap = self.capacity if isinstance(self.capacity, np.ndarray) else as_matrix(self.capacity, m, n, self.mode, "capacity")
        if cost.shape != (m, n) or cap.shape != (m, n):
            raise DimensionError(f"cost {cost.shape} and capacity {cap.shape} must both be {(m, n)}")
        for name, vec in (("f", f), ("g", g)):
            for i, v in enumerate(vec):
                if v < 0:
                    raise DomainError(f"{name}[{i}] = {v} is negative")
        for i in range(m):
            for j in range(n):
                if cap[i, j] < 0:
                    raise DomainError(f"capacity[{i},{j}] = {cap[i, j]} is negative")
        sf, sg = f.sum(), g.sum()
        if self.mode == "exact":
            if sf != sg:
                raise DomainError(f"total masses differ: sum f = {sf}, sum g = {sg}")
        else:
            scale = max(abs(float(sf)), abs(float(sg)))
            if abs(float(sf) - float(sg)) > MARGINAL_REL_TOL * max(scale, 1.0):
                raise DomainError(f"total masses differ beyond tolerance: {sf} vs {sg}")
        object.__setattr__(self, "cost", _freeze(cost))
        object.__setattr__(self, "f", _freeze(f))
        object.__setattr__(self, "g", _freeze(g))
        object.__setattr__(self, "capacity", _freeze(cap))

    @property
    def m(self) -> int:
        return len(self.f)

    @property
    def n(self) -> int:
        return len(self.g)

    @property
    def total_mass(self) -> Scalar:
        return self.f.sum()


@dataclass(frozen=True)
class CandidatePlan:
    """A transport plan with its origin; feasibility is checked, not assumed."""

    h: np.ndarray
    provenance: str = "constructed"  # solver | constructed | file
    note: str = ""

    def __post_init__(self):
        if self.provenance not in ("solver", "constructed", "file"):
            raise DomainError(f"unknown provenance {self.provenance!r}")
        object.__setattr__(self, "h", _freeze(np.array(self.h, copy=True)))


def plan_cost(p: DiscreteProblem, h: np.ndarray) -> Scalar:
    """Objective value sum c_ij h_ij of a plan matrix."""
    if h.shape != (p.m, p.n):
        raise DimensionError(f"plan is {h.shape}, problem is {(p.m, p.n)}")
    total = (p.cost * h).sum()
    return total if p.mode == "exact" else float(total)


@dataclass(frozen=True)
class PlanValidation:
    """Outcome of validate_plan; all errors are worst-case (max) values."""

    row_error: Scalar
    col_error: Scalar
    capacity_excess: Scalar
    negativity: Scalar
    tol: Scalar
    is_member: bool


def validate_plan(p: DiscreteProblem, plan: CandidatePlan, tol) -> PlanValidation:
    """Compare a plan's marginals and bounds against the instance.

    Membership in the feasible set is declared iff every reported error
    is <= tol. tol 0 is the exact-mode idiom.
    """
    h = plan.h
    if h.shape != (p.m, p.n):
        raise DimensionError(f"plan is {h.shape}, problem is {(p.m, p.n)}")
    tol = ensure_scalar(tol, p.mode)
    if tol < 0:
        raise DomainError(f"tolerance must be >= 0, got {tol}")
    zero = ensure_scalar(0, p.mode)
    row_err = max((abs(h[i, :].sum() - p.f[i]) for i in range(p.m)), default=zero)
    col_err = max((abs(h[:, j].sum() - p.g[j]) for j in range(p.n)), default=zero)
    excess = max((h[i, j] - p.capacity[i, j] for i in range(p.m) for j in range(p.n)), default=zero)
    excess = max(excess, zero)
    neg = max((-h[i, j] for i in range(p.m) for j in range(p.n)), default=zero)
    neg = max(neg, zero)
    member = row_err <= tol and col_err <= tol and excess <= tol and neg <= tol
    return PlanValidation(row_error=row_err, col_error=col_err, capacity_excess=excess,
                          negativity=neg, tol=tol, is_member=member)


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    deficit: Scalar  # undeliverable mass; 0 when feasible


def check_feasibility(p: DiscreteProblem) -> FeasibilityResult:
    """Decide whether the feasible set is non-empty.

    Delegates to the solver's phase-1 construction (artificial arcs with
    unit penalty); the deficit is the mass that cannot be routed.
    """
    from .solver import phase1_feasibility

    return phase1_feasibility(p)


def _unit_interval_grid(n: int, mode: str) -> Grid1D:
    return Grid1D(lo=Fraction(-1, 2), hi=Fraction(1, 2), n=n, mode=mode)


def _fold_half(z: Fraction) -> Fraction:
    # into [-1/2, 1/2)
    return z - (z + Fraction(1, 2)).__floor__()


def example_instance(which: int, n: int, hbar=None, mode: str = "exact") -> Tuple[DiscreteProblem, CandidatePlan]:
    """Build one of the three worked instances plus its analytic candidate.

    1: uniform marginals, capacity 2, cost (x-y)^2/2; candidate saturates
       the same-sign checkerboard tiles.
    2: capacity 4, n divisible by 4; candidate saturates the four diagonal
       quarter blocks.
    3: capacity hbar >= 1, periodic cost; candidate is the diagonal strip
       of perpendicular width 1/(hbar*sqrt(2)), rasterized by cell-center
       membership (centers exactly on the strip edge count at half
       capacity) and repaired to exact marginals by row scaling.
    """
    check_mode(mode)
    if which not in (1, 2, 3):
        raise DomainError(f"example selector must be 1, 2, or 3; got {which!r}")
    if not isinstance(n, int) or n < 2 or n % 2:
        raise DomainError(f"grid size must be a positive even integer, got {n!r}")
    if which == 2 and n % 4:
        raise DomainError(f"the four-tile instance needs n divisible by 4, got {n}")
    if which != 3 and hbar is not None:
        raise DomainError("hbar applies to the strip instance only")

    gx = _unit_interval_grid(n, mode)
    gy = _unit_interval_grid(n, mode)
    one = lambda x: 1

    if which == 1:
        cost = discretize_cost(CostSpec.quadratic(), gx, gy)
        cap = discretize_capacity(lambda x, y: 2, gx, gy)
        f = discretize_marginal(one, gx)
        g = discretize_marginal(one, gy)
        p = DiscreteProblem(cost=cost, f=f, g=g, capacity=cap, mode=mode)
        h = zeros((n, n), mode)
        xs = gx.midpoints
        for i in range(n):
            for j in range(n):
                if (xs[i] > 0) == (xs[j] > 0):
                    h[i, j] = cap[i, j]
        return p, CandidatePlan(h=h, provenance="constructed", note="same-sign checkerboard at capacity")

    if which == 2:
        cost = discretize_cost(CostSpec.quadratic(), gx, gy)
        cap = discretize_capacity(lambda x, y: 4, gx, gy)
        f = discretize_marginal(one, gx)
        g = discretize_marginal(one, gy)
        p = DiscreteProblem(cost=cost, f=f, g=g, capacity=cap, mode=mode)
        h = zeros((n, n), mode)
        q = n // 4
        for i in range(n):
            for j in range(n):
                if i // q == j // q:
                    h[i, j] = cap[i, j]
        return p, CandidatePlan(h=h, provenance="constructed", note="four diagonal tiles at capacity")

    # which == 3
    hb = ensure_scalar(Fraction(2) if hbar is None else hbar, "exact")
    if not isinstance(hb, Fraction):
        hb = Fraction(hb)
    if hb < 1:
        raise DomainError(f"strip instance needs capacity bound >= 1, got {hb}")
    cost = discretize_cost(CostSpec.periodic_quadratic(), gx, gy)
    cap_bound = hb if mode == "exact" else float(hb)
    cap = discretize_capacity(lambda x, y: cap_bound, gx, gy)
    f = discretize_marginal(one, gx)
    g = discretize_marginal(one, gy)
    p = DiscreteProblem(cost=cost, f=f, g=g, capacity=cap, mode=mode)

    # Strip membership, computed exactly: a cell center (x_i, y_j) lies in
    # the strip iff |fold(y - x)| <= 1/(2 hbar); equality means the center
    # sits exactly on the strip edge and contributes half a cell.
    half_width = 1 / (2 * hb)
    weights = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            d = abs(_fold_half(Fraction(j - i, n)))
            if d < half_width:
                weights[i][j] = Fraction(1)
            elif d == half_width:
                weights[i][j] = Fraction(1, 2)
    unit = hb / (n * n)  # per-cell capacity mass, exact
    row_mass = [sum(w) * unit for w in weights]
    target = Fraction(1, n)
    # The pattern is circulant, so a single row scale repairs all rows and
    # all columns at once; assert rather than assume.
    assert len(set(row_mass)) == 1, "strip rasterization lost translation invariance"
    scale = target / row_mass[0]
    h = zeros((n, n), mode)
    for i in range(n):
        for j in range(n):
            v = weights[i][j] * unit * scale
            h[i, j] = v if mode == "exact" else float(v)
    note = (f"strip rasterized by cell-center membership, boundary ties at half capacity; "
            f"marginals repaired by row scale {scale}")
    if scale > 1:
        note += "; repair exceeds per-cell capacity (candidate is marginal-valid only)"
    return p, CandidatePlan(h=h, provenance="constructed", note=note)


def random_feasible_instance(m: int, n: int, seed: int, mode: str = "exact") -> Tuple[DiscreteProblem, CandidatePlan]:
    """Seeded random instance that is feasible by construction.

    A random rational plan fixes the marginals; capacity is the plan plus
    random slack, so the plan itself witnesses feasibility. Denominators
    are powers of two, making float-mode conversion lossless.
    """
    if m < 1 or n < 1:
        raise DimensionError("need m, n >= 1")
    rng = random.Random(seed)
    base = [[Fraction(rng.randint(0, 6), 16) for _ in range(n)] for _ in range(m)]
    slack = [[Fraction(rng.randint(0, 4), 16) for _ in range(n)] for _ in range(m)]
    cost = [[Fraction(rng.randint(0, 12), 8) for _ in range(n)] for _ in range(m)]
    f = [sum(base[i][j] for j in range(n)) for i in range(m)]
    g = [sum(base[i][j] for i in range(m)) for j in range(n)]
    cap = [[base[i][j] + slack[i][j] for j in range(n)] for i in range(m)]
    p = DiscreteProblem(cost=as_matrix(cost, m, n, mode, "cost"),
                        f=as_vector(f, m, mode, "f"),
                        g=as_vector(g, n, mode, "g"),
                        capacity=as_matrix(cap, m, n, mode, "capacity"),
                        mode=mode)
    h = as_matrix(base, m, n, mode, "plan")
    return p, CandidatePlan(h=h, provenance="constructed", note=f"feasibility witness, seed {seed}")
