"""Solve entry points: scaling, backend dispatch, result assembly.

Exact instances are rescaled to integers (masses and capacities by the
LCM of their denominators, costs by theirs) so the kernel pivots on
integer arithmetic; transportation bases are triangular, which keeps
flows and potentials integral throughout. The compiled int64 kernel is
used when a conservative magnitude bound holds, otherwise the pure
kernel runs the identical pivot sequence on big integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from .._config import FLOAT_REL_TOL
from ..duality import DualCertificate, extract_dual
from ..errors import ResourceError, SolverStallError
from ..problem import CandidatePlan, DiscreteProblem, FeasibilityResult, plan_cost, validate_plan
from ..scalars import Scalar, denominator_lcm, zeros
from . import _compiled, compiled_enabled
from ._pysimplex import INFEASIBLE, OPTIMAL, STALL, simplex_kernel

# Past this many bits in any scaled integer the instance is rejected
# rather than ground through big-int pivots for hours.
_MAX_BITS = 4096
# int64 pivoting is safe when potentials, reduced costs and flows all
# stay below 2^60: |pot| <= (N+1)*maxc, |r| <= (2N+3)*maxc.
_INT64_LIMIT = 1 << 60


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a solve; immutable.

    potentials is the raw (u, v) node-potential pair the dual certificate
    was extracted from; deficit is the unroutable mass when infeasible.
    """

    status: str  # optimal | infeasible
    objective: Optional[Scalar]
    plan: Optional[CandidatePlan]
    dual: Optional[DualCertificate]
    potentials: Optional[Tuple[np.ndarray, np.ndarray]]
    pivot_count: int
    fractional_count: int
    deficit: Scalar
    mode: str
    backend: str


def _scale_exact(p: DiscreteProblem):
    """Integer data (costI, capI, supI flat lists) plus scales L1, L2."""
    mass_values = list(p.f) + list(p.g) + [p.capacity[i, j] for i in range(p.m) for j in range(p.n)]
    cost_values = [p.cost[i, j] for i in range(p.m) for j in range(p.n)]
    L1 = denominator_lcm(mass_values)
    L2 = denominator_lcm(cost_values)
    capI = [int(v * L1) for v in
            (p.capacity[i, j] for i in range(p.m) for j in range(p.n))]
    costI = [int(v * L2) for v in cost_values]
    supI = [int(v * L1) for v in p.f] + [int(v * L1) for v in p.g]
    worst = max([1] + [abs(v) for v in costI] + capI + supI)
    if worst.bit_length() > _MAX_BITS:
        raise ResourceError(
            f"scaled integer magnitude {worst} exceeds {_MAX_BITS} bits; "
            f"instance denominators are too wild for exact pivoting")
    return costI, capI, supI, L1, L2


def _int64_safe(costI, capI, supI, m: int, n: int) -> bool:
    N = m + n + 1
    maxc = max([0] + [abs(c) for c in costI])
    if 4 * (N + 2) * maxc >= _INT64_LIMIT:
        return False
    if max([0] + capI) >= _INT64_LIMIT or sum(supI[:m]) >= _INT64_LIMIT:
        return False
    return True


def _float_data(p: DiscreteProblem):
    cost = [float(p.cost[i, j]) for i in range(p.m) for j in range(p.n)]
    cap = [float(p.capacity[i, j]) for i in range(p.m) for j in range(p.n)]
    f = [float(v) for v in p.f]
    g = [float(v) for v in p.g]
    sf, sg = sum(f), sum(g)
    if sg > 0.0:
        # repair rounding-level imbalance so phase 1 can close exactly
        r = sf / sg
        g = [v * r for v in g]
    sup = f + g
    tolc = FLOAT_REL_TOL * max(1.0, max((abs(c) for c in cost), default=0.0))
    tolf = FLOAT_REL_TOL * max(1.0, sf)
    return cost, cap, sup, tolc, tolf


def _run_kernel(m, n, cost, cap, sup, tolc, tolf, is_float, phase1_only, backend):
    if backend == "compiled":
        if is_float:
            return _compiled.simplex_kernel_float64(
                m, n,
                np.asarray(cost, dtype=np.float64), np.asarray(cap, dtype=np.float64),
                np.asarray(sup, dtype=np.float64), tolc, tolf, phase1_only)
        return _compiled.simplex_kernel_int64(
            m, n,
            np.asarray(cost, dtype=np.int64), np.asarray(cap, dtype=np.int64),
            np.asarray(sup, dtype=np.int64), phase1_only)
    return simplex_kernel(m, n, cost, cap, sup, tolc, tolf, is_float, phase1_only)


def _pick_backend(p: DiscreteProblem, scaled=None) -> str:
    if not compiled_enabled():
        return "pure"
    if p.mode == "float":
        return "compiled"
    if scaled is None:
        scaled = _scale_exact(p)
    costI, capI, supI, _, _ = scaled
    return "compiled" if _int64_safe(costI, capI, supI, p.m, p.n) else "pure"


def active_backend(p: Optional[DiscreteProblem] = None) -> str:
    """Engine a solve would use: 'compiled' or 'pure'."""
    if p is None:
        return "compiled" if compiled_enabled() else "pure"
    return _pick_backend(p)


def solve(p: DiscreteProblem, check: bool = True) -> SolveResult:
    """Minimize sum c*h over row sums f, column sums g, 0 <= h <= capacity.

    Returns a vertex optimum with its dual certificate, or an infeasible
    result carrying the unroutable deficit. Deterministic for fixed
    input: the pivot rule breaks all ties by lowest arc index.
    """
    m, n = p.m, p.n
    mn = m * n
    if p.mode == "exact":
        scaled = _scale_exact(p)
        costI, capI, supI, L1, L2 = scaled
        backend = _pick_backend(p, scaled)
        status, pivots, flow, pot = _run_kernel(
            m, n, costI, capI, supI, 0, 0, False, False, backend)
    else:
        backend = _pick_backend(p)
        cost, cap, sup, tolc, tolf = _float_data(p)
        status, pivots, flow, pot = _run_kernel(
            m, n, cost, cap, sup, tolc, tolf, True, False, backend)

    if status == STALL:
        raise SolverStallError(
            f"float solve stalled after {pivots} pivots "
            f"({m + n + mn} consecutive degenerate pivots in the Bland regime)")

    if status == INFEASIBLE:
        art = sum(int(flow[a]) for a in range(mn, mn + m + n)) if p.mode == "exact" \
            else float(sum(flow[mn:mn + m + n]))
        deficit = Fraction(art, 2 * L1) if p.mode == "exact" else art / 2.0
        return SolveResult(status="infeasible", objective=None, plan=None, dual=None,
                           potentials=None, pivot_count=pivots, fractional_count=0,
                           deficit=deficit, mode=p.mode, backend=backend)

    assert status == OPTIMAL
    h = zeros((m, n), p.mode)
    if p.mode == "exact":
        for i in range(m):
            for j in range(n):
                h[i, j] = Fraction(int(flow[i * n + j]), L1)
    else:
        for i in range(m):
            for j in range(n):
                h[i, j] = float(flow[i * n + j])
    u = zeros(m, p.mode)
    v = zeros(n, p.mode)
    if p.mode == "exact":
        for i in range(m):
            u[i] = Fraction(-int(pot[i]), L2)
        for j in range(n):
            v[j] = Fraction(int(pot[m + j]), L2)
    else:
        for i in range(m):
            u[i] = -float(pot[i])
        for j in range(n):
            v[j] = float(pot[m + j])

    plan = CandidatePlan(h=h, provenance="solver", note=f"network simplex, {pivots} pivots")
    objective = plan_cost(p, plan.h)
    dual = extract_dual(p, (u, v))
    fractional = sum(1 for i in range(m) for j in range(n)
                     if 0 < plan.h[i, j] < p.capacity[i, j])
    zero_def = Fraction(0) if p.mode == "exact" else 0.0

    if check:
        tol = 0 if p.mode == "exact" else FLOAT_REL_TOL * max(1.0, float(p.f.sum()))
        validation = validate_plan(p, plan, tol)
        assert validation.is_member, f"solver produced an invalid plan: {validation}"
        assert fractional <= m + n - 1, \
            f"vertex bound violated: {fractional} fractional cells > {m + n - 1}"

    return SolveResult(status="optimal", objective=objective, plan=plan, dual=dual,
                       potentials=(u, v), pivot_count=pivots, fractional_count=fractional,
                       deficit=zero_def, mode=p.mode, backend=backend)


def phase1_feasibility(p: DiscreteProblem) -> FeasibilityResult:
    """Minimum unroutable mass via the phase-1 construction alone."""
    m, n = p.m, p.n
    mn = m * n
    if p.mode == "exact":
        scaled = _scale_exact(p)
        costI, capI, supI, L1, _ = scaled
        backend = _pick_backend(p, scaled)
        status, _, flow, _ = _run_kernel(m, n, costI, capI, supI, 0, 0, False, True, backend)
        art = sum(int(flow[a]) for a in range(mn, mn + m + n))
        deficit = Fraction(art, 2 * L1)
        return FeasibilityResult(feasible=deficit == 0, deficit=deficit)
    backend = _pick_backend(p)
    cost, cap, sup, tolc, tolf = _float_data(p)
    status, _, flow, _ = _run_kernel(m, n, cost, cap, sup, tolc, tolf, True, True, backend)
    art = float(sum(flow[mn:mn + m + n]))
    if art <= 2 * tolf:
        return FeasibilityResult(feasible=True, deficit=0.0)
    return FeasibilityResult(feasible=False, deficit=art / 2.0)
