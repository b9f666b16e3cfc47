"""Executable structural lemmas: residual cycles, restriction, coupling.

A feasible plan is optimal exactly when its residual graph carries no
negative-cost cycle; finding one both refutes optimality and yields the
improving perturbation. Restriction inheritance re-solves a rectangular
sub-instance and expects the restricted plan's cost. The coupling
construction realizes prescribed signed marginals with a uniformly
small matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ._config import FLOAT_REL_TOL
from .errors import DimensionError, DomainError
from .problem import CandidatePlan, DiscreteProblem, plan_cost, validate_plan
from .scalars import Scalar, as_vector, check_mode, ensure_scalar, zeros


@dataclass(frozen=True)
class ResidualCycle:
    """Alternating cycle x_0 -> y_0 -> x_1 -> ... -> y_{L-1} -> x_0.

    Forward arcs (x_k, y_k) gain mass, backward arcs (x_{k+1}, y_k) lose
    it; signed_cost is the objective change per unit pushed, max_push
    the largest feasible amount.
    """

    xs: Tuple[int, ...]
    ys: Tuple[int, ...]
    signed_cost: Scalar
    max_push: Scalar

    def __len__(self) -> int:
        return len(self.xs)

    def nodes(self) -> List[str]:
        out = []
        for k in range(len(self.xs)):
            out.append(f"x{self.xs[k]}")
            out.append(f"y{self.ys[k]}")
        out.append(f"x{self.xs[0]}")
        return out


def _cycle_measures(p: DiscreteProblem, h, xs, ys):
    """Signed cost and max push, recomputed from scratch."""
    L = len(xs)
    cost = ensure_scalar(0, p.mode)
    push = None
    for k in range(L):
        i, j = xs[k], ys[k]
        cost = cost + p.cost[i, j]
        res = p.capacity[i, j] - h[i, j]
        push = res if push is None or res < push else push
        i2 = xs[(k + 1) % L]
        cost = cost - p.cost[i2, j]
        push = h[i2, j] if h[i2, j] < push else push
    return cost, push


def find_improving_cycle(p: DiscreteProblem, plan: CandidatePlan,
                         tol=None) -> Optional[ResidualCycle]:
    """Negative cycle in the residual graph of a feasible plan, or None.

    Residual arcs: forward i->j with cost c_ij when h_ij < capacity - tol,
    backward j->i with cost -c_ij when h_ij > tol. In exact mode the
    result is a full optimality test: None is returned iff the plan is
    optimal. The search is label-correcting over the m+n nodes with a
    fixed arc order, so the cycle found is deterministic.
    """
    if tol is None:
        if p.mode == "exact":
            tol = 0
        else:
            cmax = max((abs(float(p.cost[i, j])) for i in range(p.m) for j in range(p.n)),
                       default=0.0)
            tol = FLOAT_REL_TOL * max(1.0, cmax, float(p.f.sum()))
    tol = ensure_scalar(tol, p.mode)
    if tol < 0:
        raise DomainError(f"tolerance must be >= 0, got {tol}")
    feas_tol = tol if p.mode == "float" else 0
    validation = validate_plan(p, plan, feas_tol)
    if not validation.is_member:
        raise DomainError(f"plan is not feasible within {feas_tol}: {validation}")

    m, n = p.m, p.n
    h = plan.h
    # arcs in fixed row-major order, forward before backward per cell
    arcs = []  # (tail, head, weight, i, j)
    for i in range(m):
        for j in range(n):
            c = p.cost[i, j]
            if h[i, j] < p.capacity[i, j] - tol:
                arcs.append((i, m + j, c, i, j))
            if h[i, j] > tol:
                arcs.append((m + j, i, -c, i, j))

    nn = m + n
    zero = ensure_scalar(0, p.mode)
    dist = [zero] * nn
    pred = [-1] * nn
    for _ in range(nn):
        changed = False
        for t, hd, w, _, _ in arcs:
            d = dist[t] + w
            if d < dist[hd]:
                dist[hd] = d
                pred[hd] = t
                changed = True
        if not changed:
            return None

    # one more pass: nodes still improvable lie on / lead to a negative cycle
    starts = []
    for t, hd, w, _, _ in arcs:
        if dist[t] + w < dist[hd]:
            dist[hd] = dist[t] + w
            pred[hd] = t
            if hd not in starts:
                starts.append(hd)

    for v0 in starts:
        # walk the predecessor chain until it closes on itself
        seen_at = {}
        path = []
        v = v0
        while v != -1 and v not in seen_at:
            seen_at[v] = len(path)
            path.append(v)
            v = pred[v]
        if v == -1:
            continue  # chain left the cycle region; try the next start
        walk = path[seen_at[v]:]
        walk.reverse()  # pred points backwards; forward arc order now
        # rotate so the cycle starts at an X node
        if walk[0] >= m:
            walk = walk[1:] + walk[:1]
        xs = tuple(walk[0::2])
        ys = tuple(b - m for b in walk[1::2])
        if len(xs) != len(ys) or any(b < 0 for b in ys):
            raise AssertionError("residual cycle lost bipartite alternation")
        cost, push = _cycle_measures(p, h, xs, ys)
        if cost < -tol and push > 0:
            return ResidualCycle(xs=xs, ys=ys, signed_cost=cost, max_push=push)
    return None


def apply_cycle(plan: CandidatePlan, cycle: ResidualCycle, delta) -> CandidatePlan:
    """Push delta around the cycle: +delta on forward cells, -delta back.

    Marginals are preserved exactly; the objective changes by
    signed_cost * delta.
    """
    if not (0 < delta <= cycle.max_push):
        raise DomainError(f"push must lie in (0, {cycle.max_push}], got {delta}")
    h = np.array(plan.h, copy=True)
    L = len(cycle.xs)
    for k in range(L):
        i, j = cycle.xs[k], cycle.ys[k]
        h[i, j] = h[i, j] + delta
        i2 = cycle.xs[(k + 1) % L]
        h[i2, j] = h[i2, j] - delta
    return CandidatePlan(h=h, provenance="constructed",
                         note=f"pushed {delta} around a {L}-cell residual cycle")


@dataclass(frozen=True)
class RestrictionReport:
    passed: bool
    restricted_cost: Scalar
    sub_objective: Scalar
    rows: Tuple[int, ...]
    cols: Tuple[int, ...]


def restriction_test(p: DiscreteProblem, solved, rows: Sequence[int],
                     cols: Sequence[int]) -> RestrictionReport:
    """Optimality must survive restriction to a rectangular index set.

    The solved plan restricted to rows x cols, taken with its own
    marginals, is re-solved as a sub-instance; the restricted cost must
    equal the sub-instance optimum (exactly in exact mode, to 10^-9
    relative in float).
    """
    from .solver import solve

    if getattr(solved, "status", None) != "optimal":
        raise DomainError("restriction test needs an optimal solve result")
    rows = sorted(set(int(i) for i in rows))
    cols = sorted(set(int(j) for j in cols))
    if any(i < 0 or i >= p.m for i in rows) or any(j < 0 or j >= p.n for j in cols):
        raise DimensionError(f"index sets out of range for {(p.m, p.n)}")
    zero = ensure_scalar(0, p.mode)
    if not rows or not cols:
        return RestrictionReport(passed=True, restricted_cost=zero, sub_objective=zero,
                                 rows=tuple(rows), cols=tuple(cols))
    h = solved.plan.h
    ma, nb = len(rows), len(cols)
    sub_cost = zeros((ma, nb), p.mode)
    sub_cap = zeros((ma, nb), p.mode)
    sub_h = zeros((ma, nb), p.mode)
    for a, i in enumerate(rows):
        for b, j in enumerate(cols):
            sub_cost[a, b] = p.cost[i, j]
            sub_cap[a, b] = p.capacity[i, j]
            sub_h[a, b] = h[i, j]
    f_t = [sum(sub_h[a, b] for b in range(nb)) for a in range(ma)]
    g_t = [sum(sub_h[a, b] for a in range(ma)) for b in range(nb)]
    sub = DiscreteProblem(cost=sub_cost,
                          f=as_vector(f_t, ma, p.mode, "f"),
                          g=as_vector(g_t, nb, p.mode, "g"),
                          capacity=sub_cap, mode=p.mode)
    restricted_cost = plan_cost(sub, sub_h)
    res = solve(sub)
    if res.status != "optimal":
        raise DomainError("restricted sub-instance unexpectedly infeasible")
    if p.mode == "exact":
        passed = res.objective == restricted_cost
    else:
        passed = abs(res.objective - restricted_cost) <= \
            FLOAT_REL_TOL * max(1.0, abs(float(restricted_cost)))
    return RestrictionReport(passed=passed, restricted_cost=restricted_cost,
                             sub_objective=res.objective,
                             rows=tuple(rows), cols=tuple(cols))


def build_coupling(f_t, g_t, eps, mode: str = "exact") -> np.ndarray:
    """Matrix with prescribed signed marginals and a uniform-size bound.

    With nX = len(f_t), nY = len(g_t), common mass mm and counting
    measure in place of volume:

        h_ij = f_i/nY + g_j/nX - mm/(nX*nY)

    has row sums f_t, column sums g_t, and satisfies the strict bound
    ||h||_inf < 3*eps*(1/nX + 1/nY) whenever ||f_t||_inf, ||g_t||_inf < eps.
    """
    check_mode(mode)
    f = [ensure_scalar(v, mode) for v in f_t]
    g = [ensure_scalar(v, mode) for v in g_t]
    if not f or not g:
        raise DimensionError("marginal vectors must be non-empty")
    eps = ensure_scalar(eps, mode)
    if eps <= 0:
        raise DomainError(f"bound must be positive, got {eps}")
    if max(abs(v) for v in f) >= eps or max(abs(v) for v in g) >= eps:
        raise DomainError("marginals must satisfy the strict bound ||.||_inf < eps")
    sf = sum(f)
    sg = sum(g)
    if mode == "exact":
        if sf != sg:
            raise DomainError(f"common mass mismatch: {sf} vs {sg}")
    else:
        if abs(sf - sg) > 1e-12 * max(1.0, abs(sf), abs(sg)):
            raise DomainError(f"common mass mismatch: {sf} vs {sg}")
    nx, ny = len(f), len(g)
    mm = sf
    out = zeros((nx, ny), mode)
    for i in range(nx):
        for j in range(ny):
            v = f[i] / ny + g[j] / nx - mm / (nx * ny)
            out[i, j] = v if mode == "exact" else float(v)
    return out
