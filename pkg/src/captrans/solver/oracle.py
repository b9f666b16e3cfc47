"""Dense bounded-variable simplex oracle.

Deliberately independent of the network code: the LP is solved in dense
standard form (variables = flattened plan cells, equality rows = row and
column sums) with a textbook revised simplex keeping an explicit basis
inverse, Bland's rule throughout, and arbitrary-precision rationals.
Slow and small by design; it exists to cross-check the network solver.
"""
from __future__ import annotations

from fractions import Fraction

from ..duality import extract_dual
from ..errors import InstanceTooLargeError, ModeError
from ..problem import CandidatePlan, DiscreteProblem, plan_cost
from ..scalars import zeros
from .core import SolveResult

_MAX_CELLS = 64
_INF = None  # artificial upper bound in phase 1


def oracle_solve(p: DiscreteProblem, check: bool = True) -> SolveResult:
    """Same contract as solve, for exact instances with m*n <= 64."""
    if p.mode != "exact":
        raise ModeError("the oracle is exact-only; convert the instance first")
    m, n = p.m, p.n
    nv = m * n
    if nv > _MAX_CELLS:
        raise InstanceTooLargeError(f"oracle accepts at most {_MAX_CELLS} cells, got {nv}")
    me = m + n
    nt = nv + me

    # column j of the constraint matrix touches rows rows_of(j)
    def rows_of(j):
        if j < nv:
            return (j // n, m + j % n)
        return (j - nv,)

    lb = [Fraction(0)] * nt
    ub = [Fraction(p.capacity[j // n, j % n]) for j in range(nv)] + [_INF] * me
    b = [Fraction(p.f[i]) for i in range(m)] + [Fraction(p.g[j]) for j in range(n)]
    cost1 = [Fraction(0)] * nv + [Fraction(1)] * me
    cost2 = [Fraction(p.cost[j // n, j % n]) for j in range(nv)] + [Fraction(0)] * me

    basis = [nv + k for k in range(me)]
    in_basis = [False] * nt
    for j in basis:
        in_basis[j] = True
    binv = [[Fraction(1) if r == k else Fraction(0) for k in range(me)] for r in range(me)]
    xb = list(b)
    at_upper = [False] * nt

    phase = 1
    c = cost1
    pivots = 0

    while True:
        cb = [c[j] for j in basis]
        y = [sum(cb[r] * binv[r][k] for r in range(me)) for k in range(me)]

        enter = -1
        for j in range(nt):  # Bland: lowest eligible index
            if in_basis[j] or lb[j] == ub[j]:
                continue
            r = c[j] - sum(y[row] for row in rows_of(j))
            if (not at_upper[j] and r < 0) or (at_upper[j] and r > 0):
                enter = j
                break

        if enter < 0:
            if phase == 2:
                break
            art = sum(xb[k] for k in range(me) if basis[k] >= nv)
            if art > 0:
                return SolveResult(status="infeasible", objective=None, plan=None,
                                   dual=None, potentials=None, pivot_count=pivots,
                                   fractional_count=0, deficit=art / 2,
                                   mode="exact", backend="oracle")
            for j in range(nv, nt):
                ub[j] = Fraction(0)
            phase = 2
            c = cost2
            continue

        d = [sum(binv[k][row] for row in rows_of(enter)) for k in range(me)]
        sense = -1 if not at_upper[enter] else 1  # xB moves by sense*d per unit step

        t = ub[enter] - lb[enter] if ub[enter] is not _INF else _INF
        rr = -1
        for k in range(me):
            move = sense * d[k]
            if move < 0:
                limit = (xb[k] - lb[basis[k]]) / (-move)
            elif move > 0 and ub[basis[k]] is not _INF:
                limit = (ub[basis[k]] - xb[k]) / move
            else:
                continue
            if t is _INF or limit < t or (limit == t and (rr < 0 or basis[k] < basis[rr])):
                t = limit
                rr = k
        assert t is not _INF, "bounded LP produced an unbounded direction"

        pivots += 1
        for k in range(me):
            xb[k] += sense * d[k] * t

        if rr < 0:
            at_upper[enter] = not at_upper[enter]  # bound flip
            continue

        enter_val = (lb[enter] + t) if not at_upper[enter] else (ub[enter] - t)
        leave = basis[rr]
        in_basis[leave] = False
        at_upper[leave] = sense * d[rr] > 0  # hit its upper bound, else lower
        piv = d[rr]
        binv[rr] = [v / piv for v in binv[rr]]
        for k in range(me):
            if k != rr and d[k] != 0:
                dk = d[k]
                brr = binv[rr]
                binv[k] = [binv[k][q] - dk * brr[q] for q in range(me)]
        basis[rr] = enter
        in_basis[enter] = True
        xb[rr] = enter_val

    x = [ub[j] if at_upper[j] else lb[j] for j in range(nt)]
    for k in range(me):
        x[basis[k]] = xb[k]
    h = zeros((m, n), "exact")
    for j in range(nv):
        h[j // n, j % n] = x[j]
    u = zeros(m, "exact")
    v = zeros(n, "exact")
    for i in range(m):
        u[i] = -y[i]
    for j in range(n):
        v[j] = -y[m + j]

    plan = CandidatePlan(h=h, provenance="solver", note=f"dense simplex oracle, {pivots} pivots")
    objective = plan_cost(p, plan.h)
    dual = extract_dual(p, (u, v))
    fractional = sum(1 for j in range(nv) if 0 < x[j] < ub[j])
    if check:
        assert fractional <= me - 1, "oracle lost the vertex property"
    return SolveResult(status="optimal", objective=objective, plan=plan, dual=dual,
                       potentials=(u, v), pivot_count=pivots, fractional_count=fractional,
                       deficit=Fraction(0), mode="exact", backend="oracle")
