"""Dual certificates (u, v, w) for the constrained dual problem.

Sign convention: a certificate is feasible when

    w_ij <= 0           and        cost_ij + u_i + v_j - w_ij >= 0,

and its value  -sum u_i f_i - sum v_j g_j + sum w_ij capacity_ij  is a
lower bound on every feasible plan's cost (weak duality). Equality
certifies optimality of the plan.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from ._config import CERT_ABS_TOL
from .errors import DimensionError, DomainError
from .problem import CandidatePlan, DiscreteProblem, PlanValidation, plan_cost, validate_plan
from .scalars import Scalar, ensure_scalar, zeros


@dataclass(frozen=True)
class DualCertificate:
    u: np.ndarray  # length m, potential on X per unit mass
    v: np.ndarray  # length n, potential on Y
    w: np.ndarray  # m x n capacity multipliers, <= 0

    @property
    def m(self) -> int:
        return len(self.u)

    @property
    def n(self) -> int:
        return len(self.v)


def _check_shapes(p: DiscreteProblem, cert: DualCertificate) -> None:
    if cert.u.shape != (p.m,) or cert.v.shape != (p.n,) or cert.w.shape != (p.m, p.n):
        raise DimensionError(
            f"certificate shapes {cert.u.shape}/{cert.v.shape}/{cert.w.shape} "
            f"do not match problem {(p.m, p.n)}")


def certificate_feasibility(p: DiscreteProblem, cert: DualCertificate):
    """Worst violations of the two certificate invariants.

    Returns (w_violation, reduced_violation, worst_index): both violations
    are >= 0 with 0 meaning satisfied; worst_index locates the larger one.
    """
    _check_shapes(p, cert)
    zero = ensure_scalar(0, p.mode)
    w_vio, w_idx = zero, None
    r_vio, r_idx = zero, None
    for i in range(p.m):
        for j in range(p.n):
            wv = cert.w[i, j]
            if wv > w_vio:
                w_vio, w_idx = wv, (i, j)
            red = p.cost[i, j] + cert.u[i] + cert.v[j] - wv
            if -red > r_vio:
                r_vio, r_idx = -red, (i, j)
    worst = w_idx if w_vio >= r_vio else r_idx
    return w_vio, r_vio, worst


def _require_feasible(p: DiscreteProblem, cert: DualCertificate) -> None:
    tol = ensure_scalar(0, p.mode) if p.mode == "exact" else CERT_ABS_TOL
    w_vio, r_vio, worst = certificate_feasibility(p, cert)
    if w_vio > tol or r_vio > tol:
        raise DomainError(
            f"certificate infeasible: worst violation {max(w_vio, r_vio)} at cell {worst} "
            f"(w positivity {w_vio}, reduced-cost negativity {r_vio})")


def dual_objective(p: DiscreteProblem, cert: DualCertificate) -> Scalar:
    """-sum(u f) - sum(v g) + sum(w capacity); certificate must be feasible."""
    _require_feasible(p, cert)
    total = -(cert.u * p.f).sum() - (cert.v * p.g).sum() + (cert.w * p.capacity).sum()
    return total if p.mode == "exact" else float(total)


@dataclass(frozen=True)
class OptimalityReport:
    gap: Scalar
    primal: Scalar
    dual: Scalar
    support_violations: List[Tuple[int, int]]     # h > tol but reduced cost > tol
    saturation_violations: List[Tuple[int, int]]  # w < -tol but h < capacity - tol
    certified: bool
    plan_validation: PlanValidation


def check_optimality_pair(p: DiscreteProblem, plan: CandidatePlan, cert: DualCertificate,
                          tol=None) -> OptimalityReport:
    """Certify a plan/certificate pair via gap and complementary slackness.

    Certified iff gap <= tol and both violation lists are empty. The
    default tolerance is 0 in exact mode and a relative 1e-9 in float.
    """
    if tol is None:
        tol = 0 if p.mode == "exact" else None
    if tol is None:
        from ._config import FLOAT_REL_TOL

        scale = max(1.0, abs(float(plan_cost(p, plan.h))))
        tol = FLOAT_REL_TOL * scale
    tol = ensure_scalar(tol, p.mode)
    if tol < 0:
        raise DomainError(f"tolerance must be >= 0, got {tol}")
    validation = validate_plan(p, plan, tol)
    if not validation.is_member:
        raise DomainError(f"plan is not feasible within {tol}: {validation}")
    _require_feasible(p, cert)
    primal = plan_cost(p, plan.h)
    dual = dual_objective(p, cert)
    gap = primal - dual
    support, saturation = [], []
    for i in range(p.m):
        for j in range(p.n):
            h = plan.h[i, j]
            red = p.cost[i, j] + cert.u[i] + cert.v[j] - cert.w[i, j]
            if h > tol and red > tol:
                support.append((i, j))
            if cert.w[i, j] < -tol and h < p.capacity[i, j] - tol:
                saturation.append((i, j))
    certified = gap <= tol and not support and not saturation
    return OptimalityReport(gap=gap, primal=primal, dual=dual,
                            support_violations=support, saturation_violations=saturation,
                            certified=certified, plan_validation=validation)


def build_example1_certificate(grid_x, grid_y) -> DualCertificate:
    """The closed-form certificate for the checkerboard instance.

    u(x) = -x^2/2, v(y) = -y^2/2, and w = min(0, c+u+v) = min(0, -x y):
    strictly negative on same-sign cells, zero elsewhere.
    """
    if grid_x.mode != grid_y.mode:
        raise DomainError("grids must share a mode")
    mode = grid_x.mode
    xs, ys = grid_x.midpoints, grid_y.midpoints
    u = zeros(grid_x.n, mode)
    v = zeros(grid_y.n, mode)
    w = zeros((grid_x.n, grid_y.n), mode)
    for i, x in enumerate(xs):
        u[i] = -x * x / 2
    for j, y in enumerate(ys):
        v[j] = -y * y / 2
    zero = ensure_scalar(0, mode)
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            w[i, j] = min(zero, -x * y)
    return DualCertificate(u=u, v=v, w=w)


def extract_dual(p: DiscreteProblem, potentials) -> DualCertificate:
    """Certificate from solver node potentials.

    ``potentials`` is the (u, v) pair stored on an optimal SolveResult (or
    the result itself). w is completed as min(0, c + u + v), which matches
    the saturated-arc pattern of the optimal basis; no structural form
    beyond that is claimed.
    """
    if hasattr(potentials, "potentials"):
        if getattr(potentials, "status", "optimal") != "optimal":
            raise DomainError("dual extraction needs an optimal solve result")
        potentials = potentials.potentials
    if potentials is None:
        raise DomainError("solve result carries no potentials")
    u_in, v_in = potentials
    u = zeros(p.m, p.mode)
    v = zeros(p.n, p.mode)
    for i in range(p.m):
        u[i] = ensure_scalar(u_in[i], p.mode)
    for j in range(p.n):
        v[j] = ensure_scalar(v_in[j], p.mode)
    zero = ensure_scalar(0, p.mode)
    w = zeros((p.m, p.n), p.mode)
    for i in range(p.m):
        for j in range(p.n):
            w[i, j] = min(zero, p.cost[i, j] + u[i] + v[j])
    return DualCertificate(u=u, v=v, w=w)
