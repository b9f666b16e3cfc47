"""Capacity-constrained optimal transport on discrete grids.

Discretize marginals, costs and capacity bounds onto grids, solve the
resulting bounded transportation LP exactly or in floating point,
certify optima via dual certificates, and analyze the bang-bang
structure of optimal plans.
"""
from ._config import (
    BALANCE_ABS_TOL,
    CERT_ABS_TOL,
    CLASSIFY_TOL,
    FLOAT_REL_TOL,
    MARGINAL_REL_TOL,
)
from .costs import CostSpec, NondegeneracyReport, sample_nondegeneracy
from .duality import (
    DualCertificate,
    OptimalityReport,
    build_example1_certificate,
    certificate_feasibility,
    check_optimality_pair,
    dual_objective,
    extract_dual,
)
from .errors import (
    CaptransError,
    DimensionError,
    DomainError,
    FileFormatError,
    InstanceTooLargeError,
    ModeError,
    ResourceError,
    SolverStallError,
)
from .grid import Grid1D, balance_marginals, discretize_capacity, discretize_cost, discretize_marginal
from .problem import (
    CandidatePlan,
    DiscreteProblem,
    FeasibilityResult,
    PlanValidation,
    check_feasibility,
    example_instance,
    plan_cost,
    random_feasible_instance,
    validate_plan,
)
from .solver import SolveResult, active_backend, oracle_solve, phase1_feasibility, solve
from .structure import (
    StructureReport,
    classify_cells,
    emit_support_heatmap,
    extremality_convergence,
)
from .verify import (
    ResidualCycle,
    RestrictionReport,
    apply_cycle,
    build_coupling,
    find_improving_cycle,
    restriction_test,
)
from . import fileio

__version__ = "0.1.0"
