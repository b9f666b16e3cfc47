"""Bang-bang structure analysis of transport plans.

Classifies each cell of a plan as zero, saturated, or fractional
relative to its capacity, extracts the support set, and measures how
close the plan is to the extreme form h = capacity * 1_W. Optimal plans
are expected to be (nearly) extreme; the fractional mass is the
deviation that must vanish under grid refinement.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ._config import CLASSIFY_TOL
from .errors import DimensionError, DomainError
from .problem import CandidatePlan, DiscreteProblem, example_instance, plan_cost
from .scalars import Scalar, ensure_scalar

ZERO, FRACTIONAL, SATURATED = 0, 1, 2


@dataclass(frozen=True)
class StructureReport:
    zero_count: int
    saturated_count: int
    fractional_count: int
    fractional_mass: Scalar
    support_mask: np.ndarray      # True where the cell carries mass
    classes: np.ndarray           # int8 per-cell ZERO / FRACTIONAL / SATURATED
    extremality_ratio: Scalar     # 1 - fractional_mass / total mass
    tol: Scalar

    @property
    def counts(self) -> dict:
        return {"zero": self.zero_count, "saturated": self.saturated_count,
                "fractional": self.fractional_count}


def classify_cells(p: DiscreteProblem, plan: CandidatePlan, tol=None) -> StructureReport:
    """Partition cells by where their mass sits between the bounds.

    A cell is zero when h <= tol*capacity, saturated when
    h >= (1-tol)*capacity, fractional otherwise; capacity-0 cells are
    zero. tol defaults to 0 in exact mode and 10^-6 in float.
    """
    h = plan.h
    if h.shape != (p.m, p.n):
        raise DimensionError(f"plan is {h.shape}, problem is {(p.m, p.n)}")
    if tol is None:
        tol = 0 if p.mode == "exact" else CLASSIFY_TOL
    tol = ensure_scalar(tol, p.mode)
    if tol < 0:
        raise DomainError(f"tolerance must be >= 0, got {tol}")
    zero = ensure_scalar(0, p.mode)
    one = ensure_scalar(1, p.mode)
    classes = np.zeros((p.m, p.n), dtype=np.int8)
    mask = np.zeros((p.m, p.n), dtype=bool)
    frac_mass = zero
    nz = ns = nf = 0
    for i in range(p.m):
        for j in range(p.n):
            cap = p.capacity[i, j]
            hv = h[i, j]
            if cap == 0 or hv <= tol * cap:
                classes[i, j] = ZERO
                nz += 1
            elif hv >= (one - tol) * cap:
                classes[i, j] = SATURATED
                mask[i, j] = True
                ns += 1
            else:
                classes[i, j] = FRACTIONAL
                mask[i, j] = True
                nf += 1
                frac_mass = frac_mass + hv
    total = p.total_mass
    if total > 0:
        ratio = one - frac_mass / total
    else:
        ratio = one
    if p.mode == "float":
        frac_mass = float(frac_mass)
        ratio = float(ratio)
    mask.flags.writeable = False
    classes.flags.writeable = False
    return StructureReport(zero_count=nz, saturated_count=ns, fractional_count=nf,
                           fractional_mass=frac_mass, support_mask=mask, classes=classes,
                           extremality_ratio=ratio, tol=tol)


def emit_support_heatmap(report: StructureReport, path) -> None:
    """Write the classification as a plain graymap.

    Pixel values: 0 zero, 128 fractional, 255 saturated. Image width is
    the x count m, height the y count n; the first pixel row is the
    smallest y so plots share one orientation.
    """
    from .fileio import atomic_write_text

    classes = report.classes
    m, n = classes.shape
    level = {ZERO: "0", FRACTIONAL: "128", SATURATED: "255"}
    lines = ["P2", f"{m} {n}", "255"]
    for j in range(n):  # row 1 = smallest y
        lines.append(" ".join(level[int(classes[i, j])] for i in range(m)))
    atomic_write_text(path, "\n".join(lines) + "\n")


def extremality_convergence(which_example: int, sizes: Sequence[int], hbar=None,
                            mode: str = "exact") -> List[Tuple[int, Scalar, Scalar]]:
    """Fractional-mass fraction of the solved optimum per grid size.

    Rows are (n, fractional_mass / total_mass, objective); sizes must be
    even and strictly increasing.
    """
    from .solver import solve

    sizes = list(sizes)
    if not sizes:
        raise DomainError("need at least one grid size")
    for a, b in zip(sizes, sizes[1:]):
        if b <= a:
            raise DomainError(f"sizes must be strictly increasing, got {sizes}")
    rows = []
    for n in sizes:
        p, _ = example_instance(which_example, n, hbar=hbar, mode=mode)
        res = solve(p)
        if res.status != "optimal":
            raise DomainError(f"example {which_example} at n={n} did not solve: {res.status}")
        rep = classify_cells(p, res.plan)
        fraction = rep.fractional_mass / p.total_mass if p.total_mass > 0 \
            else ensure_scalar(0, mode)
        rows.append((n, fraction, res.objective))
    return rows
