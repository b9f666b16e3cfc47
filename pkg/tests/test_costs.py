"""Cost specs and the mixed-derivative sampler."""
from fractions import Fraction

import pytest

from captrans.costs import CostSpec, evaluate_cost, sample_nondegeneracy
from captrans.errors import DomainError
from captrans.grid import Grid1D

HALF = Fraction(1, 2)


def unit_grid(n):
    return Grid1D(lo=-HALF, hi=HALF, n=n, mode="exact")


def test_quadratic_exact_values():
    spec = CostSpec.quadratic()
    assert evaluate_cost(spec, Fraction(1, 2), Fraction(1, 4)) == Fraction(1, 32)
    assert evaluate_cost(spec, Fraction(-1, 3), Fraction(-1, 3)) == 0


def test_periodic_quadratic_folds_to_nearest_shift():
    import math

    spec = CostSpec.periodic_quadratic()
    pts = [Fraction(a, 8) for a in range(-4, 5)]
    # on the fundamental domain the three-shift minimum is the full minimum
    for x in pts:
        for y in pts:
            z = x - y
            folded = z - math.floor(z + HALF)
            assert evaluate_cost(spec, x, y) == min(folded * folded, (folded - 1) ** 2)
    # a full period apart costs nothing
    assert evaluate_cost(spec, Fraction(-1, 2), Fraction(1, 2)) == 0


def test_tabulated_roundtrip_and_no_pointwise_form():
    spec = CostSpec.tabulated([[1, 2], [3, 4]], "exact")
    assert spec.matrix[1, 0] == Fraction(3)
    with pytest.raises(DomainError):
        evaluate_cost(spec, 0, 0)
    with pytest.raises(DomainError):
        CostSpec(kind="quadratic", matrix=spec.matrix)
    with pytest.raises(DomainError):
        CostSpec(kind="cubic")


def test_sampler_quadratic_passes_with_exact_minus_one():
    g = unit_grid(4)
    rep = sample_nondegeneracy(CostSpec.quadratic(), g, g)
    assert rep.verdict == "pass"
    # cross difference is exact on a quadratic: d2c/dxdy = -1 everywhere
    assert all(e == -1 for e in rep.estimates)
    assert rep.min_abs == 1
    assert len(rep.points) == 16


def test_sampler_periodic_includes_kink_cells():
    g = unit_grid(4)
    rep = sample_nondegeneracy(CostSpec.periodic_quadratic(), g, g)
    assert rep.verdict == "pass"
    assert rep.min_abs == 2
    # off-kink cells differentiate the smooth branch: exactly -2
    assert sum(1 for e in rep.estimates if e == -2) == 12
    # |x - y| = 1/2 sits on the fold; the estimate is large and positive
    assert sum(1 for e in rep.estimates if e > 2) == 4


def test_sampler_flat_cost_degenerate():
    g = unit_grid(3)
    rep = sample_nondegeneracy(lambda x, y: x + y, g, g)
    assert rep.verdict == "degenerate"
    assert len(rep.degenerate_points) == 9


def test_sampler_tabulated_unchecked_and_step_guard():
    g = unit_grid(4)
    rep = sample_nondegeneracy(CostSpec.tabulated([[0] * 4] * 4, "exact"), g, g)
    assert rep.verdict == "unchecked" and rep.min_abs is None
    with pytest.raises(DomainError):
        sample_nondegeneracy(CostSpec.quadratic(), g, g, step=Fraction(1, 8))
