"""Grid discretization and marginal balancing."""
from fractions import Fraction

import numpy as np
import pytest

from captrans.costs import CostSpec
from captrans.errors import DomainError
from captrans.grid import (
    Grid1D,
    balance_marginals,
    discretize_capacity,
    discretize_cost,
    discretize_marginal,
)

HALF = Fraction(1, 2)


def unit_grid(n, mode="exact"):
    return Grid1D(lo=-HALF, hi=HALF, n=n, mode=mode)


def test_midpoints_exact():
    g = unit_grid(4)
    assert list(g.midpoints) == [Fraction(-3, 8), Fraction(-1, 8), Fraction(1, 8), Fraction(3, 8)]
    assert g.delta == Fraction(1, 4)


def test_midpoints_float():
    g = Grid1D(lo=-0.5, hi=0.5, n=8, mode="float")
    mids = np.asarray(g.midpoints, dtype=float)
    assert mids[0] == pytest.approx(-0.4375)
    assert np.allclose(np.diff(mids), 0.125)


def test_bad_grid():
    with pytest.raises(DomainError):
        Grid1D(lo=HALF, hi=-HALF, n=4, mode="exact")
    with pytest.raises(DomainError):
        Grid1D(lo=-HALF, hi=HALF, n=0, mode="exact")


def test_discretize_uniform_marginal():
    g = unit_grid(8)
    f = discretize_marginal(lambda x: Fraction(1), g)
    assert f.sum() == 1 and all(v == Fraction(1, 8) for v in f)


def test_discretize_capacity_and_cost():
    gx = unit_grid(4)
    gy = unit_grid(4)
    cap = discretize_capacity(lambda x, y: Fraction(2), gx, gy)
    # bound value scaled by cell area 1/16
    assert cap[0, 0] == Fraction(2, 16)
    c = discretize_cost(CostSpec.quadratic(), gx, gy)
    assert c[0, 3] == (gx.midpoints[0] - gy.midpoints[3]) ** 2 / 2
    assert c[1, 1] == 0


def test_balance_marginals_exact_requires_equality():
    f = np.array([Fraction(1, 2), Fraction(1, 2)], dtype=object)
    g = np.array([Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)], dtype=object)
    f2, g2 = balance_marginals(f, g, "exact")
    assert f2.sum() == g2.sum() == 1
    g_bad = g.copy()
    g_bad[0] = Fraction(1, 2)
    with pytest.raises(DomainError):
        balance_marginals(f, g_bad, "exact")


def test_balance_marginals_float_rescales():
    f = np.array([0.5, 0.5])
    g = np.array([0.2, 0.2, 0.2])
    f2, g2 = balance_marginals(f, g, "float")
    assert g2.sum() == pytest.approx(f2.sum())
    assert np.allclose(g2, [1 / 3, 1 / 3, 1 / 3])


def test_negative_density_rejected():
    g = unit_grid(4)
    with pytest.raises(DomainError):
        discretize_marginal(lambda x: x, g)  # negative on the left half
    with pytest.raises(DomainError):
        discretize_capacity(lambda x, y: x * y, g, g)
