"""Cell classification, heatmap emission, refinement study."""
from fractions import Fraction

import numpy as np
import pytest

from captrans.errors import DomainError
from captrans.problem import CandidatePlan, DiscreteProblem, example_instance
from captrans.solver import solve
from captrans.structure import classify_cells, emit_support_heatmap, extremality_convergence

F = Fraction


def test_example1_optimum_is_bang_bang():
    p, _ = example_instance(1, 4)
    res = solve(p)
    rep = classify_cells(p, res.plan)
    assert rep.fractional_count == 0
    assert rep.saturated_count == 8  # two same-sign blocks of 2x2
    assert rep.zero_count == 8
    assert rep.fractional_mass == 0
    assert rep.extremality_ratio == 1
    assert rep.counts == {"zero": 8, "fractional": 0, "saturated": 8}
    assert (rep.support_mask == (rep.classes != 0)).all()


def test_uniform_mixture_is_all_fractional():
    cost = np.zeros((2, 2), dtype=object)
    cost[...] = F(0)
    f = np.array([F(1, 2), F(1, 2)], dtype=object)
    cap = np.full((2, 2), F(1, 2), dtype=object)
    p = DiscreteProblem(cost=cost, f=f, g=f, capacity=cap, mode="exact")
    h = np.full((2, 2), F(1, 4), dtype=object)
    rep = classify_cells(p, CandidatePlan(h=h, provenance="constructed"))
    assert rep.fractional_count == 4
    assert rep.fractional_mass == 1
    assert rep.extremality_ratio == 0
    assert (rep.classes == 1).all()


def test_zero_capacity_cells_are_zero_class():
    cost = np.zeros((1, 2), dtype=object)
    cost[...] = F(0)
    f = np.array([F(1, 2)], dtype=object)
    g = np.array([F(1, 2), F(0)], dtype=object)
    cap = np.array([[F(1, 2), F(0)]], dtype=object)
    p = DiscreteProblem(cost=cost, f=f, g=g, capacity=cap, mode="exact")
    h = np.array([[F(1, 2), F(0)]], dtype=object)
    rep = classify_cells(p, CandidatePlan(h=h, provenance="constructed"))
    assert rep.classes[0, 0] == 2  # at capacity
    assert rep.classes[0, 1] == 0  # capacity 0 counts as zero, not saturated
    assert not rep.support_mask[0, 1]


def test_float_tolerance_bands():
    cost = np.zeros((1, 3))
    f = np.array([1.0])
    g = np.array([1.0, 0.0, 0.0])
    cap = np.ones((1, 3))
    p = DiscreteProblem(cost=cost, f=f, g=g, capacity=cap, mode="float")
    h = np.array([[1.0 - 1e-9, 1e-9, 0.5]])
    rep = classify_cells(p, CandidatePlan(h=h, provenance="constructed"), tol=1e-6)
    assert rep.classes[0, 0] == 2  # within tol*cap of the bound
    assert rep.classes[0, 1] == 0
    assert rep.classes[0, 2] == 1
    assert isinstance(rep.fractional_mass, float)


def test_heatmap_golden_example1_n4(tmp_path):
    p, _ = example_instance(1, 4)
    res = solve(p)
    rep = classify_cells(p, res.plan)
    path = tmp_path / "support.pgm"
    emit_support_heatmap(rep, path)
    text = path.read_text()
    assert text == (
        "P2\n4 4\n255\n"
        "255 255 0 0\n"
        "255 255 0 0\n"
        "0 0 255 255\n"
        "0 0 255 255\n"
    )


def test_heatmap_fractional_gray(tmp_path):
    cost = np.zeros((2, 2), dtype=object)
    cost[...] = F(0)
    f = np.array([F(1, 2), F(1, 2)], dtype=object)
    cap = np.full((2, 2), F(1, 2), dtype=object)
    p = DiscreteProblem(cost=cost, f=f, g=f, capacity=cap, mode="exact")
    h = np.full((2, 2), F(1, 4), dtype=object)
    rep = classify_cells(p, CandidatePlan(h=h, provenance="constructed"))
    path = tmp_path / "mix.pgm"
    emit_support_heatmap(rep, path)
    body = path.read_text().splitlines()[3:]
    assert body == ["128 128", "128 128"]


def test_convergence_rows_frozen():
    rows = extremality_convergence(2, [8, 16])
    assert [r[0] for r in rows] == [8, 16]
    assert rows[0][1] == 0 and rows[1][1] == 0
    assert rows[0][2] == F(1, 256)
    assert rows[1][2] == F(65, 16384)


def test_convergence_requires_increasing_sizes():
    with pytest.raises(DomainError):
        extremality_convergence(2, [16, 8])
    with pytest.raises(DomainError):
        extremality_convergence(2, [8, 8])
