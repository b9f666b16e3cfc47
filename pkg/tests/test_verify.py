"""Residual cycles, plan surgery, restriction inheritance, couplings."""
from fractions import Fraction

import numpy as np
import pytest

from captrans.errors import DomainError
from captrans.problem import (
    CandidatePlan,
    example_instance,
    plan_cost,
    random_feasible_instance,
    validate_plan,
)
from captrans.solver import solve
from captrans.verify import apply_cycle, build_coupling, find_improving_cycle, restriction_test

F = Fraction


def test_candidate_cycle_found_at_n16():
    p, cand = example_instance(2, 16)
    cyc = find_improving_cycle(p, cand)
    assert cyc is not None
    assert cyc.signed_cost < 0
    assert cyc.max_push > 0
    assert len(cyc.xs) == len(cyc.ys) == len(cyc)
    # nodes alternate x and y and close up
    nodes = cyc.nodes()
    assert nodes[0] == nodes[-1]
    assert all(s.startswith("x") for s in nodes[0::2])
    assert all(s.startswith("y") for s in nodes[1::2])


def test_optimum_admits_no_cycle():
    p, _ = example_instance(2, 16)
    res = solve(p)
    assert find_improving_cycle(p, res.plan) is None
    # float mode agrees
    pf, _ = example_instance(2, 16, mode="float")
    rf = solve(pf)
    assert find_improving_cycle(pf, rf.plan) is None


def test_candidate_optimal_at_n8_has_no_cycle():
    p, cand = example_instance(2, 8)
    assert find_improving_cycle(p, cand) is None


def test_apply_cycle_improves_by_signed_cost_times_delta():
    p, cand = example_instance(2, 16)
    cyc = find_improving_cycle(p, cand)
    before = plan_cost(p, cand.h)
    for delta in (cyc.max_push, cyc.max_push / 2):
        out = apply_cycle(cand, cyc, delta)
        assert validate_plan(p, out, tol=0).is_member
        assert plan_cost(p, out.h) == before + delta * cyc.signed_cost
        assert out.provenance == "constructed"
    with pytest.raises(DomainError):
        apply_cycle(cand, cyc, cyc.max_push * 2)
    with pytest.raises(DomainError):
        apply_cycle(cand, cyc, F(0))


def test_full_push_meets_solver_optimum_or_better():
    # one cycle need not reach the optimum, but it must strictly improve
    p, cand = example_instance(2, 16)
    res = solve(p)
    cyc = find_improving_cycle(p, cand)
    improved = apply_cycle(cand, cyc, cyc.max_push)
    assert res.objective <= plan_cost(p, improved.h) < plan_cost(p, cand.h)


def test_cycle_respects_residual_bounds():
    p, cand = example_instance(2, 16)
    cyc = find_improving_cycle(p, cand)
    k = len(cyc)
    for t in range(k):
        i, j = cyc.xs[t], cyc.ys[t]
        assert cand.h[i, j] < p.capacity[i, j]  # forward arcs have headroom
        i2 = cyc.xs[(t + 1) % k]
        assert cand.h[i2, j] > 0  # backward arcs carry mass


def test_random_optima_admit_no_cycle():
    for seed in range(12):
        p, _ = random_feasible_instance(4, 4, seed + 40)
        res = solve(p)
        assert find_improving_cycle(p, res.plan) is None


def test_infeasible_plan_rejected():
    p, cand = example_instance(2, 8)
    h = cand.h.copy()
    h[0, 0] = h[0, 0] + F(1, 64)
    with pytest.raises(DomainError):
        find_improving_cycle(p, CandidatePlan(h=h, provenance="constructed"))


def test_restriction_inheritance_20_seeds():
    rng = np.random.default_rng(77)
    for seed in range(20):
        m = int(rng.integers(2, 7))
        n = int(rng.integers(2, 7))
        p, _ = random_feasible_instance(m, n, seed + 500)
        res = solve(p)
        rows = sorted(set(int(r) for r in rng.integers(0, m, size=rng.integers(1, m + 1))))
        cols = sorted(set(int(c) for c in rng.integers(0, n, size=rng.integers(1, n + 1))))
        rep = restriction_test(p, res, rows, cols)
        assert rep.passed
        assert rep.restricted_cost == rep.sub_objective
        assert rep.rows == tuple(rows) and rep.cols == tuple(cols)


def test_restriction_empty_selection_trivial():
    p, _ = example_instance(1, 4)
    res = solve(p)
    rep = restriction_test(p, res, [], [0, 1])
    assert rep.passed and rep.restricted_cost == 0 and rep.sub_objective == 0


def test_restriction_requires_optimal_input():
    p, cand = example_instance(2, 8)
    with pytest.raises(DomainError):
        restriction_test(p, cand, [0], [0])  # a bare plan is not a solve result


def test_build_coupling_two_by_two():
    eps = F(1, 5)
    f_t = np.array([eps / 2, -eps / 2], dtype=object)
    g_t = np.array([eps / 2, -eps / 2], dtype=object)
    h = build_coupling(f_t, g_t, eps)
    assert h[0, 0] == eps / 2 and h[1, 1] == -eps / 2
    assert h[0, 1] == 0 and h[1, 0] == 0
    assert max(abs(v) for v in h.flat) == eps / 2


def test_build_coupling_100_signed_pairs():
    rng = np.random.default_rng(13)
    eps = F(1, 7)
    for _ in range(100):
        nx = int(rng.integers(1, 7))
        ny = int(rng.integers(1, 7))
        f_t = [F(int(k), 8) * eps for k in rng.integers(-3, 4, size=nx)]
        g_t = [F(int(k), 8) * eps for k in rng.integers(-3, 4, size=ny)]
        f_t = np.array([v - sum(f_t) / nx for v in f_t], dtype=object)
        g_t = np.array([v - sum(g_t) / ny for v in g_t], dtype=object)
        assert max(abs(v) for v in f_t) < eps and max(abs(v) for v in g_t) < eps
        h = build_coupling(f_t, g_t, eps)
        for i in range(nx):
            assert sum(h[i, :]) == f_t[i]
        for j in range(ny):
            assert sum(h[:, j]) == g_t[j]
        bound = 3 * eps * (F(1, nx) + F(1, ny))
        assert max(abs(v) for v in h.flat) < bound


def test_build_coupling_guards():
    eps = F(1, 4)
    ok = np.array([F(1, 8), F(-1, 8)], dtype=object)
    with pytest.raises(DomainError):
        build_coupling(ok, np.array([F(1, 8)], dtype=object), eps)  # sums differ
    with pytest.raises(DomainError):
        build_coupling(np.array([eps, -eps], dtype=object), ok, eps)  # not strictly < eps
    with pytest.raises(DomainError):
        build_coupling(ok, ok, F(0))
