import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lotto_lab import core, interplay
from lotto_lab.interplay import ABOVE_CURVE, Branch

pos = st.floats(min_value=0.01, max_value=3)


def test_level_curve_endpoints():
    assert interplay.level_curve_value(0.5, 1.0, 0.0) == 1.0
    assert interplay.level_curve_value(0.5, 1.0, 2.0) == 0.0
    assert interplay.level_curve_value(0.5, 1.0, 2.5) is ABOVE_CURVE
    assert not ABOVE_CURVE
    assert interplay.level_curve_value(1.0, 1.0, 3.0) == math.inf


def test_level_curve_rejects_bad_levels():
    with pytest.raises(ValueError):
        interplay.level_curve_value(1.5, 1.0, 0.0)
    with pytest.raises(ValueError):
        interplay.level_curve(1.0, 1.0)


def test_level_curve_sampling():
    c = interplay.level_curve(0.25, 1.0, 11)
    assert len(c.samples) == 11
    assert c.domain_end == pytest.approx(4 / 3)
    assert c.samples[0] == (0.0, 0.5)
    assert c.samples[-1][1] == pytest.approx(0.0, abs=1e-15)


def test_breakpoint():
    assert interplay.level_curve_breakpoint(0.25, 1.0) == pytest.approx(2 / 3)
    assert interplay.level_curve_breakpoint(0.6, 1.0) == 0.0


@given(st.floats(0.01, 0.99), pos, st.floats(0, 1))
@settings(max_examples=300)
def test_level_curve_duality(Pi, R_B, frac):
    P = frac * R_B / (1 - Pi)
    R = interplay.level_curve_value(Pi, R_B, P)
    assert core.spe_payoff(P, R, R_B).pi_A == pytest.approx(Pi, abs=1e-9)


@given(st.floats(0.01, 0.49), pos)
def test_branches_meet_at_breakpoint(Pi, R_B):
    x = interplay.level_curve_breakpoint(Pi, R_B)
    lin = 2 * Pi * (R_B - x)
    quad = (R_B - (1 - Pi) * x) ** 2 / (2 * R_B * (1 - Pi))
    assert lin == pytest.approx(quad, abs=1e-12)


@given(st.floats(0.01, 0.95))
def test_level_curve_nonincreasing_convex(Pi):
    R = np.array([r for _, r in interplay.level_curve(Pi, 1.0, 200).samples])
    assert np.all(np.diff(R) <= 1e-12)
    assert np.all(np.diff(R, 2) >= -1e-12)


def test_effectiveness_values():
    assert interplay.effectiveness_ratio(1.0, 1.0) == 2.0
    assert interplay.effectiveness_ratio(0.5, 1.0) == pytest.approx(8 / 3)
    assert interplay.equivalent_preallocation(0.5, 1.0) == pytest.approx(4 / 3)
    assert interplay.equivalent_preallocation(2.0, 1.0) == 4.0


@given(pos, pos)
def test_effectiveness_floor(R_A, R_B):
    E = interplay.effectiveness_ratio(R_A, R_B)
    assert E >= 2 - 1e-12
    if R_A >= R_B:
        assert E == 2.0
    P_eq = interplay.equivalent_preallocation(R_A, R_B)
    assert core.spe_payoff(P_eq, 0.0, R_B).pi_A == pytest.approx(
        core.spe_payoff(0.0, R_A, R_B).pi_A, abs=1e-9)


def test_investment_interior_closed_form():
    # this cost makes the payoff exactly 3/4
    plan = interplay.optimal_investment(4 / 3, 1 - 1 / math.sqrt(3), 1.0)
    assert plan.branch is Branch.INTERIOR
    assert plan.P_star == pytest.approx(2.309401076758504, abs=1e-12)
    assert plan.R_A_star == pytest.approx(0.3572655899081634, abs=1e-12)
    assert plan.pi_opt == pytest.approx(0.75, abs=1e-12)


def test_investment_boundary():
    plan = interplay.optimal_investment(4 / 3, 1.333, 1.0)
    assert (plan.P_star, plan.R_A_star) == (0.0, 4 / 3)
    assert plan.pi_opt == pytest.approx(0.625, abs=1e-12)
    assert plan.branch is Branch.BOUNDARY


def test_investment_indifferent_interval_is_flat():
    plan = interplay.optimal_investment(0.5, 0.5, 1.0)
    assert plan.branch is Branch.INDIFFERENT and plan.P_star == 0.0
    lo, hi = plan.indifference_interval
    for P in np.linspace(lo, hi, 9):
        assert core.spe_payoff(P, 0.5 - 0.5 * P, 1.0).pi_A == pytest.approx(plan.pi_opt, abs=1e-12)


def test_investment_rejects_nonpositive():
    with pytest.raises(ValueError):
        interplay.optimal_investment(0.0, 0.5, 1.0)


@given(pos, st.floats(0.05, 2), pos)
@settings(max_examples=100, deadline=None)
def test_investment_beats_budget_line(M_A, c_A, R_B):
    plan = interplay.optimal_investment(M_A, c_A, R_B)
    assert plan.P_star < M_A / c_A
    assert plan.R_A_star > 0
    Ps = np.linspace(0, M_A / c_A, 200)
    best = max(core.spe_payoff(P, max(M_A - c_A * P, 0.0), R_B).pi_A for P in Ps)
    assert best <= plan.pi_opt + 1e-9


@given(st.floats(0.5, 3), st.floats(0.05, 0.95))
def test_investment_jumps_at_threshold_cost(R_B, frac):
    M_A = frac * R_B
    c = M_A / R_B
    below = interplay.optimal_investment(M_A, c * (1 - 1e-9), R_B)
    above = interplay.optimal_investment(M_A, c * (1 + 1e-9), R_B)
    assert below.branch is Branch.INTERIOR and above.branch is Branch.BOUNDARY
    assert below.P_star - above.P_star > 1e-3
    # payoff itself is continuous
    assert below.pi_opt == pytest.approx(above.pi_opt, abs=1e-8)
