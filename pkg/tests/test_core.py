import math
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from lotto_lab import core
from lotto_lab.core import GameConfig, PreAllocation, Regime

budget = st.floats(min_value=1e-3, max_value=50, allow_nan=False)


def test_spe_symmetric_unit_budgets():
    r = core.spe_payoff(1.0, 1.0, 1.0)
    assert r.regime.tag is Regime.CASE1
    assert r.pi_A == pytest.approx(math.sqrt(3) - 1, abs=1e-15)
    assert r.pi_A + r.pi_B == 1.0


def test_spe_case2_example():
    # threshold at P=0.1, R_B=1 is 2*0.81/1.9
    assert core.case2_threshold(0.1, 1.0) == pytest.approx(0.8526315789473684, abs=1e-15)
    r = core.spe_payoff(0.1, 0.5, 1.0)
    assert r.regime.tag is Regime.CASE2
    assert r.pi_A == pytest.approx(0.5 / 1.8, abs=1e-15)


def test_spe_zero_real_time():
    assert core.spe_payoff(2.0, 0.0, 1.0).pi_A == 0.5
    assert core.spe_payoff(0.5, 0.0, 1.0).pi_A == 0.0
    assert core.spe_payoff(2.0, 0.0, 1.0).regime.tag is Regime.CASE3_ZERO_REAL_TIME


def test_spe_reports_proportional_preallocation():
    r = core.spe_payoff(2.0, 1.0, 1.0, w=(0.25, 0.75))
    assert r.p_star.p == (0.5, 1.5) and r.p_star.P == 2.0


def test_spe_degenerate_flag():
    r = core.spe_payoff(0.0, 0.0, 1.0)
    assert r.degenerate and r.pi_A == 0.0


def test_boundary_tie_goes_to_case1():
    thr = core.case2_threshold(0.5, 2.0)
    r = core.spe_payoff(0.5, thr, 2.0)
    assert r.regime.tag is Regime.CASE1
    assert r.regime.boundary_distance == 0.0
    assert r.pi_A == pytest.approx(thr / (2 * 1.5), abs=1e-12)


def test_no_case2_when_preallocation_dominates():
    assert core.case2_threshold(2.0, 1.0) == 0.0
    assert core.classify_regime(2.0, 1e-9, 1.0).tag is Regime.CASE1


def test_negative_budget_rejected():
    with pytest.raises(core.NegativeBudget):
        core.spe_payoff(-0.1, 1.0, 1.0)


def test_normalize_rescales_and_folds_quality():
    with pytest.warns(UserWarning):
        cfg = core.normalize_config(GameConfig(w=(1.0, 3.0), P=1, R_A=1, R_B=2, q=0.5))
    assert cfg.w == (0.25, 0.75)
    assert cfg.R_B == 1.0 and cfg.q == 1.0


def test_normalize_silent_when_summing_to_one():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        core.normalize_config(GameConfig(w=(0.5, 0.5), P=1))


@pytest.mark.parametrize("kw,exc", [
    ({"w": (0.5, -0.5)}, core.NonPositiveValue),
    ({"R_B": 0.0}, core.NonPositiveValue),
    ({"q": 0.0}, core.NonPositiveValue),
    ({"P": -1.0}, core.NegativeBudget),
    ({"R_A": -1.0}, core.NegativeBudget),
])
def test_normalize_rejects(kw, exc):
    with pytest.raises(exc):
        core.normalize_config(GameConfig(**kw))


def test_preallocation_validation():
    with pytest.raises(ValueError):
        PreAllocation((0.5, 0.4), 1.0)
    with pytest.raises(core.NegativeBudget):
        PreAllocation((1.5, -0.5), 1.0)
    assert PreAllocation.proportional((0.25, 0.75), 2.0).p == (0.5, 1.5)


def test_hart_baseline_values():
    assert core.hart_baseline(1.0, 2.0) == 0.25
    assert core.hart_baseline(2.0, 1.0) == 0.75
    assert core.hart_baseline(1.0, 1.0) == 0.5


@given(budget, budget)
def test_baseline_matches(R_A, R_B):
    assert core.spe_payoff(0.0, R_A, R_B).pi_A == core.hart_baseline(R_A, R_B)


@given(budget, budget, budget, st.floats(min_value=0.01, max_value=100))
@settings(max_examples=300)
def test_scale_invariance(P, R_A, R_B, lam):
    a = core.spe_payoff(P, R_A, R_B).pi_A
    b = core.spe_payoff(lam * P, lam * R_A, lam * R_B).pi_A
    assert abs(a - b) <= 1e-12


@given(budget, budget, budget, st.floats(min_value=1e-6, max_value=5))
@settings(max_examples=300)
def test_monotone_in_each_budget(P, R_A, R_B, d):
    base = core.spe_payoff(P, R_A, R_B).pi_A
    assert core.spe_payoff(P + d, R_A, R_B).pi_A >= base - 1e-12
    assert core.spe_payoff(P, R_A + d, R_B).pi_A >= base - 1e-12
    assert core.spe_payoff(P, R_A, R_B + d).pi_A <= base + 1e-12


@given(st.floats(min_value=0, max_value=50), st.floats(min_value=0, max_value=50), budget)
def test_bounds_and_constant_sum(P, R_A, R_B):
    r = core.spe_payoff(P, R_A, R_B)
    assert 0.0 <= r.pi_A <= 1.0
    assert r.pi_A + r.pi_B == 1.0
    if R_A == 0 or R_A > 1e-300:
        # below that, Case2's R_A/(2(R_B-P)) underflows
        assert (r.pi_A == 0) == (R_A == 0 and R_B >= P)


def test_zero_payoff_needs_zero_budget_at_tie():
    # R_B == P: payoff grows like sqrt(R_A) and must not cancel to zero
    assert core.spe_payoff(1.0, 1e-300, 1.0).pi_A > 0


@given(st.floats(min_value=0.0, max_value=10), st.floats(min_value=1e-3, max_value=10))
def test_regime_boundary_continuity(P, extra):
    R_B = P + extra
    R_A = core.case2_threshold(P, R_B)
    case1 = core._case1_payoff(P, R_A, R_B)
    case2 = R_A / (2 * (R_B - P))
    assert abs(case1 - case2) <= 1e-9
