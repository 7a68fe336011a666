"""Two-sided pre-allocation on a single unit-value battlefield.

Player A (leader) buys ``p_A`` units of pre-allocation at cost ``c_A`` each
and keeps ``R_A = M_A - c_A p_A`` as real-time budget.  Player B (follower)
observes ``p_A`` and buys ``p_B`` at cost ``c_B``.  The decisive stage is a
favoritism game with signed favoritism ``p_A - p_B``.

The follower's payoff is piecewise, one closed form per region:

* ``R1A``/``R2A``: ``p_A >= p_B``, A favored, A's regime 1 or 2,
* ``R1B``/``R2B``: ``p_B > p_A``, B favored, B's regime 1 or 2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from .core import LottoError, spe_payoff
from .interplay import _interior_P, optimal_investment

BRACKET_XTOL = 1e-12
BUDGET_SLACK = 1e-12


class OutOfBudget(LottoError, ValueError):
    pass


class NoRootInInterval(LottoError):
    pass


class BracketFailure(LottoError):
    pass


class _Complex:
    def __repr__(self):
        return "COMPLEX"

    def __bool__(self):
        return False


COMPLEX = _Complex()


@dataclass(frozen=True)
class MonetaryParams:
    M_A: float
    c_A: float
    M_B: float
    c_B: float

    def __post_init__(self):
        if not (self.M_A > 0 and self.M_B > 0):
            raise ValueError(f"monetary budgets must be positive: {self}")
        if not (0 < self.c_A < 1 and 0 < self.c_B < 1):
            raise ValueError(f"per-unit costs must lie in (0, 1): {self}")

    @property
    def cap_A(self) -> float:
        return self.M_A / self.c_A

    @property
    def cap_B(self) -> float:
        return self.M_B / self.c_B


class FollowerRegion(str, enum.Enum):
    R1A = "R1A"
    R2A = "R2A"
    R1B = "R1B"
    R2B = "R2B"


class StackelbergCase(str, enum.Enum):
    WEAK_FOLLOWER = "WeakFollower"
    MIDDLE_INTERIOR = "MiddleInterior"
    MIDDLE_INDIFFERENT = "MiddleIndifferent"
    STRONG_FOLLOWER = "StrongFollower"


@dataclass(frozen=True)
class BestResponse:
    p_B: float
    u_B: float
    alternative: float | None = None


@dataclass(frozen=True)
class StackelbergOutcome:
    p_A_star: float
    p_B_star: float
    u_A: float
    u_B: float
    case: StackelbergCase
    p_A_dagger: float | None = None
    p_B_alternative: float | None = None


# -- closed-form pieces of the follower payoff ------------------------------

def u_B_1A(p_A, p_B, R_A, R_B):
    P = p_A - p_B
    if R_A == 0:
        return min(R_B / P, 1.0) if P > 0 else 0.0
    return R_B / (P + R_A + math.sqrt(R_A * (R_A + 2.0 * P)))


def u_B_2A(p_A, p_B, R_A, R_B):
    return 1.0 - R_A / (2.0 * (R_B - (p_A - p_B)))


def u_B_1B(p_A, p_B, R_A, R_B):
    d = p_B - p_A
    s = math.sqrt(R_B * (R_B + 2.0 * d))
    return ((d + R_B - R_A) + s) / (d + R_B + s)


def u_B_2B(p_A, p_B, R_A, R_B):
    return R_B / (2.0 * (R_A - (p_B - p_A)))


def _regime1(own_fav, own_R, opp_R):
    """Whether the favored side is in its regime 1 (printed region test)."""
    if opp_R < own_fav:
        return True
    d = opp_R - own_fav
    if d == 0:
        return True
    return own_R >= 2.0 * d * d / (2.0 * opp_R - own_fav)


def region_of(p_A, p_B, R_A, R_B) -> FollowerRegion:
    if p_A >= p_B:
        return FollowerRegion.R1A if _regime1(p_A - p_B, R_A, R_B) else FollowerRegion.R2A
    return FollowerRegion.R1B if _regime1(p_B - p_A, R_B, R_A) else FollowerRegion.R2B


_PIECES = {
    FollowerRegion.R1A: u_B_1A,
    FollowerRegion.R2A: u_B_2A,
    FollowerRegion.R1B: u_B_1B,
    FollowerRegion.R2B: u_B_2B,
}


def _check_budget(x, cap, name):
    if x < -BUDGET_SLACK * max(1.0, cap) or x > cap * (1 + BUDGET_SLACK):
        raise OutOfBudget(f"{name}={x} outside [0, {cap}]")


def follower_payoff_raw(p_A, p_B, R_A, R_B):
    """Follower payoff for explicit real-time budgets (no budget bookkeeping)."""
    if R_A == 0 and R_B == 0 and p_A == p_B:
        # A wins ties
        return 0.0, FollowerRegion.R1A
    region = region_of(p_A, p_B, R_A, R_B)
    return _PIECES[region](p_A, p_B, R_A, R_B), region


def follower_payoff(p_A: float, p_B: float, params: MonetaryParams):
    """Player B's final payoff and the region of ``(p_A, p_B)``."""
    _check_budget(p_A, params.cap_A, "p_A")
    _check_budget(p_B, params.cap_B, "p_B")
    R_A = max(params.M_A - params.c_A * p_A, 0.0)
    R_B = max(params.M_B - params.c_B * p_B, 0.0)
    return follower_payoff_raw(p_A, p_B, R_A, R_B)


def follower_payoff_via_spe(p_A, p_B, R_A, R_B) -> float:
    """Same payoff assembled from the one-sided SPE formulas (orientation swap)."""
    if p_A >= p_B:
        return spe_payoff(p_A - p_B, R_A, R_B).pi_B
    return spe_payoff(p_B - p_A, R_B, R_A).pi_A


# -- follower best response --------------------------------------------------

def hat_pB(p_A: float, M_B: float, c_B: float) -> float:
    """Interior stationary point of the B-favored regime-1 payoff."""
    return M_B / c_B - (M_B - c_B * p_A) / (2.0 - c_B)


def u_B_at_hat(R_A: float, p_A: float, M_B: float, c_B: float) -> float:
    return 1.0 - c_B * (2.0 - c_B) / 2.0 * R_A / (M_B - c_B * p_A)


def _K2(R_A, p_A):
    return 2.0 / (R_A + p_A + math.sqrt(R_A * (R_A + 2.0 * p_A)))


def u_B_at_zero(R_A: float, p_A: float, M_B: float) -> float:
    """Regime-1A payoff of B when it does not respond (``p_B = 0``)."""
    return M_B / 2.0 * _K2(R_A, p_A)


def roots_r_pm(p_A: float, R_A: float, M_B: float, c_B: float):
    """Both roots of ``F(p_B) = L(p_B)``, or ``COMPLEX``.

    ``F(p_B) = 2(t_A - p_B)^2/(2R_A + p_A - p_B)`` with ``t_A = R_A + p_A``
    is the region-1B boundary and ``L(p_B) = M_B - c_B p_B`` is B's
    remaining real-time budget.
    """
    t = R_A + p_A
    a = 2.0 - c_B
    b = 2.0 * t * a - (M_B - c_B * p_A)
    disc = b * b - 4.0 * a * (2.0 * t * (t - M_B) + M_B * p_A)
    if disc < 0:
        return COMPLEX
    s = math.sqrt(disc)
    return (b - s) / (2.0 * a), (b + s) / (2.0 * a)


def F_boundary(p_B, p_A, R_A):
    t = R_A + p_A
    return 2.0 * (t - p_B) ** 2 / (2.0 * R_A + p_A - p_B)


def G_boundary(p_B, p_A, M_B, c_B):
    x = M_B + (1.0 - c_B) * p_B - p_A
    return 2.0 * x * x / (2.0 * (M_B - c_B * p_B) - (p_A - p_B))


def pB_1B(p_A: float, R_A: float, M_B: float, c_B: float) -> float:
    """Where B's payoff switches from regime 2B to 1B (middle-low band)."""
    t = R_A + p_A
    roots = roots_r_pm(p_A, R_A, M_B, c_B)
    tol = 1e-10 * max(1.0, R_A, M_B)
    if roots is not COMPLEX:
        for r in roots:
            if p_A - tol <= r < t:
                r = max(r, p_A)
                if abs(F_boundary(r, p_A, R_A) - (M_B - c_B * r)) <= tol:
                    return r
    raise NoRootInInterval(f"no root of F = L in [{p_A}, {t})")


def pB_1A(p_A: float, R_A: float, M_B: float, c_B: float) -> float:
    """Where B's payoff switches from regime 1A to 2A (middle-high band)."""
    lo = max(0.0, (p_A - M_B) / (1.0 - c_B))

    def f(x):
        return G_boundary(x, p_A, M_B, c_B) - R_A

    if not (f(lo) < 0 < f(p_A)):
        raise NoRootInInterval(f"G - R_A has no sign change on [{lo}, {p_A}]")
    root = bisect(f, lo, p_A, xtol=BRACKET_XTOL, maxiter=500)
    if abs(f(root)) > 1e-10 * max(1.0, R_A):
        root = _refine(f, root, lo, p_A)
    return root


def _refine(f, x, lo, hi):
    from scipy.optimize import brentq
    return brentq(f, lo, hi, xtol=1e-15, rtol=1e-15, maxiter=500)


def threshold_h(R_A: float, p_A: float, c_B: float) -> float:
    """Follower capacity ``M_B/c_B`` at which responding starts to pay off.

    Solves ``u_B_at_zero = u_B_at_hat`` for ``M_B``; the smaller root of the
    quadratic is written as ``2C/(B + sqrt(disc))`` to avoid cancellation.
    """
    K1 = c_B * (2.0 - c_B) / 2.0
    K2 = _K2(R_A, p_A)
    B = 1.0 + K2 * c_B * p_A / 2.0
    C = c_B * p_A + K1 * R_A
    disc = max(B * B - 2.0 * K2 * C, 0.0)
    m = 2.0 * C / (B + math.sqrt(disc))
    return m / c_B


def best_response_B(p_A: float, R_A: float, params: MonetaryParams) -> BestResponse:
    """Follower's optimal purchase against ``p_A``; ties pick ``p_B = 0``."""
    h = threshold_h(R_A, p_A, params.c_B)
    cap = params.cap_B
    if cap > h:
        pb = hat_pB(p_A, params.M_B, params.c_B)
        return BestResponse(pb, follower_payoff(p_A, pb, params)[0])
    u0 = follower_payoff(p_A, 0.0, params)[0]
    if cap == h:
        return BestResponse(0.0, u0, hat_pB(p_A, params.M_B, params.c_B))
    return BestResponse(0.0, u0)


def leader_security_payoff(p_A: float, params: MonetaryParams) -> float:
    """A's payoff at ``p_A`` when B best-responds."""
    R_A = max(params.M_A - params.c_A * p_A, 0.0)
    return 1.0 - best_response_B(p_A, R_A, params).u_B


# -- leader ------------------------------------------------------------------

def _indifference_gap(p_A, params):
    R_A = max(params.M_A - params.c_A * p_A, 0.0)
    return u_B_at_zero(R_A, p_A, params.M_B) - u_B_at_hat(R_A, p_A, params.M_B, params.c_B)


def pA_dagger(params: MonetaryParams, samples: int = 512) -> float:
    """Leader purchase that leaves the follower indifferent about responding.

    Defined for ``M_A < M_B/c_B <= M_A/c_A``.  When the two capacities
    coincide the gap never changes sign below ``M_A/c_A``; the follower
    can only respond while ``p_A < M_B/c_B``, so ``M_A/c_A`` is returned.
    """
    cap_B = params.cap_B
    if not (params.M_A < cap_B <= params.cap_A * (1 + 1e-15)):
        raise BracketFailure("p_A dagger needs M_A < M_B/c_B <= M_A/c_A")
    xs = np.linspace(0.0, cap_B, samples + 1)[:-1]
    vals = [_indifference_gap(x, params) for x in xs]
    for i in range(1, len(xs)):
        if vals[i - 1] < 0 <= vals[i]:
            root = bisect(_indifference_gap, xs[i - 1], xs[i], args=(params,),
                          xtol=BRACKET_XTOL, maxiter=500)
            return root
    # the gap blows up just below cap_B unless the capacities coincide
    hi = cap_B * (1 - 1e-12)
    if vals[-1] < 0 and _indifference_gap(hi, params) >= 0:
        return bisect(_indifference_gap, xs[-1], hi, args=(params,), xtol=BRACKET_XTOL,
                      maxiter=500)
    if math.isclose(cap_B, params.cap_A, rel_tol=1e-12):
        return params.cap_A
    raise BracketFailure(f"indifference gap has no sign change for {params}")


def stackelberg_equilibrium(params: MonetaryParams) -> StackelbergOutcome:
    M_A, c_A, M_B, c_B = params.M_A, params.c_A, params.M_B, params.c_B
    cap_A, cap_B = params.cap_A, params.cap_B
    if cap_B <= M_A:
        plan = optimal_investment(M_A, c_A, M_B)
        return StackelbergOutcome(plan.P_star, 0.0, plan.pi_opt, 1.0 - plan.pi_opt,
                                  StackelbergCase.WEAK_FOLLOWER)
    if cap_B <= cap_A:
        dagger = pA_dagger(params)
        p_bar = _interior_P(M_A, c_A)
        if dagger < p_bar:
            plan = optimal_investment(M_A, c_A, M_B)
            return StackelbergOutcome(p_bar, 0.0, plan.pi_opt, 1.0 - plan.pi_opt,
                                      StackelbergCase.MIDDLE_INTERIOR, dagger)
        if dagger >= cap_B:
            # capacities coincide: the follower cannot outbid A at all
            u_B = follower_payoff(dagger, 0.0, params)[0]
            return StackelbergOutcome(dagger, 0.0, 1.0 - u_B, u_B,
                                      StackelbergCase.MIDDLE_INDIFFERENT, dagger)
        u_A = c_A * (2.0 - c_B) / 2.0 * (cap_A - dagger) / (cap_B - dagger)
        return StackelbergOutcome(dagger, 0.0, u_A, 1.0 - u_A, StackelbergCase.MIDDLE_INDIFFERENT,
                                  dagger, hat_pB(dagger, M_B, c_B))
    u_A = c_B * (2.0 - c_B) / 2.0 * M_A / M_B
    return StackelbergOutcome(0.0, hat_pB(0.0, M_B, c_B), u_A, 1.0 - u_A,
                              StackelbergCase.STRONG_FOLLOWER)
