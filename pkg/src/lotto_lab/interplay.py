"""Trade-offs between pre-allocated and real-time resources.

Level curves of the SPE payoff, the effectiveness ratio of real-time over
pre-allocated resources, and the optimal split of a monetary budget when
pre-allocated resources cost ``c_A`` per unit (real-time ones cost 1).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import hart_baseline


class _AboveCurve:
    """Sentinel: every real-time budget beats the requested level."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ABOVE_CURVE"

    def __bool__(self):
        return False


ABOVE_CURVE = _AboveCurve()


@dataclass(frozen=True)
class LevelCurve:
    Pi: float
    R_B: float
    domain_end: float
    samples: tuple[tuple[float, float], ...]


class Branch(str, enum.Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    INDIFFERENT = "Indifferent"


@dataclass(frozen=True)
class InvestmentPlan:
    M_A: float
    c_A: float
    P_star: float
    R_A_star: float
    pi_opt: float
    branch: Branch
    indifference_interval: tuple[float, float] | None = None


def level_curve_breakpoint(Pi: float, R_B: float) -> float:
    """Pre-allocation where the linear branch hands over to the quadratic one."""
    if Pi >= 0.5:
        return 0.0
    return (1.0 - 2.0 * Pi) * R_B / (1.0 - Pi)


def level_curve_value(Pi: float, R_B: float, P: float):
    """Real-time budget A needs, together with ``P``, to reach payoff ``Pi``.

    Returns ``ABOVE_CURVE`` past the curve's end point ``R_B/(1-Pi)``.
    ``Pi == 1`` is unreachable with finite budgets and returns ``inf``.
    """
    if not 0.0 <= Pi <= 1.0:
        raise ValueError(f"performance level must lie in [0, 1], got {Pi}")
    if Pi == 1.0:
        return math.inf
    P_max = R_B / (1.0 - Pi)
    if P > P_max:
        return ABOVE_CURVE
    if Pi < 0.5 and P < level_curve_breakpoint(Pi, R_B):
        return 2.0 * Pi * (R_B - P)
    d = R_B - (1.0 - Pi) * P
    return d * d / (2.0 * R_B * (1.0 - Pi))


def level_curve(Pi: float, R_B: float, num: int = 100) -> LevelCurve:
    if not 0.0 <= Pi < 1.0:
        raise ValueError(f"level curves exist for performance levels in [0, 1), got {Pi}")
    P_max = R_B / (1.0 - Pi)
    Ps = np.linspace(0.0, P_max, num).tolist()
    return LevelCurve(Pi, R_B, P_max, tuple((P, level_curve_value(Pi, R_B, P)) for P in Ps))


def effectiveness_ratio(R_A: float, R_B: float) -> float:
    """Units of pre-allocation worth one unit of real-time budget ``R_A``."""
    if R_A >= R_B:
        return 2.0
    return 2.0 * R_B * R_B / (R_A * (2.0 * R_B - R_A))


def equivalent_preallocation(R_A: float, R_B: float) -> float:
    """Pre-allocation that, with no real-time budget, matches ``R_A`` alone."""
    if R_A >= R_B:
        return 2.0 * R_A
    return 2.0 * R_B * R_B / (2.0 * R_B - R_A)


def _interior_P(M_A: float, c_A: float) -> float:
    return 2.0 * (1.0 - c_A) / (2.0 - c_A) * M_A / c_A


def optimal_investment(M_A: float, c_A: float, R_B: float) -> InvestmentPlan:
    """Best split of budget ``M_A`` between pre-allocated and real-time resources.

    At the indifference cost ``c_A == min(1, M_A/R_B)`` every
    pre-allocation in ``indifference_interval`` is optimal; ``P_star = 0``
    is reported.
    """
    if M_A <= 0 or c_A <= 0 or R_B <= 0:
        raise ValueError("M_A, c_A and R_B must be positive")
    t = min(1.0, M_A / R_B)
    if c_A < t:
        P = _interior_P(M_A, c_A)
        pi = 1.0 - R_B / (2.0 * M_A) * c_A * (2.0 - c_A)
        return InvestmentPlan(M_A, c_A, P, M_A - c_A * P, pi, Branch.INTERIOR)
    pi = hart_baseline(M_A, R_B)
    if c_A == t:
        return InvestmentPlan(M_A, c_A, 0.0, M_A, pi, Branch.INDIFFERENT,
                              (0.0, _interior_P(M_A, c_A)))
    return InvestmentPlan(M_A, c_A, 0.0, M_A, pi, Branch.BOUNDARY)
