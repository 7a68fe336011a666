"""Game configuration, regime classification and closed-form SPE payoffs.

All budgets are in resource units and battlefield values are normalized to
sum to one.  Player B's quality factor ``q`` is folded into its real-time
budget at normalization time, so every other function in the package
assumes ``q == 1``.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

REGIME_RTOL = 1e-9
SUM_TOL = 1e-12


class LottoError(Exception):
    """Base class for errors raised by this package."""


class NonPositiveValue(LottoError, ValueError):
    pass


class NegativeBudget(LottoError, ValueError):
    pass


@dataclass(frozen=True)
class GameConfig:
    """Parameters of a two-stage Lotto game with pre-allocations."""

    w: tuple[float, ...] = (1.0,)
    P: float = 0.0
    R_A: float = 1.0
    R_B: float = 1.0
    q: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(float(x) for x in np.atleast_1d(self.w)))

    @property
    def n(self) -> int:
        return len(self.w)


@dataclass(frozen=True)
class PreAllocation:
    """A point of the scaled simplex ``{p >= 0 : sum(p) == P}``."""

    p: tuple[float, ...]
    P: float = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        raw = self.p if isinstance(self.p, (tuple, list)) else np.atleast_1d(self.p)
        p = tuple(map(float, raw))
        object.__setattr__(self, "p", p)
        total = math.fsum(p)
        if self.P is None:
            object.__setattr__(self, "P", total)
        if any(x < 0 for x in p):
            raise NegativeBudget(f"pre-allocation has a negative entry: {p}")
        if abs(total - self.P) > 1e-9 * max(1.0, self.P):
            raise ValueError(f"pre-allocation sums to {total}, expected {self.P}")

    @classmethod
    def proportional(cls, w, P: float) -> "PreAllocation":
        return cls(tuple(float(x) * P for x in w), P)


class Regime(str, enum.Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"
    CASE3_ZERO_REAL_TIME = "Case3_ZeroRealTime"


@dataclass(frozen=True)
class SpeRegime:
    tag: Regime
    boundary_distance: float


@dataclass(frozen=True)
class SpeResult:
    regime: SpeRegime
    pi_A: float
    pi_B: float
    w: tuple[float, ...]
    P: float
    degenerate: bool = False

    @property
    def p_star(self) -> PreAllocation:
        """The optimal (proportional) pre-allocation, built on demand."""
        return PreAllocation.proportional(self.w, self.P)


def normalize_config(raw: GameConfig) -> GameConfig:
    """Validate ``raw``, rescale ``w`` to sum one and fold ``q`` into ``R_B``."""
    w = np.asarray(raw.w, dtype=float)
    if w.size == 0:
        raise ValueError("at least one battlefield is required")
    if np.any(~np.isfinite(w)) or np.any(w <= 0):
        raise NonPositiveValue(f"battlefield values must be positive, got {raw.w}")
    if not raw.R_B > 0:
        raise NonPositiveValue(f"R_B must be positive, got {raw.R_B}")
    if not raw.q > 0:
        raise NonPositiveValue(f"q must be positive, got {raw.q}")
    if not raw.P >= 0:
        raise NegativeBudget(f"P must be non-negative, got {raw.P}")
    if not raw.R_A >= 0:
        raise NegativeBudget(f"R_A must be non-negative, got {raw.R_A}")

    total = math.fsum(w)
    if abs(total - 1.0) > SUM_TOL:
        warnings.warn(f"battlefield values sum to {total}; rescaling to 1", stacklevel=2)
        w = w / total
    return GameConfig(w=tuple(w), P=float(raw.P), R_A=float(raw.R_A),
                      R_B=float(raw.q * raw.R_B), q=1.0)


def case2_threshold(P: float, R_B: float) -> float:
    """Real-time budget of A below which the all-B2 regime applies (0 if R_B <= P)."""
    if R_B <= P:
        return 0.0
    d = R_B - P
    return 2.0 * d * d / (P + 2.0 * d)


def classify_regime(P: float, R_A: float, R_B: float) -> SpeRegime:
    thr = case2_threshold(P, R_B)
    dist = R_A - thr
    if R_A == 0:
        tag = Regime.CASE3_ZERO_REAL_TIME
    elif R_B <= P or R_A >= thr:
        # exact boundary goes to Case1; both formulas agree there
        tag = Regime.CASE1
    else:
        tag = Regime.CASE2
    return SpeRegime(tag, dist)


def _case1_payoff(P: float, R_A: float, R_B: float) -> float:
    # (R_A + s)^2 == 2 R_A (P + R_A + s) collapses the squared ratio
    s = math.sqrt(R_A * (R_A + 2.0 * P))
    denom = P + R_A + s
    if 2.0 * R_B <= denom:
        return 1.0 - R_B / denom
    # small payoffs: sum the numerator so R_B == P keeps its sqrt(R_A) growth
    return ((P - R_B) + R_A + s) / denom


def spe_payoff(P: float, R_A: float, R_B: float, w=(1.0,)) -> SpeResult:
    """Player A's subgame-perfect payoff with a proportional pre-allocation.

    ``R_B == 0`` is accepted so role-swapped evaluations at budget
    exhaustion stay defined.  ``P == R_A == 0`` returns a zero payoff with
    ``degenerate=True`` instead of raising.
    """
    P, R_A, R_B = float(P), float(R_A), float(R_B)
    if P < 0 or R_A < 0 or R_B < 0:
        raise NegativeBudget(f"budgets must be non-negative: P={P}, R_A={R_A}, R_B={R_B}")
    regime = classify_regime(P, R_A, R_B)
    degenerate = False
    if regime.tag is Regime.CASE3_ZERO_REAL_TIME:
        if P == 0:
            degenerate = True
            pi_A = 1.0 if R_B == 0 else 0.0
        else:
            pi_A = 1.0 - min(R_B / P, 1.0)
    elif regime.tag is Regime.CASE1:
        pi_A = _case1_payoff(P, R_A, R_B)
    else:
        pi_A = R_A / (2.0 * (R_B - P))
    return SpeResult(regime, pi_A, 1.0 - pi_A, tuple(w), P, degenerate)


def hart_baseline(R_A: float, R_B: float) -> float:
    """Equilibrium payoff of A in the standard General Lotto game."""
    if R_A < R_B:
        return R_A / (2.0 * R_B)
    return 1.0 - R_B / (2.0 * R_A)
