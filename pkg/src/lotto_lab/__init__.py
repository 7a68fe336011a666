"""Equilibria and investment strategies for General Lotto games with pre-allocations."""

from .core import (
    GameConfig,
    LottoError,
    NegativeBudget,
    NonPositiveValue,
    PreAllocation,
    Regime,
    SpeRegime,
    SpeResult,
    case2_threshold,
    classify_regime,
    hart_baseline,
    normalize_config,
    spe_payoff,
)
from .favoritism import (
    ConvergenceFailure,
    KappaSolution,
    NoConsistentPartition,
    NumericUnsupported,
    Stage2Outcome,
    ZeroRealTimeA,
    solve_numeric,
    solve_partition_closed,
    stage2_payoff,
)
from .interplay import (
    ABOVE_CURVE,
    Branch,
    InvestmentPlan,
    LevelCurve,
    effectiveness_ratio,
    equivalent_preallocation,
    level_curve,
    level_curve_value,
    optimal_investment,
)
from .stackelberg import (
    BestResponse,
    MonetaryParams,
    OutOfBudget,
    StackelbergCase,
    StackelbergOutcome,
    best_response_B,
    follower_payoff,
    pA_dagger,
    stackelberg_equilibrium,
    threshold_h,
)
from .oracle import (
    GridSpec,
    UnknownCheck,
    VerificationReport,
    budget_line_scan,
    follower_scan,
    grid_search_preallocation,
    run_suite,
)

__version__ = "0.1.0"
