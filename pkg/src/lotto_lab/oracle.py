"""Brute-force verification of the closed forms.

Grid searches over the pre-allocation simplex, budget lines and follower
responses, plus a registry of named invariant checks.  Each check returns
a :class:`VerificationReport`; the violation is a signed gap, so passing
checks still show how much slack is left.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import core, favoritism as fav, interplay, stackelberg as stk
from .core import GameConfig, LottoError, PreAllocation


class UnknownCheck(LottoError, KeyError):
    pass


class TooManyBattlefields(LottoError, ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    resolution: int = 40
    seed: int = 0

    def __post_init__(self):
        if self.resolution < 2:
            raise ValueError("resolution must be at least 2")

    def rng(self, salt: int = 0) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])


@dataclass
class VerificationReport:
    check_name: str
    instances_run: int
    max_violation: float
    passed: bool
    worst_case_input: dict = field(default_factory=dict)
    tolerance: float = 0.0

    def to_json(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def reports_to_json(reports) -> str:
    return json.dumps([r.to_json() for r in reports], indent=2, default=_jsonable)


def _jsonable(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    return str(x)


@dataclass(frozen=True)
class ScanResult:
    arg: float
    value: float
    near_optimal_span: tuple[float, float]


# -- grid searches -------------------------------------------------------------

def simplex_lattice(n: int, m: int):
    """All integer compositions of ``m`` into ``n`` non-negative parts."""
    for bars in itertools.combinations(range(m + n - 1), n - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(m + n - 2 - prev)
        yield parts


def grid_search_preallocation(cfg: GameConfig, grid: GridSpec, tie_tol: float = 1e-12):
    """Best pre-allocation on the simplex lattice with ``grid.resolution`` subdivisions.

    Ties within ``tie_tol`` are broken toward the proportional point, since
    payoffs are exactly flat over the all-B2 region.
    """
    if cfg.n > 4:
        raise TooManyBattlefields(f"grid search supports n <= 4, got {cfg.n}")
    if cfg.R_A <= 0:
        raise ValueError("grid search needs R_A > 0")
    m = grid.resolution
    w = np.asarray(cfg.w)
    target = w * cfg.P
    best_pi = -math.inf
    best_p = None
    best_dist = math.inf
    for parts in simplex_lattice(cfg.n, m):
        p = np.asarray(parts, dtype=float) * cfg.P / m
        pi = fav.stage2_payoff(PreAllocation(tuple(p), cfg.P), cfg).pi_A
        dist = float(np.max(np.abs(p - target)))
        if pi > best_pi + tie_tol or (pi >= best_pi - tie_tol and dist < best_dist):
            if pi > best_pi:
                best_pi = pi
            best_p, best_dist = p, dist
    return PreAllocation(tuple(best_p), cfg.P), best_pi


def _scan(xs, vals, tol):
    vals = np.asarray(vals)
    i = int(np.argmax(vals))
    near = xs[vals >= vals[i] - tol]
    return ScanResult(float(xs[i]), float(vals[i]), (float(near.min()), float(near.max())))


def budget_line_scan(M_A: float, c_A: float, R_B: float, points: int = 2000,
                     flat_tol: float = 1e-9) -> ScanResult:
    """Scan the budget line ``R_A = M_A - c_A P`` for the best SPE payoff."""
    Ps = np.linspace(0.0, M_A / c_A, points)
    vals = [core.spe_payoff(P, max(M_A - c_A * P, 0.0), R_B).pi_A for P in Ps]
    return _scan(Ps, vals, flat_tol)


def follower_scan(p_A: float, params: stk.MonetaryParams, points: int = 2000,
                  flat_tol: float = 1e-12) -> ScanResult:
    """Scan B's purchases on ``[0, M_B/c_B]`` for its best payoff."""
    xs = np.linspace(0.0, params.cap_B, points)
    vals = [stk.follower_payoff(p_A, x, params)[0] for x in xs]
    return _scan(xs, vals, flat_tol)


def leader_scan(params: stk.MonetaryParams, points: int = 500) -> ScanResult:
    xs = np.linspace(0.0, params.cap_A, points)
    vals = [stk.leader_security_payoff(x, params) for x in xs]
    return _scan(xs, vals, 1e-12)


# -- random instance helpers ------------------------------------------------------

def random_instance(rng, n_choices=(1, 2, 3, 5), lo=0.05, hi=3.0):
    n = int(rng.choice(n_choices))
    w = rng.dirichlet(np.ones(n))
    P, R_A, R_B = rng.uniform(lo, hi, 3)
    p = rng.dirichlet(np.ones(n)) * P
    cfg = GameConfig(w=tuple(w), P=float(P), R_A=float(R_A), R_B=float(R_B))
    return cfg, PreAllocation(tuple(p), float(P))


def random_params(rng, case=None):
    """Monetary parameters, optionally forced into one Stackelberg case (1, 2, 3)."""
    M_A = rng.uniform(0.1, 2.0)
    c_A = rng.uniform(0.05, 0.95)
    c_B = rng.uniform(0.05, 0.95)
    if case is None:
        M_B = rng.uniform(0.05, 3.0)
    elif case == 1:
        M_B = c_B * rng.uniform(0.05, 1.0) * M_A
    elif case == 2:
        M_B = c_B * rng.uniform(M_A, M_A / c_A)
    else:
        M_B = c_B * M_A / c_A * rng.uniform(1.01, 3.0)
    return stk.MonetaryParams(float(M_A), float(c_A), float(M_B), float(c_B))


def _cfg_dict(cfg, p=None):
    d = {"w": list(cfg.w), "P": cfg.P, "R_A": cfg.R_A, "R_B": cfg.R_B}
    if p is not None:
        d["p"] = list(p.p)
    return d


class _Tracker:
    def __init__(self):
        self.count = 0
        self.worst = -math.inf
        self.worst_input = {}

    def add(self, violation, inp):
        self.count += 1
        if violation > self.worst or (math.isnan(violation) and not math.isnan(self.worst)):
            self.worst = violation
            self.worst_input = inp


# -- checks ------------------------------------------------------------------------
# Each check takes a GridSpec and returns a _Tracker.

def _chk_constant_sum(grid):
    t = _Tracker()
    rng = grid.rng(1)
    for P, R_A, R_B in rng.uniform(0, 3, (2000, 3)):
        r = core.spe_payoff(P, R_A, R_B)
        t.add(abs(r.pi_A + r.pi_B - 1.0), {"P": P, "R_A": R_A, "R_B": R_B})
    return t


def _chk_regime_continuity(grid):
    t = _Tracker()
    axis = np.linspace(3 / 50, 3, 50)
    for P in axis:
        for R_B in axis:
            if R_B <= P:
                continue
            R_A = core.case2_threshold(P, R_B)
            gap = abs(core._case1_payoff(P, R_A, R_B) - R_A / (2 * (R_B - P)))
            t.add(gap, {"P": P, "R_B": R_B})
    return t


def _chk_scale_invariance(grid):
    t = _Tracker()
    rng = grid.rng(2)
    for P, R_A, R_B in rng.uniform(0.01, 3, (500, 3)):
        base = core.spe_payoff(P, R_A, R_B).pi_A
        for lam in (0.1, 3.0, 10.0):
            v = core.spe_payoff(lam * P, lam * R_A, lam * R_B).pi_A
            t.add(abs(v - base), {"P": P, "R_A": R_A, "R_B": R_B, "lambda": lam})
    return t


def _chk_monotonicity(grid):
    t = _Tracker()
    axis = np.arange(0.0, 3.0 + 1e-9, 0.02)
    rb_axis = axis[1:]
    f = np.vectorize(lambda P, R_A, R_B: core.spe_payoff(P, R_A, R_B).pi_A)
    for R_B in (0.5, 1.0, 2.0):
        Pg, Rg = np.meshgrid(axis, axis, indexing="ij")
        V = f(Pg, Rg, R_B)
        t.add(float(np.max(V[:-1, :] - V[1:, :])), {"axis": "P", "R_B": R_B})
        t.add(float(np.max(V[:, :-1] - V[:, 1:])), {"axis": "R_A", "R_B": R_B})
    for P in (0.0, 0.5, 1.5):
        Rg, Bg = np.meshgrid(axis, rb_axis, indexing="ij")
        V = f(P, Rg, Bg)
        t.add(float(np.max(V[:, 1:] - V[:, :-1])), {"axis": "R_B", "P": P})
    return t


def _chk_baseline(grid):
    t = _Tracker()
    rng = grid.rng(3)
    for R_A, R_B in rng.uniform(0, 3, (10_000, 2)):
        if R_B == 0:
            continue
        t.add(abs(core.spe_payoff(0.0, R_A, R_B).pi_A - core.hart_baseline(R_A, R_B)),
              {"R_A": R_A, "R_B": R_B})
    return t


def _chk_bounds(grid):
    t = _Tracker()
    rng = grid.rng(4)
    pts = list(rng.uniform(0, 3, (2000, 3)))
    pts += [(P, 0.0, R_B) for P, R_B in rng.uniform(0, 3, (200, 2))]
    for P, R_A, R_B in pts:
        pi = core.spe_payoff(P, R_A, R_B).pi_A
        zero_expected = R_A == 0 and R_B >= P
        viol = max(-pi, pi - 1.0, 0.0)
        if (pi == 0) != zero_expected:
            viol = max(viol, 1.0)
        t.add(viol, {"P": P, "R_A": R_A, "R_B": R_B})
    return t


def _chk_residual_certificate(grid):
    t = _Tracker()
    rng = grid.rng(5)
    for _ in range(300):
        cfg, p = random_instance(rng)
        for sol in (fav.solve_partition_closed(p, cfg), fav.solve_numeric(p, cfg)):
            s = max(1.0, cfg.R_A, cfg.R_B, cfg.P)
            t.add(max(abs(sol.residual_A), abs(sol.residual_B)) / s, _cfg_dict(cfg, p))
    return t


def _chk_solver_agreement(grid):
    t = _Tracker()
    rng = grid.rng(6)
    for _ in range(500):
        cfg, p = random_instance(rng)
        a = fav.solve_partition_closed(p, cfg)
        b = fav.solve_numeric(p, cfg)
        d = max(abs(a.kappa_A - b.kappa_A) / a.kappa_A, abs(a.kappa_B - b.kappa_B) / a.kappa_B)
        if a.partition_B1 != b.partition_B1:
            d = math.inf
        t.add(d, _cfg_dict(cfg, p))
    return t


def _chk_partition_order(grid):
    t = _Tracker()
    rng = grid.rng(7)
    for _ in range(300):
        cfg, p = random_instance(rng)
        sol = fav.stage2_payoff(p, cfg).kappa
        r = np.asarray(p.p) / np.asarray(cfg.w)
        if sol.partition_B1 and sol.partition_B2:
            gap = float(np.max(r[list(sol.partition_B2)]) - np.min(r[list(sol.partition_B1)]))
        else:
            gap = -1.0
        t.add(gap, _cfg_dict(cfg, p))
    return t


def _chk_proportional_consistency(grid):
    t = _Tracker()
    rng = grid.rng(8)
    for _ in range(300):
        cfg, _ = random_instance(rng)
        p = PreAllocation.proportional(cfg.w, cfg.P)
        a = fav.stage2_payoff(p, cfg).pi_A
        b = core.spe_payoff(cfg.P, cfg.R_A, cfg.R_B).pi_A
        t.add(abs(a - b), _cfg_dict(cfg))
    return t


def _chk_case2_boundary(grid):
    t = _Tracker()
    rng = grid.rng(9)
    for P, R_A, R_B in rng.uniform(0.05, 3, (500, 3)):
        cfg = GameConfig(w=(1.0,), P=P, R_A=R_A, R_B=R_B)
        sol = fav.solve_partition_closed(PreAllocation((P,), P), cfg)
        bound = R_A / 2 * (1 + math.sqrt(1 + 2 / R_A * P))
        margin = (R_B - P) - bound
        if abs(margin) < 1e-9:
            continue
        predicted_b2 = margin > 0
        t.add(0.0 if predicted_b2 == (sol.partition_B2 == (0,)) else 1.0,
              {"P": P, "R_A": R_A, "R_B": R_B})
    return t


LEVELS = (0.1, 0.25, 0.5, 0.625, 0.75, 0.9)


def _chk_level_curve_duality(grid):
    t = _Tracker()
    for R_B in (1.0, 0.4, 2.5):
        for Pi in LEVELS + (0.3, 0.6):
            for P in np.linspace(0, R_B / (1 - Pi), 40):
                R = interplay.level_curve_value(Pi, R_B, P)
                t.add(abs(core.spe_payoff(P, R, R_B).pi_A - Pi), {"Pi": Pi, "R_B": R_B, "P": P})
    return t


def _chk_level_curve_branch_continuity(grid):
    t = _Tracker()
    for R_B in (1.0, 0.4, 2.5):
        for Pi in np.linspace(0.01, 0.49, 25):
            x = interplay.level_curve_breakpoint(Pi, R_B)
            lin = 2 * Pi * (R_B - x)
            quad = (R_B - (1 - Pi) * x) ** 2 / (2 * R_B * (1 - Pi))
            t.add(abs(lin - quad), {"Pi": Pi, "R_B": R_B})
    return t


def _chk_level_curve_shape(grid):
    t = _Tracker()
    for Pi in np.linspace(0.05, 0.95, 19):
        c = interplay.level_curve(Pi, 1.0, 200)
        R = np.array([r for _, r in c.samples])
        d1 = np.diff(R)
        d2 = np.diff(R, 2)
        t.add(float(max(np.max(d1), -np.min(d2), R[-1], -np.min(R))), {"Pi": Pi})
    return t


def _chk_effectiveness_floor(grid):
    t = _Tracker()
    axis = np.linspace(0.01, 3, 100)
    for R_A in axis:
        for R_B in axis:
            E = interplay.effectiveness_ratio(R_A, R_B)
            viol = 2.0 - E
            if R_A >= R_B and E != 2.0:
                viol = max(viol, abs(E - 2.0))
            P_eq = interplay.equivalent_preallocation(R_A, R_B)
            gap = abs(core.spe_payoff(P_eq, 0.0, R_B).pi_A - core.spe_payoff(0.0, R_A, R_B).pi_A)
            t.add(max(viol, gap), {"R_A": R_A, "R_B": R_B})
    return t


def _chk_investment_optimality(grid):
    t = _Tracker()
    rng = grid.rng(10)
    for M_A, c_A, R_B in zip(rng.uniform(0.1, 3, 200), rng.uniform(0.05, 2, 200),
                             rng.uniform(0.1, 3, 200)):
        plan = interplay.optimal_investment(M_A, c_A, R_B)
        Ps = np.linspace(0, M_A / c_A, 200)
        best = max(core.spe_payoff(P, max(M_A - c_A * P, 0.0), R_B).pi_A for P in Ps)
        t.add(best - plan.pi_opt, {"M_A": M_A, "c_A": c_A, "R_B": R_B})
    return t


def _chk_no_pure_preallocation(grid):
    t = _Tracker()
    rng = grid.rng(11)
    for M_A, c_A, R_B in rng.uniform(0.01, 3, (1000, 3)):
        plan = interplay.optimal_investment(M_A, c_A, R_B)
        t.add(1.0 if plan.P_star >= M_A / c_A else -plan.R_A_star,
              {"M_A": M_A, "c_A": c_A, "R_B": R_B})
    return t


def _chk_investment_discontinuity(grid):
    t = _Tracker()
    rng = grid.rng(12)
    for _ in range(100):
        R_B = rng.uniform(0.5, 3)
        M_A = rng.uniform(0.05, 0.95) * R_B
        c = M_A / R_B
        below = interplay.optimal_investment(M_A, c * (1 - 1e-9), R_B).P_star
        above = interplay.optimal_investment(M_A, c * (1 + 1e-9), R_B).P_star
        # the jump must stay finite-sized as the cost window shrinks
        t.add(-(below - above), {"M_A": M_A, "R_B": R_B})
    return t


def _follower_boundaries(p_A, R_A, params):
    pts = [p_A]
    M_B, c_B = params.M_B, params.c_B
    cap = params.cap_B
    if R_A + p_A < cap <= R_A / c_B + p_A:
        pts.append(stk.pB_1B(p_A, R_A, M_B, c_B))
    f0 = R_A + math.sqrt(R_A * (R_A + 2 * p_A))
    if R_A / c_B + p_A < cap <= (p_A + f0 / 2) / c_B:
        pts.append(stk.pB_1A(p_A, R_A, M_B, c_B))
    roots = stk.roots_r_pm(p_A, R_A, M_B, c_B)
    if roots is not stk.COMPLEX:
        pts.extend(roots)
    return [x for x in pts if 1e-6 < x < cap - 1e-6]


def _chk_follower_continuity(grid):
    t = _Tracker()
    rng = grid.rng(13)
    delta = 1e-10
    for _ in range(200):
        params = random_params(rng)
        p_A = rng.uniform(0, params.cap_A * 0.999)
        R_A = max(params.M_A - params.c_A * p_A, 0.0)
        for x in _follower_boundaries(p_A, R_A, params):
            lo = stk.follower_payoff(p_A, x - delta, params)[0]
            hi = stk.follower_payoff(p_A, x + delta, params)[0]
            t.add(abs(hi - lo), {"params": asdict(params), "p_A": p_A, "p_B": x})
    return t


def _chk_stationarity(grid):
    t = _Tracker()
    rng = grid.rng(14)
    h = 1e-5
    for _ in range(200):
        params = random_params(rng)
        p_A = rng.uniform(0, min(params.cap_A, params.cap_B) * 0.9)
        R_A = max(params.M_A - params.c_A * p_A, 0.0)
        x = stk.hat_pB(p_A, params.M_B, params.c_B)

        def u(pb):
            return stk.u_B_1B(p_A, pb, R_A, params.M_B - params.c_B * pb)

        if not (p_A < x - 2 * h and x + 2 * h < params.cap_B):
            continue
        # five-point stencil: the payoff bends sharply near B's budget cap
        d = (u(x - 2 * h) - 8 * u(x - h) + 8 * u(x + h) - u(x + 2 * h)) / (12 * h)
        t.add(abs(d), {"params": asdict(params), "p_A": p_A})
    return t


def _chk_best_response_dominance(grid):
    t = _Tracker()
    rng = grid.rng(15)
    for _ in range(50):
        params = random_params(rng)
        p_A = rng.uniform(0, params.cap_A)
        R_A = max(params.M_A - params.c_A * p_A, 0.0)
        br = stk.best_response_B(p_A, R_A, params)
        scan = follower_scan(p_A, params)
        t.add(scan.value - br.u_B, {"params": asdict(params), "p_A": p_A})
    return t


def _chk_maxmin_certificate(grid):
    t = _Tracker()
    rng = grid.rng(16)
    for i in range(30):
        params = random_params(rng, case=1 + i % 3)
        out = stk.stackelberg_equilibrium(params)
        scan = leader_scan(params, 500)
        t.add(scan.value - stk.leader_security_payoff(out.p_A_star, params),
              {"params": asdict(params), "case": out.case.value})
    return t


def _chk_threshold_interval(grid):
    t = _Tracker()
    rng = grid.rng(17)
    for R_A, p_A, c_B in zip(rng.uniform(0.01, 3, 1000), rng.uniform(0, 3, 1000),
                             rng.uniform(0.01, 0.99, 1000)):
        h = stk.threshold_h(R_A, p_A, c_B)
        lo = R_A + p_A
        hi = p_A + (R_A + math.sqrt(R_A * (R_A + 2 * p_A))) / 2
        t.add(max(lo - h, h - hi), {"R_A": R_A, "p_A": p_A, "c_B": c_B})
    return t


def _chk_payoff_route_consistency(grid):
    t = _Tracker()
    rng = grid.rng(18)
    for _ in range(2000):
        params = random_params(rng)
        p_A = rng.uniform(0, params.cap_A)
        p_B = rng.uniform(0, params.cap_B)
        R_A = max(params.M_A - params.c_A * p_A, 0.0)
        R_B = max(params.M_B - params.c_B * p_B, 0.0)
        u = stk.follower_payoff(p_A, p_B, params)[0]
        v = stk.follower_payoff_via_spe(p_A, p_B, R_A, R_B)
        t.add(abs(u - v), {"params": asdict(params), "p_A": p_A, "p_B": p_B})
    return t


def _chk_proportional_grid_optimality(grid):
    t = _Tracker()
    rng = grid.rng(19)
    m = grid.resolution
    for _ in range(20):
        cfg, _ = random_instance(rng, n_choices=(2, 3))
        p_best, pi_best = grid_search_preallocation(cfg, grid)
        spe = core.spe_payoff(cfg.P, cfg.R_A, cfg.R_B).pi_A
        dist = float(np.max(np.abs(np.asarray(p_best.p) - np.asarray(cfg.w) * cfg.P)))
        step = cfg.P / m
        t.add(max(pi_best - spe, (dist - step) / max(step, 1e-300) if dist > step * (1 + 1e-9)
                  else -math.inf), _cfg_dict(cfg, p_best))
    return t


def _chk_budget_line_dominance(grid):
    t = _Tracker()
    rng = grid.rng(20)
    for M_A, c_A, R_B in zip(rng.uniform(0.1, 3, 50), rng.uniform(0.05, 2, 50),
                             rng.uniform(0.1, 3, 50)):
        plan = interplay.optimal_investment(M_A, c_A, R_B)
        scan = budget_line_scan(M_A, c_A, R_B, 2000)
        step = M_A / c_A / 1999
        viol = scan.value - plan.pi_opt
        if plan.branch is not interplay.Branch.INDIFFERENT and abs(scan.arg - plan.P_star) > step:
            viol = max(viol, 1.0)
        t.add(viol, {"M_A": M_A, "c_A": c_A, "R_B": R_B})
    return t


def _chk_determinism(grid):
    t = _Tracker()
    for name in ("solver_agreement", "best_response_dominance"):
        a = run_suite([name], grid)[0]
        b = run_suite([name], grid)[0]
        t.add(0.0 if a.to_json() == b.to_json() else 1.0, {"check": name})
    return t


@dataclass(frozen=True)
class Check:
    fn: Callable
    tolerance: float


CHECKS: dict[str, Check] = {
    "constant_sum": Check(_chk_constant_sum, 1e-12),
    "regime_continuity": Check(_chk_regime_continuity, 1e-9),
    "scale_invariance": Check(_chk_scale_invariance, 1e-12),
    "monotonicity": Check(_chk_monotonicity, 1e-12),
    "baseline": Check(_chk_baseline, 0.0),
    "bounds": Check(_chk_bounds, 0.0),
    "residual_certificate": Check(_chk_residual_certificate, 1e-10),
    "solver_agreement": Check(_chk_solver_agreement, 1e-8),
    "partition_order": Check(_chk_partition_order, 0.0),
    "proportional_consistency": Check(_chk_proportional_consistency, 1e-10),
    "case2_boundary": Check(_chk_case2_boundary, 0.0),
    "level_curve_duality": Check(_chk_level_curve_duality, 1e-9),
    "level_curve_branch_continuity": Check(_chk_level_curve_branch_continuity, 1e-12),
    "level_curve_shape": Check(_chk_level_curve_shape, 1e-12),
    "effectiveness_floor": Check(_chk_effectiveness_floor, 1e-9),
    "investment_optimality": Check(_chk_investment_optimality, 1e-9),
    "no_pure_preallocation": Check(_chk_no_pure_preallocation, 0.0),
    "investment_discontinuity": Check(_chk_investment_discontinuity, -1e-3),
    "follower_continuity": Check(_chk_follower_continuity, 1e-8),
    "stationarity": Check(_chk_stationarity, 1e-6),
    "best_response_dominance": Check(_chk_best_response_dominance, 1e-6),
    "maxmin_certificate": Check(_chk_maxmin_certificate, 1e-6),
    "threshold_interval": Check(_chk_threshold_interval, 1e-12),
    "payoff_route_consistency": Check(_chk_payoff_route_consistency, 1e-12),
    "proportional_grid_optimality": Check(_chk_proportional_grid_optimality, 1e-8),
    "budget_line_dominance": Check(_chk_budget_line_dominance, 1e-8),
    "determinism": Check(_chk_determinism, 0.0),
}


def run_check(name: str, grid: GridSpec | None = None) -> VerificationReport:
    if name not in CHECKS:
        raise UnknownCheck(name)
    grid = grid or GridSpec()
    chk = CHECKS[name]
    tr = chk.fn(grid)
    worst = tr.worst if tr.count else 0.0
    passed = bool(tr.count == 0 or worst <= chk.tolerance)
    return VerificationReport(name, tr.count, float(worst), passed, tr.worst_input, chk.tolerance)


def run_suite(checks=None, grid: GridSpec | None = None) -> list[VerificationReport]:
    """Run the named checks (all registered checks when ``checks`` is None)."""
    names = list(CHECKS) if checks is None else list(checks)
    for n in names:
        if n not in CHECKS:
            raise UnknownCheck(n)
    return [run_check(n, grid) for n in names]


def all_passed(reports) -> bool:
    return all(r.passed for r in reports)
