"""Stage-2 General Lotto game with favoritism for a fixed pre-allocation.

The equilibrium is parameterized by a pair ``(kappa_A, kappa_B)`` solving
the two expected-budget equations.  Each battlefield falls in one of two
branches of ``h_b = min(w_b*kappa_B, w_b*kappa_A + p_b)``:

* B1, ``h_b = w_b*kappa_B`` (A's pre-allocation is large relative to the
  opponent's price level),
* B2, ``h_b = w_b*kappa_A + p_b``.

A battlefield with ``p_b >= w_b*kappa_B`` sits in B1 but is *conceded*: B
spends nothing there and A wins it outright.  The budget terms use positive
parts so these battlefields contribute zero.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import GameConfig, LottoError, PreAllocation, spe_payoff

MEMBERSHIP_RTOL = 1e-9
RESIDUAL_RTOL = 1e-10


class NoConsistentPartition(LottoError):
    pass


class ZeroRealTimeA(LottoError):
    pass


class ConvergenceFailure(LottoError):
    def __init__(self, msg, best_residual=math.inf):
        super().__init__(f"{msg} (best residual {best_residual:.3e})")
        self.best_residual = best_residual


class NumericUnsupported(LottoError):
    pass


class Method(str, enum.Enum):
    CLOSED_FORM = "ClosedFormPartition"
    NUMERIC = "NumericRootFind"


@dataclass(frozen=True)
class KappaSolution:
    kappa_A: float
    kappa_B: float
    partition_B1: tuple[int, ...]
    partition_B2: tuple[int, ...]
    residual_A: float
    residual_B: float
    method: Method
    conceded: tuple[int, ...] = ()


@dataclass(frozen=True)
class Stage2Outcome:
    pi_A: float
    pi_B: float
    kappa: KappaSolution | None


def h_threshold(kappa_A, kappa_B, p_b, w_b):
    return np.minimum(w_b * kappa_B, w_b * kappa_A + p_b)


def _arrays(p: PreAllocation, cfg: GameConfig):
    return np.asarray(p.p, dtype=float), np.asarray(cfg.w, dtype=float)


def _residuals(kA, kB, p, w, R_A, R_B):
    h = np.minimum(w * kB, w * kA + p)
    gap = np.maximum(h - p, 0.0)
    sq = np.maximum(h * h - p * p, 0.0)
    res_A = math.fsum(gap * gap / (2.0 * w * kB)) - R_A
    res_B = math.fsum(sq / (2.0 * w * kA)) - R_B
    return res_A, res_B


def soe_residuals(kappa_A: float, kappa_B: float, p: PreAllocation, cfg: GameConfig):
    """Defects of the two expected-budget equations at ``(kappa_A, kappa_B)``."""
    pa, w = _arrays(p, cfg)
    return _residuals(kappa_A, kappa_B, pa, w, cfg.R_A, cfg.R_B)


def _scale(cfg: GameConfig) -> float:
    return max(1.0, cfg.R_A, cfg.R_B, cfg.P)


def _residual_ok(res_A, res_B, cfg: GameConfig) -> bool:
    s = _scale(cfg)
    return abs(res_A) <= RESIDUAL_RTOL * s and abs(res_B) <= RESIDUAL_RTOL * s


def classify_battlefields(kA, kB, p, w):
    """Split indices into (B1, B2, conceded) at the given multipliers.

    Ties on ``kappa_B - kappa_A == p_b/w_b`` go to B1.
    """
    r = np.asarray(p) / np.asarray(w)
    b1 = tuple(int(i) for i in np.flatnonzero(kB - kA <= r))
    b2 = tuple(int(i) for i in np.flatnonzero(kB - kA > r))
    conceded = tuple(int(i) for i in np.flatnonzero(r > kB))
    return b1, b2, conceded


def _make_solution(kA, kB, p, w, cfg, method):
    res_A, res_B = _residuals(kA, kB, p, w, cfg.R_A, cfg.R_B)
    b1, b2, conceded = classify_battlefields(kA, kB, p, w)
    return KappaSolution(float(kA), float(kB), b1, b2, res_A, res_B, method, conceded)


def _ratio_groups(p, w):
    """Indices grouped by equal p_b/w_b, in descending ratio order."""
    r = p / w
    order = np.argsort(-r, kind="stable")
    groups = []
    for i in order:
        if groups and r[groups[-1][0]] == r[i]:
            groups[-1].append(int(i))
        else:
            groups.append([int(i)])
    return groups


def _candidate_kappas(W1, W2, P1, P2, N1, R_A, R_B):
    """Positive root of the budget system for a fixed B1/B2 split.

    With ``C1 = R_A + P1``, ``C2 = R_B - P2`` and ``N1 = sum_{B1} p^2/w`` the
    system reduces to ``W1 kB^2 + W2 kA^2 = 2 C1 kB - N1 = 2 C2 kA + N1``.
    Eliminating ``kB = (C2 kA + N1)/C1`` leaves a quadratic in ``kA`` whose
    roots have product ``-N1 H1 / D``.
    """
    C1 = R_A + P1
    C2 = R_B - P2
    H1 = C1 * C1 - W1 * N1
    H2 = C2 * C2 + W2 * N1
    D = W1 * C2 * C2 + W2 * C1 * C1
    if D <= 0 or C1 <= 0:
        return None
    disc = H1 * H2
    if disc < 0:
        return None
    kA = (C2 * H1 + C1 * math.sqrt(disc)) / D
    kB = (C2 * kA + N1) / C1
    return kA, kB


def _membership_ok(kA, kB, p, w, b1, b2, conceded, tol):
    r = p / w
    d = kB - kA
    for i in conceded:
        if r[i] < kB - tol:
            return False
    for i in b1:
        if i in conceded:
            continue
        if r[i] < d - tol or r[i] > kB + tol:
            return False
    for i in b2:
        if r[i] > d + tol:
            return False
    return True


def solve_partition_closed(p: PreAllocation, cfg: GameConfig) -> KappaSolution:
    """Closed-form solve by enumerating partitions consistent with the ratio order.

    Battlefields sorted by ``p_b/w_b`` descending form three contiguous
    blocks: conceded, B1 and B2.  Candidates with no conceded block are
    tried first.  A candidate is accepted only when its multipliers are
    positive, membership holds within tolerance and the residual
    certificate passes.
    """
    if cfg.R_A == 0:
        raise ZeroRealTimeA("closed forms divide by R_A; use the zero real-time formula")
    pa, w = _arrays(p, cfg)
    groups = _ratio_groups(pa, w)
    g = len(groups)
    tol = MEMBERSHIP_RTOL * max(1.0, cfg.P, cfg.R_A, cfg.R_B)
    for k0 in range(g):
        for k1 in range(k0, g + 1):
            conceded = [i for grp in groups[:k0] for i in grp]
            b1 = [i for grp in groups[k0:k1] for i in grp]
            b2 = [i for grp in groups[k1:] for i in grp]
            active_b1 = np.array(b1, dtype=int)
            active_b2 = np.array(b2, dtype=int)
            W1 = math.fsum(w[active_b1]) if b1 else 0.0
            W2 = math.fsum(w[active_b2]) if b2 else 0.0
            P1 = math.fsum(pa[active_b1]) if b1 else 0.0
            P2 = math.fsum(pa[active_b2]) if b2 else 0.0
            N1 = math.fsum(pa[active_b1] ** 2 / w[active_b1]) if b1 else 0.0
            cand = _candidate_kappas(W1, W2, P1, P2, N1, cfg.R_A, cfg.R_B)
            if cand is None:
                continue
            kA, kB = cand
            if not (kA > 0 and kB > 0 and math.isfinite(kA) and math.isfinite(kB)):
                continue
            if not _membership_ok(kA, kB, pa, w, b1 + conceded, b2, conceded, tol):
                continue
            sol = _make_solution(kA, kB, pa, w, cfg, Method.CLOSED_FORM)
            if _residual_ok(sol.residual_A, sol.residual_B, cfg):
                return sol
    raise NoConsistentPartition(f"no partition passed for p={p.p}, cfg={cfg}")


def _jacobian(kA, kB, p, w):
    """Jacobian of the residuals w.r.t. (log kA, log kB)."""
    b1 = (w * kB <= w * kA + p) & (p < w * kB)
    b2 = w * kB > w * kA + p
    dA_dkA = np.sum(np.where(b2, w * kA / kB, 0.0))
    dA_dkB = np.sum(np.where(b1, w / 2 - p * p / (2 * w * kB * kB), 0.0)
                    + np.where(b2, -w * kA * kA / (2 * kB * kB), 0.0))
    dB_dkA = np.sum(np.where(b1, -(w * w * kB * kB - p * p) / (2 * w * kA * kA), 0.0)
                    + np.where(b2, w / 2, 0.0))
    dB_dkB = np.sum(np.where(b1, w * kB / kA, 0.0))
    return np.array([[dA_dkA * kA, dA_dkB * kB], [dB_dkA * kA, dB_dkB * kB]])


def _newton(x0, p, w, R_A, R_B, max_iter=100):
    """Damped Newton in log-coordinates; returns (kA, kB, residual_norm)."""
    x = np.log(np.asarray(x0, dtype=float))
    scale = np.array([max(1.0, R_A), max(1.0, R_B)])

    def fnorm(x):
        r = np.array(_residuals(math.exp(x[0]), math.exp(x[1]), p, w, R_A, R_B))
        return r, float(np.max(np.abs(r) / scale))

    r, nrm = fnorm(x)
    for _ in range(max_iter):
        if nrm <= 1e-13:
            break
        J = _jacobian(math.exp(x[0]), math.exp(x[1]), p, w)
        try:
            step = np.linalg.solve(J, -r)
        except np.linalg.LinAlgError:
            step = -np.linalg.lstsq(J, r, rcond=None)[0]
        if not np.all(np.isfinite(step)):
            break
        # cap log-steps to keep the multipliers in a sane range
        m = np.max(np.abs(step))
        if m > 2.0:
            step *= 2.0 / m
        t = 1.0
        while t > 1e-8:
            r_new, n_new = fnorm(x + t * step)
            if n_new < nrm:
                break
            t *= 0.5
        else:
            break
        x = x + t * step
        r, nrm = r_new, n_new
    return math.exp(x[0]), math.exp(x[1]), nrm


def _inner_kappa_A(kB, p, w, R_A, R_B):
    """kappa_A solving the A-budget equation at fixed kappa_B, or None.

    The A-residual is nondecreasing in kappa_A with value -R_A at 0 and a
    plateau once every battlefield has switched to B1.
    """
    from scipy.optimize import bisect

    def f(kA):
        return _residuals(kA, kB, p, w, R_A, R_B)[0]

    hi = float(np.max(np.maximum(kB - p / w, 0.0))) + 1e-300
    if f(hi) <= 0:
        return None
    return bisect(f, 0.0, hi, xtol=1e-15 * max(1.0, hi), rtol=1e-15, maxiter=500)


def _plateau_root(p, w, R_A, R_B):
    """Root with every active battlefield in B1.

    There the A-residual ignores kappa_A, so kappa_B solves the A-equation
    alone and kappa_A follows from the (decreasing) B-residual.
    """
    from scipy.optimize import bisect

    def plateau(kB):
        gap = np.maximum(w * kB - p, 0.0)
        return math.fsum(gap * gap / (2.0 * w * kB)) - R_A

    hi = max(1.0, R_A, float(np.max(p / w)))
    while plateau(hi) <= 0:
        hi *= 2.0
    kB = bisect(plateau, 0.0 + 1e-300, hi, xtol=1e-15 * hi, rtol=1e-15, maxiter=500)
    lo = max(float(np.max(kB - p / w)), 0.0) + 1e-300

    def fB(kA):
        return _residuals(kA, kB, p, w, R_A, R_B)[1]

    if fB(lo) < 0:
        return None
    top = max(lo, 1.0) * 2.0
    while fB(top) > 0:
        top *= 2.0
    kA = bisect(fB, lo, top, xtol=1e-15 * top, rtol=1e-15, maxiter=500)
    return kA, kB


def _nested_bisection(p, w, R_A, R_B, samples=400):
    """Outer scan and bisection on kappa_B, inner bisection on kappa_A."""
    from scipy.optimize import bisect

    def g(kB):
        kA = _inner_kappa_A(kB, p, w, R_A, R_B)
        if kA is None or kA <= 0:
            return None, None
        return _residuals(kA, kB, p, w, R_A, R_B)[1], kA

    scale = max(1.0, R_A, R_B, float(np.sum(p)))
    grid = np.geomspace(1e-8 * scale, 1e8 * scale, samples)
    prev = None
    for kB in grid:
        val, _ = g(kB)
        if val is None:
            continue
        if prev is None and val > 0:
            # B-residual already positive at the edge of the feasible
            # kappa_B range: the root lies on the all-B1 plateau
            root = _plateau_root(p, w, R_A, R_B)
            if root is not None:
                return root
        if prev is not None and prev[1] < 0 <= val:
            lo, hi = prev[0], kB
            kB_star = bisect(lambda k: g(k)[0], lo, hi, xtol=1e-15 * hi, rtol=1e-15, maxiter=500)
            return g(kB_star)[1], kB_star
        prev = (kB, val)
    return None


def solve_numeric(p: PreAllocation, cfg: GameConfig) -> KappaSolution:
    """Independent numeric solve of the budget system (Newton, then bisection)."""
    if cfg.R_A <= 0 or cfg.R_B <= 0:
        raise ZeroRealTimeA("numeric solve needs R_A > 0 and R_B > 0")
    pa, w = _arrays(p, cfg)
    P, R_A, R_B = float(np.sum(pa)), cfg.R_A, cfg.R_B
    N = float(np.sum(pa * pa / w))
    starts = [(2.0 * R_A, 2.0 * R_B)]
    if (P + R_A) ** 2 > N:
        kB = P + R_A + math.sqrt((P + R_A) ** 2 - N)
        kA = ((P + R_A) * kB - N) / R_B
        if kA > 0:
            starts.append((kA, kB))
    if R_B > P:
        starts.append((2.0 * (R_B - P), 2.0 * (R_B - P) ** 2 / R_A))
    starts.append((R_A + R_B + P, R_A + R_B + P))

    best = math.inf
    for x0 in starts:
        kA, kB, nrm = _newton(x0, pa, w, R_A, R_B)
        best = min(best, nrm)
        sol = _make_solution(kA, kB, pa, w, cfg, Method.NUMERIC)
        if _residual_ok(sol.residual_A, sol.residual_B, cfg):
            return sol
    found = _nested_bisection(pa, w, R_A, R_B)
    if found is not None:
        kA, kB = found
        # polish the bracketed root
        kA2, kB2, _ = _newton((kA, kB), pa, w, R_A, R_B, max_iter=20)
        for a, b in ((kA2, kB2), (kA, kB)):
            sol = _make_solution(a, b, pa, w, cfg, Method.NUMERIC)
            if _residual_ok(sol.residual_A, sol.residual_B, cfg):
                return sol
    raise ConvergenceFailure(f"no start converged for p={p.p}", best)


def payoff_from_kappa(kA: float, kB: float, p, w) -> float:
    """Player A's equilibrium payoff for given multipliers."""
    p = np.asarray(p, dtype=float)
    w = np.asarray(w, dtype=float)
    b1 = kB - kA <= p / w
    lost = np.maximum(1.0 - (p / (w * kB)) ** 2, 0.0)
    term1 = w * (1.0 - kB / (2.0 * kA) * lost)
    term2 = w * kA / (2.0 * kB)
    return math.fsum(np.where(b1, term1, term2))


def stage2_payoff(p: PreAllocation, cfg: GameConfig) -> Stage2Outcome:
    if cfg.R_A == 0:
        pa = np.asarray(p.p)
        if not np.allclose(pa, np.asarray(cfg.w) * p.P, rtol=1e-12, atol=1e-12):
            raise NumericUnsupported("R_A = 0 is only supported for proportional pre-allocations")
        res = spe_payoff(p.P, 0.0, cfg.R_B, cfg.w)
        return Stage2Outcome(res.pi_A, res.pi_B, None)
    try:
        sol = solve_partition_closed(p, cfg)
    except NoConsistentPartition:
        sol = solve_numeric(p, cfg)
    pi_A = payoff_from_kappa(sol.kappa_A, sol.kappa_B, p.p, cfg.w)
    return Stage2Outcome(pi_A, 1.0 - pi_A, sol)
