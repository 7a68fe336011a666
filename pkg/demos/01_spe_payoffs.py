"""Subgame-perfect payoffs when A can pre-allocate.

Run with ``python demos/01_spe_payoffs.py``.
"""
import numpy as np

from lotto_lab import core, hart_baseline, spe_payoff

# With no pre-allocation the game is the ordinary General Lotto game.
for R_A in (0.25, 0.5, 1.0, 2.0):
    print(f"R_A={R_A:4}  P=0 payoff {spe_payoff(0.0, R_A, 1.0).pi_A:.4f}"
          f"  standard game {hart_baseline(R_A, 1.0):.4f}")

# Payoff as pre-allocation grows, for a few real-time budgets (R_B = 1).
Ps = np.linspace(0, 3, 13)
print("\n   P  " + "".join(f"  R_A={r:<5}" for r in (0.0, 0.25, 0.5, 1.0)))
for P in Ps:
    row = [spe_payoff(P, r, 1.0).pi_A for r in (0.0, 0.25, 0.5, 1.0)]
    print(f"{P:5.2f} " + "".join(f"  {v:9.4f}" for v in row))

# The R_A = 0.5 curve is convex while B can overwhelm every battlefield
# (Case2) and concave afterwards.  Find where the regime changes.
fine = np.linspace(0, 3, 3001)
tags = [core.classify_regime(P, 0.5, 1.0).tag for P in fine]
switch = next(P for P, t in zip(fine, tags) if t is core.Regime.CASE1)
print(f"\nR_A=0.5 leaves Case2 at P ~ {switch:.3f}")
vals = np.array([spe_payoff(P, 0.5, 1.0).pi_A for P in fine])
curv = np.diff(vals, 2)
print("second differences before/after:", curv[10], curv[-10])

# Regime map on a coarse grid: 2 = Case2, 1 = Case1, 0 = no real-time budget.
code = {core.Regime.CASE2: "2", core.Regime.CASE1: "1", core.Regime.CASE3_ZERO_REAL_TIME: "0"}
print("\nregime map, rows R_A from 1.5 down to 0, columns P from 0 to 3 (R_B = 1)")
for R_A in np.linspace(1.5, 0, 11):
    print("".join(code[core.classify_regime(P, R_A, 1.0).tag] for P in np.linspace(0, 3, 41)))
