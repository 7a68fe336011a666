"""Pre-allocated vs real-time resources, and how to spend a budget on them."""
import math

import numpy as np

from lotto_lab import effectiveness_ratio, equivalent_preallocation, level_curve
from lotto_lab import optimal_investment, spe_payoff
from lotto_lab.oracle import budget_line_scan

# Level curves: (P, R_A) pairs giving the same payoff against R_B = 1.
for Pi in (0.25, 0.5, 0.75):
    c = level_curve(Pi, 1.0, 6)
    print(f"Pi={Pi}: " + ", ".join(f"({P:.2f}, {R:.3f})" for P, R in c.samples))

# A unit of real-time budget is worth at least two of pre-allocation.
print()
for R_A in (0.1, 0.5, 1.0, 2.0):
    print(f"R_A={R_A}: ratio {effectiveness_ratio(R_A, 1.0):.3f},"
          f" same payoff as P={equivalent_preallocation(R_A, 1.0):.3f} alone")

# Buying pre-allocation at cost c_A per unit out of a budget M_A = 4/3.
M_A = 4 / 3
print("\n  c_A    P*      R_A*    payoff  branch")
for c in (0.1, 0.3, 1 - 1 / math.sqrt(3), 0.6, 0.9, 1.0, 1.333):
    plan = optimal_investment(M_A, c, 1.0)
    print(f"{c:6.3f} {plan.P_star:7.4f} {plan.R_A_star:7.4f} {plan.pi_opt:7.4f}  {plan.branch.value}")

# Cross-check one point against a plain scan of the budget line.
scan = budget_line_scan(M_A, 0.423, 1.0, 4001)
plan = optimal_investment(M_A, 0.423, 1.0)
print(f"\nscan argmax {scan.arg:.4f} ({scan.value:.6f}) vs closed form "
      f"{plan.P_star:.4f} ({plan.pi_opt:.6f})")

# When M_A < R_B the optimal P* drops to zero abruptly as c_A crosses M_A/R_B.
M_A = 0.5
for c in np.linspace(0.45, 0.55, 5):
    plan = optimal_investment(M_A, c, 1.0)
    print(f"M_A=0.5 c_A={c:.3f} -> P*={plan.P_star:.4f} payoff {plan.pi_opt:.4f}")
print("payoff at P=0:", spe_payoff(0.0, 0.5, 1.0).pi_A)
