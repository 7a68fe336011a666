"""Both players buy pre-allocation; A moves first.

A has M_A = 0.5 at cost 0.2, B pays 0.5 per unit.  Sweep B's budget.
"""
import numpy as np

from lotto_lab import MonetaryParams, best_response_B, stackelberg_equilibrium

MB = np.linspace(0.01, 3, 300)
outs = [stackelberg_equilibrium(MonetaryParams(0.5, 0.2, m, 0.5)) for m in MB]
uB = np.array([o.u_B for o in outs])

for m, o in list(zip(MB, outs))[::25]:
    print(f"M_B={m:5.2f}  p_A*={o.p_A_star:6.3f}  p_B*={o.p_B_star:6.3f}"
          f"  u_B={o.u_B:.4f}  {o.case.value}")

# B's payoff jumps once, where the two purchasing capacities meet
# (M_B / c_B == M_A / c_A, i.e. M_B = 1.25).
i = int(np.argmax(np.abs(np.diff(uB))))
print(f"\nlargest step between M_B={MB[i]:.2f} and {MB[i + 1]:.2f}: {uB[i + 1] - uB[i]:+.4f}")
print("next largest:", np.sort(np.abs(np.diff(uB)))[-2])

# Below the jump, A buys just enough that B prefers not to respond.
p = MonetaryParams(0.5, 0.2, 1.0, 0.5)
o = stackelberg_equilibrium(p)
br = best_response_B(o.p_A_star, p.M_A - p.c_A * o.p_A_star, p)
print(f"\nM_B=1: A buys {o.p_A_star:.4f} (indifference point {o.p_A_dagger:.4f}),"
      f" B responds with {br.p_B}")
