"""What happens when A pre-allocates unevenly.

The stage-2 equilibrium is parameterized by two multipliers.  Battlefields
with a heavy pre-allocation relative to their value fall in one group,
lighter ones in the other.
"""
import numpy as np

from lotto_lab import GameConfig, GridSpec, PreAllocation, grid_search_preallocation
from lotto_lab import spe_payoff, stage2_payoff
from lotto_lab.favoritism import solve_numeric, solve_partition_closed

cfg = GameConfig(w=(0.5, 0.5), P=1.0, R_A=0.7, R_B=1.2)
for p in [(0.5, 0.5), (0.7, 0.3), (0.9, 0.1), (1.0, 0.0)]:
    pa = PreAllocation(p, 1.0)
    out = stage2_payoff(pa, cfg)
    k = out.kappa
    print(f"p={p}  pi_A={out.pi_A:.5f}  kappa=({k.kappa_A:.4f}, {k.kappa_B:.4f})"
          f"  B1={k.partition_B1} B2={k.partition_B2}")
print("proportional benchmark", spe_payoff(1.0, 0.7, 1.2).pi_A)

# Both solvers should land on the same multipliers.
pa = PreAllocation((0.6, 0.3, 0.1), 1.0)
cfg3 = GameConfig(w=(0.2, 0.3, 0.5), P=1.0, R_A=0.5, R_B=1.0)
a = solve_partition_closed(pa, cfg3)
b = solve_numeric(pa, cfg3)
print("\nclosed form", a.kappa_A, a.kappa_B, "conceded", a.conceded)
print("numeric    ", b.kappa_A, b.kappa_B)

# Battlefield 0 carries more than B would ever spend there, so B gives it up.
print("conceded ratio p/w =", 0.6 / 0.2, "> kappa_B =", a.kappa_B)

# A brute-force search over the simplex finds nothing better than w * P.
best, pi = grid_search_preallocation(cfg3, GridSpec(resolution=30))
print("\ngrid best", np.round(best.p, 4), pi)
print("w * P    ", np.asarray(cfg3.w) * cfg3.P, spe_payoff(1.0, 0.5, 1.0).pi_A)
