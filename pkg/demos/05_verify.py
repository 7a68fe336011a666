"""Run every registered brute-force check and print a summary table."""
import time

from lotto_lab.oracle import CHECKS, GridSpec, run_check

grid = GridSpec(resolution=40, seed=0)
for name in CHECKS:
    t = time.perf_counter()
    r = run_check(name, grid)
    flag = "ok  " if r.passed else "FAIL"
    print(f"{flag} {name:30s} n={r.instances_run:6d}  worst={r.max_violation:+.2e}"
          f"  tol={r.tolerance:.0e}  {time.perf_counter() - t:5.2f}s")
