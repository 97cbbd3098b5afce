"""Picard iteration to the best proximity pair, with the geometric gap envelope.

The gaps d(x_n, x_{n+1}) approach 2 from above. For an eta certified by the
orbital check they stay below 2 + eta^n (S0 - 2), where S0 is the orbital
supremum of the first two iterates.
"""
import numpy as np

from proxima import SolveOptions, builtin_problem, gap_bound_check, iterate, multi_start_check

problem = builtin_problem("paper-example")
T = problem.map
seed = problem.seeds[0]

report = iterate(T, seed, SolveOptions(record_trace=True, min_iter=40), dist=2.0)
print(f"converged={report.converged} after {report.iterations} iterations")
print(f"best proximity point {report.bpp_omega}, image {report.bpp_delta}")
print(f"residuals: |d - dist| {report.residual_bpp:.2e}, d(x, T^2 x) {report.residual_fp2:.2e}")

check = gap_bound_check(report, T, eta=0.95)
n = np.arange(len(report.gap_sequence))
excess = np.asarray(report.gap_sequence) - 2.0
envelope = 0.95 ** n * (check.s0 - 2.0)
print(f"\nS0 = {check.s0:.12f}; envelope holds: {check.ok}")
for k in (0, 1, 2, 5, 10, 20):
    print(f"  n={k:2d}  gap-2 = {excess[k]:.3e}   envelope = {envelope[k]:.3e}")

bad = gap_bound_check(report, T, eta=0.005)
print(f"with eta=0.005 the envelope first fails at n={bad.first_violation}")

# Every omega seed leads to the same limit.
verdict = multi_start_check(T, problem.omega.sample(11), dist=2.0)
print(f"\nmulti-start over 11 seeds: {verdict.status}, limit {verdict.limit}")
