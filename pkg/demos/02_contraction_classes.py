"""Which contraction inequality does the example map satisfy?

The plain cyclic inequality fails for every eta, because the corner pair
(-1,-1/2), (1,-1/2) sits at distance exactly 2 while its images do not.
The Suzuki and orbital forms put a larger term on the right and hold.
"""
from proxima import builtin_problem, estimate_min_eta, orbital_sup, verify

problem = builtin_problem("paper-example")
T = problem.map

for cls in ("cyclic", "suzuki", "orbital"):
    v = verify(T, cls, 0.95, density=11, depth=32, dist=2.0)
    print(f"{cls:8s} eta=0.95  holds={v.holds!s:5s}  worst margin {v.worst_margin:+.3e}")
    a, b = v.witness
    print(f"          binding pair {a}, {b}: lhs {v.witness_lhs:.10f}, rhs {v.witness_rhs:.10f}")

s = orbital_sup(T, problem.space.point(-1, -0.5), problem.space.point(1, -0.5), depth=16)
print(f"\norbital sup at the corner pair: {s.value:.10f} at {s.attained_at}, "
      f"depth used {s.depth_used}, converged {s.converged}")

# Smallest eta that works on the grid, per class. None means no eta < 1 works.
for cls in ("cyclic", "suzuki", "orbital"):
    print(f"min eta on the 11x11 grid, {cls:8s}: {estimate_min_eta(T, cls, dist=2.0)}")
