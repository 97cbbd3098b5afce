"""Two vertical segments, the distance between them, and one orbit.

Run with ``python3 demos/01_distance_and_orbits.py``.
"""
import numpy as np

from proxima import builtin_problem, cyclicity_check, orbit, proximal_sets, set_distance

problem = builtin_problem("paper-example")
omega, delta, T = problem.omega, problem.delta, problem.map

# Brute force on a grid, then a bounded scalar refinement from the best grid pair.
d, witness = set_distance(omega, delta, density=101)
print(f"dist(omega, delta) = {d!r}")
print(f"  attained at {witness.a} and {witness.b}")

# Every point of one segment sits exactly 2 away from its horizontal partner,
# so the whole grid is proximal.
near_o, near_d = proximal_sets(omega, delta, density=11)
print(f"proximal grid points: {len(near_o)} in omega, {len(near_d)} in delta")

print("cyclic on the sampled grid:", bool(cyclicity_check(T)))

# The second coordinate is multiplied by -1/2 then -1/3, so it shrinks by 6
# every two steps while the first coordinate flips between -1 and 1.
table = orbit(T, omega.endpoint_a, depth=8)
for k, (side, x) in enumerate(zip(table.side_parity, table.coords)):
    print(f"{k:2d}  {side:5s}  {np.array2string(x, precision=6)}")
ratios = np.abs(table.coords[2::2, 1] / table.coords[:-2:2, 1])
print("two-step shrink factors:", np.round(ratios, 12))
