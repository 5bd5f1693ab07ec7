"""Entropy estimation on the one-point compactification of R^d.

A linear contraction x -> x/2 is not defined on a compact space, but it is
proper, so it extends to the sphere compactification with infinity as a
second fixed point.  Its topological entropy is zero, and the estimator
agrees.  A bounded (non-proper) map is rejected.
"""

import numpy as np

from lieentropy import (
    EstimatorParams,
    ImproperMapError,
    compactify,
    dynamic_distance,
    estimate_entropy,
)

# --- the contraction x -> x/2 on R, compactified --------------------------

half = compactify(lambda pts: pts / 2.0, dim=1, label="x -> x/2")
params = EstimatorParams(n_max=12, eps_list=(0.1, 0.05), grid_density=4096)
result = estimate_entropy(half, params)
print(f"x -> x/2 on S^1 = R u {{inf}}: estimate {result.estimate:.6f} "
      f"(reliable: {result.reliable})")

# The dynamic metric sees two nearby points converge to the origin:
a, b = np.array([3.0]), np.array([3.5])
for n in (0, 2, 8):
    print(f"  dynamic distance at depth {n}: {dynamic_distance(half, a, b, n):.6f}")

# --- a planar proper map ---------------------------------------------------

double = compactify(lambda pts: 2.0 * pts, dim=2, label="x -> 2x")
result2 = estimate_entropy(double, EstimatorParams(n_max=10, eps_list=(0.1,), grid_density=128))
print(f"\nx -> 2x on S^2: estimate {result2.estimate:.6f}")
print("  (expansion toward infinity: every orbit except 0 leaves each compact set,")
print("   and the compactified map has zero entropy like its inverse contraction)")

# --- bounded maps are not proper and are rejected --------------------------

try:
    compactify(lambda pts: np.tanh(pts), dim=1, label="tanh")
except ImproperMapError as exc:
    print(f"\ntanh rejected as expected: {exc}")
