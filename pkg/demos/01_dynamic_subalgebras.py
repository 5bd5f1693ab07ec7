"""Dynamic subalgebra decomposition of Lie algebra endomorphisms.

Walks through the seven dynamic subalgebras (g_phi, k_phi, g+, g0, g-,
g+'0, g-'0) for a hyperbolic toral map and for a diagonal automorphism of
the Heisenberg algebra, and checks the bracket grading and growth bounds.
"""

import numpy as np

from lieentropy import (
    Endomorphism,
    LieAlgebra,
    check_grading,
    check_growth_bounds,
    check_homomorphism,
    dynamic_subalgebras,
)

# --- the cat map on the abelian algebra of the 2-torus -------------------

abelian2 = LieAlgebra.from_brackets(2, [])
cat = Endomorphism.from_rows(abelian2, [[2, 1], [1, 1]])

decomp = dynamic_subalgebras(abelian2, cat)
print("cat map on R^2 (abelian):")
for cls in decomp.classes:
    print(f"  eigenvalue {cls.value:.6g}, modulus {cls.modulus:.6f}, dim {cls.multiplicity}")
print(f"  g+ dim {decomp.g_plus.dim}, g0 dim {decomp.g_zero.dim}, g- dim {decomp.g_minus.dim}")
print(f"  g_phi + k_phi = {decomp.g_phi.dim} + {decomp.k_phi.dim} = {abelian2.dim}")

# --- Heisenberg algebra: [e1, e2] = e3 ------------------------------------

h3 = LieAlgebra.from_brackets(3, [(0, 1, 2, 1)])
phi = Endomorphism.from_rows(h3, [[2, 0, 0], [0, "1/2", 0], [0, 0, 1]])
assert check_homomorphism(h3, phi), "diag(2, 1/2, 1) must preserve [e1,e2]=e3"

decomp = dynamic_subalgebras(h3, phi)
print("\ndiag(2, 1/2, 1) on the Heisenberg algebra:")
print(f"  g+ dim {decomp.g_plus.dim}  (span of e1, the expanded direction)")
print(f"  g- dim {decomp.g_minus.dim}  (span of e2, the contracted direction)")
print(f"  g0 dim {decomp.g_zero.dim}  (span of the center e3)")

grading = check_grading(h3, decomp)
print(f"  grading [g_a, g_b] in g_ab: {'OK' if grading else grading.violations}")

growth = check_growth_bounds(phi, decomp)
print(f"  growth bounds: c = {growth.c:.4g}, mu = {growth.mu:.4f}, "
      f"violations = {len(growth.violations)}")

# --- a non-homomorphism is rejected ---------------------------------------

bad = Endomorphism.from_rows(h3, [[1, 0, 0], [0, 1, 0], [0, 0, 2]])
report = check_homomorphism(h3, bad)
print(f"\nscaling only the center: homomorphism check -> {bool(report)} "
      f"({len(report.violations)} violating pair(s))")
