"""Concrete, finitely-describable group models over a Lie algebra.

The group-level topology facts the reduction theorems need (simple
connectedness, finite semisimple center, ...) are declared flags, validated
against the algebra where that is decidable.  The lattice data is what
makes toral components computable: the toral block is the integer action of
the endomorphism on the lattice generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
import sympy
from sympy import Matrix, Rational

from . import rational as rat
from .algebra import LieAlgebra, ValidationReport, center_exact, is_solvable, radical_exact
from .spectral import Endomorphism, SpectralDecomposition
from .subspace import Subspace, span, zero_subspace

MODELS = ("torus", "simply_connected", "central_quotient", "radical_levi_product")

DEFAULT_FLAGS = {
    "simply_connected": False,
    "solvable": False,
    "finite_semisimple_center": False,
    "harish_chandra_reductive": False,
    "g_zero_compact": False,
}


@dataclass(frozen=True)
class GroupSpec:
    algebra: LieAlgebra
    model: str
    lattice: Optional[tuple] = None  # rows of Fractions: lattice generators in algebra coords
    flags: dict = field(default_factory=dict)
    declared_levi: Optional[Subspace] = None
    name: str = ""

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown group model {self.model!r}")
        merged = dict(DEFAULT_FLAGS)
        merged.update(self.flags)
        object.__setattr__(self, "flags", merged)
        if self.lattice is not None:
            frozen = tuple(tuple(Fraction(x) for x in row) for row in self.lattice)
            object.__setattr__(self, "lattice", frozen)

    def lattice_matrix(self) -> Optional[Matrix]:
        if self.lattice is None:
            return None
        return Matrix([[Rational(x.numerator, x.denominator) for x in row] for row in self.lattice])

    def lattice_array(self) -> Optional[np.ndarray]:
        if self.lattice is None:
            return None
        return np.array([[float(x) for x in row] for row in self.lattice])


@dataclass(frozen=True)
class TorusBlock:
    rank: int
    induced_matrix: np.ndarray  # (rank, rank) integer entries

    def __post_init__(self):
        m = np.asarray(self.induced_matrix, dtype=np.int64).reshape(self.rank, self.rank)
        object.__setattr__(self, "induced_matrix", m)


def induced_lattice_matrix(spec: GroupSpec, phi: Endomorphism, tol: float = 1e-9):
    """Integer matrix B with phi(L_i) = sum_j B_ji L_j, or None.

    Generators are rows; phi must map the lattice into itself.
    """
    lat = spec.lattice_array()
    if lat is None or lat.shape[0] == 0:
        return np.zeros((0, 0), dtype=np.int64)
    # solve (rows) B from L phi^T = B L  =>  each image row in row span of L
    images = lat @ phi.matrix.T
    coeffs, resid, *_ = np.linalg.lstsq(lat.T, images.T, rcond=None)
    recon = lat.T @ coeffs
    if not np.allclose(recon, images.T, atol=tol * max(1.0, np.abs(images).max()), rtol=0):
        return None
    b = coeffs.T  # rows: image row i = sum_j b[i, j] row j
    rounded = np.rint(b)
    if not np.allclose(b, rounded, atol=1e-6, rtol=0):
        return None
    # exact confirmation with the rounded matrix
    if not np.allclose(rounded @ lat, images, atol=tol * max(1.0, np.abs(images).max()), rtol=0):
        return None
    return rounded.astype(np.int64)


def validate_group_spec(spec: GroupSpec, phi: Optional[Endomorphism] = None) -> ValidationReport:
    bad = []
    alg = spec.algebra
    lat = spec.lattice_matrix()
    if spec.model == "torus":
        if not alg.is_abelian:
            bad.append(("torus", "algebra is not abelian"))
        if lat is None or rat.rowspace_rank(lat) != alg.dim:
            bad.append(("torus", "lattice does not span the algebra"))
    if spec.model == "central_quotient":
        if lat is None or lat.rows == 0:
            bad.append(("central_quotient", "missing lattice"))
        else:
            center = center_exact(alg)
            stacked = center.col_join(lat)
            if stacked.rank() != center.rank():
                bad.append(("central_quotient", "lattice is not contained in the center"))
    if spec.model == "simply_connected" and not spec.flags["simply_connected"]:
        bad.append(("simply_connected", "model requires the simply_connected flag"))
    if spec.flags["solvable"] != is_solvable(alg):
        bad.append(("flags", "solvable flag inconsistent with the algebra"))
    if phi is not None and spec.lattice is not None and len(spec.lattice):
        b = induced_lattice_matrix(spec, phi)
        if b is None:
            bad.append(("lattice", "endomorphism does not map the lattice into itself"))
        elif b.size and abs(round(float(np.linalg.det(b.astype(float))))) == 0:
            bad.append(("lattice", "induced lattice map is singular"))
    return ValidationReport(valid=not bad, violations=tuple(bad))


def lattice_automorphism(spec: GroupSpec, phi: Endomorphism) -> Optional[bool]:
    """True/False for lattice models; None when there is no lattice."""
    if spec.lattice is None or not len(spec.lattice):
        return None
    b = induced_lattice_matrix(spec, phi)
    if b is None:
        return False
    det = round(float(np.linalg.det(b.astype(float))))
    return abs(det) == 1


def toral_component(spec: GroupSpec, phi: Endomorphism) -> TorusBlock:
    """The greatest compact connected central subgroup, as a lattice block."""
    if spec.model == "simply_connected":
        return TorusBlock(0, np.zeros((0, 0), dtype=np.int64))
    if spec.model in ("torus", "central_quotient", "radical_levi_product"):
        if spec.lattice is None or not len(spec.lattice):
            return TorusBlock(0, np.zeros((0, 0), dtype=np.int64))
        b = induced_lattice_matrix(spec, phi)
        if b is None:
            raise ValueError("endomorphism does not act on the lattice")
        return TorusBlock(len(spec.lattice), b)
    raise ValueError(spec.model)


def radical_toral_component(spec: GroupSpec, phi: Endomorphism) -> TorusBlock:
    """Toral component of the radical factor.

    Lattice generators lying inside the radical define it; for a
    lattice-free radical factor (e.g. a simply connected radical in a
    radical-Levi product) the rank is zero.
    """
    if spec.lattice is None or not len(spec.lattice):
        return TorusBlock(0, np.zeros((0, 0), dtype=np.int64))
    rad = radical_exact(spec.algebra)
    lat = spec.lattice_matrix()
    stacked = rad.col_join(lat)
    if stacked.rank() != rad.rank():
        return TorusBlock(0, np.zeros((0, 0), dtype=np.int64))
    return toral_component(spec, phi)


def unstable_hull_block(block: TorusBlock) -> TorusBlock:
    """Restrict the integer block to the smallest rational invariant subspace
    containing all eigendirections of modulus > 1.

    The hull is the sum of the primary components of the rational
    irreducible factors of the characteristic polynomial that carry at
    least one unstable root; the restriction basis is a saturated integer
    lattice basis, so the restricted matrix is again integral.
    """
    b = block.rank
    if b == 0:
        return block
    m = Matrix(block.induced_matrix.tolist())
    lam = sympy.symbols("lam")
    poly = m.charpoly(lam)
    factors = sympy.factor_list(poly.as_expr())[1]
    retained = []
    for fac, mult in factors:
        coeffs = [float(c) for c in sympy.Poly(fac, lam).all_coeffs()]
        roots = np.roots(coeffs) if len(coeffs) > 1 else np.array([])
        if roots.size and np.any(np.abs(roots) > 1 + 1e-9):
            retained.append((sympy.Poly(fac, lam), mult))
    if not retained:
        return TorusBlock(0, np.zeros((0, 0), dtype=np.int64))
    # complement polynomial: product of the non-retained primary factors
    q = sympy.Poly(1, lam)
    for fac, mult in retained:
        q = q * fac ** mult
    qm = _eval_poly_on_matrix(q, m)
    hull = rat.integer_kernel(qm)  # rows: saturated basis of ker q(B)
    r = hull.rows
    if r == 0:
        return TorusBlock(0, np.zeros((0, 0), dtype=np.int64))
    # restriction: hull_row_i @ B^T = sum_j C_ij hull_row_j
    images = hull * m.T
    sol, params = hull.T.gauss_jordan_solve(images.T)
    if params.rows:
        sol = sol.subs({p: 0 for p in params})
    c = sol.T
    ci = np.array([[int(c[i, j]) for j in range(r)] for i in range(r)], dtype=np.int64)
    return TorusBlock(r, ci)


def _eval_poly_on_matrix(p: sympy.Poly, m: Matrix) -> Matrix:
    acc = sympy.eye(m.rows)
    out = sympy.zeros(m.rows)
    for c in reversed(p.all_coeffs()):
        out = out + c * acc
        acc = m * acc
    return out


def unstable_toral_part(spec: GroupSpec, phi: Endomorphism, decomp: Optional[SpectralDecomposition] = None) -> TorusBlock:
    """T(G)^+ as an integer block: the unstable rational hull inside the
    toral component."""
    return unstable_hull_block(toral_component(spec, phi))


def radical_unstable_toral_part(spec: GroupSpec, phi: Endomorphism) -> TorusBlock:
    return unstable_hull_block(radical_toral_component(spec, phi))


def radical_restriction(spec: GroupSpec, phi: Endomorphism, tol: float = 1e-9):
    """phi restricted to the radical, in an exact basis of the radical.

    Returns (restricted matrix, radical row basis).  Raises if the radical
    is not numerically invariant, which signals bad input.
    """
    rad = radical_exact(spec.algebra)
    r = rad.rows
    if r == 0:
        return np.zeros((0, 0)), rad
    basis = np.array(rad.tolist(), dtype=float)
    images = basis @ phi.matrix.T
    coeffs, *_ = np.linalg.lstsq(basis.T, images.T, rcond=None)
    recon = basis.T @ coeffs
    if not np.allclose(recon, images.T, atol=tol * max(1.0, float(np.abs(images).max())), rtol=0):
        raise ValueError("radical is not invariant under the endomorphism")
    return coeffs.T, rad
