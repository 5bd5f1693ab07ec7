"""Finite-dimensional real Lie algebras from structure constants.

Structure constants are exact rationals; the identities that define the
algebra (antisymmetry, Jacobi, ideal containments, the radical) are checked
in exact arithmetic.  Float views are provided for the spectral side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
import sympy
from sympy import Matrix, Rational

from . import rational as rat
from .subspace import Subspace, span, zero_subspace, full_subspace


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    raise TypeError(f"cannot interpret {x!r} as a rational scalar")


@dataclass(frozen=True)
class LieAlgebra:
    """Lie algebra given by [e_i, e_j] = sum_k c[i][j][k] e_k for i < j."""

    dim: int
    basis_labels: tuple[str, ...]
    # full antisymmetric table, shape (dim, dim, dim) of Fractions
    table: tuple = field(repr=False)

    @classmethod
    def from_brackets(
        cls,
        dim: int,
        brackets: Sequence[tuple],
        basis_labels: Optional[Sequence[str]] = None,
    ) -> "LieAlgebra":
        """Build from sparse triples (i, j, k, coeff) with i < j."""
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        labels = tuple(basis_labels) if basis_labels else tuple(f"e{i+1}" for i in range(dim))
        if len(labels) != dim:
            raise ValueError("need one label per basis vector")
        table = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j, k, c) in brackets:
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise ValueError(f"bracket triple ({i},{j},{k}) out of range for dim {dim}")
            if i == j:
                raise ValueError("diagonal bracket [e_i, e_i] must be zero")
            c = _as_fraction(c)
            table[i][j][k] += c
            table[j][i][k] -= c
        frozen = tuple(tuple(tuple(row) for row in plane) for plane in table)
        return cls(dim=dim, basis_labels=labels, table=frozen)

    # -- bracket ---------------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> list[Fraction]:
        return list(self.table[i][j])

    def bracket(self, X, Y):
        """Bilinear extension of the structure constants.

        Exact when both inputs are rational; float otherwise.
        """
        X = list(X)
        Y = list(Y)
        if len(X) != self.dim or len(Y) != self.dim:
            raise ValueError("vector length does not match algebra dimension")
        exact = all(isinstance(x, (int, Fraction)) for x in X + Y)
        if exact:
            out = [Fraction(0)] * self.dim
            for i, xi in enumerate(X):
                if xi == 0:
                    continue
                for j, yj in enumerate(Y):
                    if yj == 0 or i == j:
                        continue
                    cij = self.table[i][j]
                    for k in range(self.dim):
                        if cij[k]:
                            out[k] += Fraction(xi) * Fraction(yj) * cij[k]
            return out
        t = self.structure_tensor()
        return np.einsum("ijk,i,j->k", t, np.asarray(X, float), np.asarray(Y, float))

    def structure_tensor(self) -> np.ndarray:
        t = np.zeros((self.dim, self.dim, self.dim))
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    t[i, j, k] = float(self.table[i][j][k])
        return t

    def ad(self, X) -> np.ndarray:
        """Matrix of ad_X : Y -> [X, Y] in the algebra basis (float)."""
        t = self.structure_tensor()
        return np.einsum("ijk,i->kj", t, np.asarray([float(x) for x in X]))

    def ad_exact(self, X) -> Matrix:
        """Exact ad_X for a rational vector X."""
        cols = []
        for j in range(self.dim):
            ej = [Fraction(0)] * self.dim
            ej[j] = Fraction(1)
            cols.append(self.bracket(X, ej))
        return Matrix([[Rational(cols[j][k]) for j in range(self.dim)] for k in range(self.dim)])

    @property
    def is_abelian(self) -> bool:
        return all(
            self.table[i][j][k] == 0
            for i in range(self.dim)
            for j in range(self.dim)
            for k in range(self.dim)
        )


# -- validation ---------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple

    def __bool__(self) -> bool:
        return self.valid


def check_jacobi(alg: LieAlgebra) -> ValidationReport:
    """Exhaustive Jacobi check on all basis triples, exact arithmetic."""
    bad = []
    d = alg.dim
    basis = [[Fraction(int(i == m)) for i in range(d)] for m in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            for k in range(j + 1, d):
                s = [Fraction(0)] * d
                for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                    inner = alg.bracket(basis[a], basis[b])
                    outer = alg.bracket(inner, basis[c])
                    s = [x + y for x, y in zip(s, outer)]
                if any(x != 0 for x in s):
                    bad.append((i, j, k, tuple(s)))
    return ValidationReport(valid=not bad, violations=tuple(bad))


def killing_form(alg: LieAlgebra) -> np.ndarray:
    """K(e_i, e_j) = trace(ad e_i . ad e_j); exact values in a float array."""
    exact = killing_form_exact(alg)
    return np.array(exact.tolist(), dtype=float) if alg.dim else np.zeros((0, 0))


def killing_form_exact(alg: LieAlgebra) -> Matrix:
    d = alg.dim
    ads = []
    for i in range(d):
        ei = [Fraction(0)] * d
        ei[i] = Fraction(1)
        ads.append(alg.ad_exact(ei))
    return Matrix(d, d, lambda i, j: (ads[i] * ads[j]).trace())


# -- exact span machinery -----------------------------------------------


def _bracket_span(alg: LieAlgebra, a: Matrix, b: Matrix) -> Matrix:
    """Row basis of span{[x, y] : x in rows(a), y in rows(b)} over Q."""
    rows = []
    for i in range(a.rows):
        x = [Fraction(int(v.p), int(v.q)) for v in a.row(i)]
        for j in range(b.rows):
            y = [Fraction(int(v.p), int(v.q)) for v in b.row(j)]
            w = alg.bracket(x, y)
            if any(c != 0 for c in w):
                rows.append([Rational(c) for c in w])
    if not rows:
        return Matrix(0, alg.dim, [])
    return rat.rowspace_basis(Matrix(rows))


def _full_basis(alg: LieAlgebra) -> Matrix:
    return sympy.eye(alg.dim) if alg.dim else Matrix(0, 0, [])


def derived_series(alg: LieAlgebra) -> list[Matrix]:
    """g ⊇ [g,g] ⊇ ... until stable; each term as an exact row basis."""
    series = [_full_basis(alg)]
    while True:
        cur = series[-1]
        nxt = _bracket_span(alg, cur, cur)
        if nxt.rows == cur.rows:
            break
        series.append(nxt)
        if nxt.rows == 0:
            break
    return series


def lower_central_series(alg: LieAlgebra) -> list[Matrix]:
    series = [_full_basis(alg)]
    g = _full_basis(alg)
    while True:
        cur = series[-1]
        nxt = _bracket_span(alg, g, cur)
        if nxt.rows == cur.rows:
            break
        series.append(nxt)
        if nxt.rows == 0:
            break
    return series


def is_solvable(alg: LieAlgebra) -> bool:
    return derived_series(alg)[-1].rows == 0


def is_nilpotent(alg: LieAlgebra) -> bool:
    return lower_central_series(alg)[-1].rows == 0


def center_exact(alg: LieAlgebra) -> Matrix:
    """{X : [X, e_j] = 0 for all j}, exact row basis."""
    d = alg.dim
    if d == 0:
        return Matrix(0, 0, [])
    rows = []
    for j in range(d):
        for k in range(d):
            rows.append([Rational(alg.table[i][j][k]) for i in range(d)])
    return rat.nullspace_basis(Matrix(rows))


def radical_exact(alg: LieAlgebra) -> Matrix:
    """Maximal solvable ideal via the Cartan criterion.

    rad(g) = {X : K(X, [g,g]) = 0} where K is the Killing form.
    """
    d = alg.dim
    if d == 0:
        return Matrix(0, 0, [])
    g = _full_basis(alg)
    dg = _bracket_span(alg, g, g)
    if dg.rows == 0:
        return _full_basis(alg)  # abelian
    K = killing_form_exact(alg)
    return rat.nullspace_basis(dg * K)


def _to_subspace(alg_dim: int, mat: Matrix) -> Subspace:
    if mat.rows == 0:
        return zero_subspace(alg_dim)
    arr = np.array(mat.tolist(), dtype=float)
    return span(alg_dim, arr)


def radical(alg: LieAlgebra) -> Subspace:
    return _to_subspace(alg.dim, radical_exact(alg))


def _subalgebra_from_rows(alg: LieAlgebra, rows: Matrix) -> LieAlgebra:
    """Induced structure constants on a subalgebra given by an exact row basis."""
    k = rows.rows
    triples = []
    for i in range(k):
        x = [Fraction(int(v.p), int(v.q)) for v in rows.row(i)]
        for j in range(i + 1, k):
            y = [Fraction(int(v.p), int(v.q)) for v in rows.row(j)]
            w = alg.bracket(x, y)
            coeffs = rat.solve_in_rowspace(rows, w)
            if coeffs is None:
                raise ValueError("rows do not span a subalgebra")
            for m in range(k):
                if coeffs[m] != 0:
                    triples.append((i, j, m, Fraction(int(coeffs[m].p), int(coeffs[m].q))))
    return LieAlgebra.from_brackets(k, triples)


def _quotient_algebra(alg: LieAlgebra, ideal: Matrix):
    """Quotient g / ideal; returns (algebra, section rows, projection matrix).

    The section maps quotient basis vectors to complement representatives in
    g; projection sends a vector of g to quotient coordinates.
    """
    d = alg.dim
    if ideal.rows == 0:
        return alg, sympy.eye(d), sympy.eye(d)
    red = rat.rowspace_basis(ideal)
    pivots = red.rref()[1]
    free = [j for j in range(d) if j not in pivots]
    section = Matrix([[Rational(int(j == f)) for j in range(d)] for f in free])
    # projection: coordinates of (x mod ideal) in the complement basis
    stacked = red.col_join(section)  # invertible d x d
    inv = stacked.inv()
    proj = inv[:, red.rows:].T  # rows: quotient coords as functionals on g
    triples = []
    k = len(free)
    for i in range(k):
        x = [Fraction(int(v.p), int(v.q)) for v in section.row(i)]
        for j in range(i + 1, k):
            y = [Fraction(int(v.p), int(v.q)) for v in section.row(j)]
            w = Matrix([Rational(c) for c in alg.bracket(x, y)])
            coeffs = proj * w
            for m in range(k):
                if coeffs[m] != 0:
                    triples.append((i, j, m, Fraction(int(coeffs[m].p), int(coeffs[m].q))))
    qalg = LieAlgebra.from_brackets(k, triples)
    return qalg, section, proj


def _levi_rows(alg: LieAlgebra) -> Optional[Matrix]:
    """Exact Levi complement, lifting through the derived series of the radical."""
    d = alg.dim
    rad_rows = radical_exact(alg)
    if rad_rows.rows == 0:
        return _full_basis(alg)
    if rad_rows.rows == d:
        return Matrix(0, d, [])
    rad_sub = rat.rowspace_basis(rad_rows)
    rad_derived = _bracket_span(alg, rad_sub, rad_sub)
    if rad_derived.rows == 0:
        return _levi_abelian_radical(alg, rad_sub)
    # walk to the last nonzero derived term of the radical: an abelian ideal
    term = rad_derived
    while True:
        nxt = _bracket_span(alg, term, term)
        if nxt.rows == 0:
            break
        term = nxt
    qalg, section, proj = _quotient_algebra(alg, term)
    sub = _levi_rows(qalg)
    if sub is None:
        return None
    # preimage of the quotient Levi: its lift plus the abelian ideal
    lifted = (sub * section).col_join(term)
    lifted = rat.rowspace_basis(lifted)
    host = _subalgebra_from_rows(alg, lifted)
    inner = _levi_rows(host)
    if inner is None:
        return None
    return rat.rowspace_basis(inner * lifted)


def _levi_abelian_radical(alg: LieAlgebra, rad_rows: Matrix) -> Optional[Matrix]:
    """Levi complement when the radical is abelian: a linear problem.

    Seek a correction f: complement -> radical so that x_i + f_i close under
    the bracket with the quotient structure constants.  Because the radical
    is abelian the [f_i, f_j] term vanishes and the conditions are linear.
    """
    d = alg.dim
    qalg, section, proj = _quotient_algebra(alg, rad_rows)
    k = qalg.dim
    r = rad_rows.rows
    # unknowns: f[i][a], i < k quotient index, a < r radical coordinate
    nunk = k * r
    rows_syms = sympy.symbols(f"f0:{nunk}")
    f = [[rows_syms[i * r + a] for a in range(r)] for i in range(k)]

    def lift(i):
        base = [Rational(x) for x in section.row(i)]
        corr = [sum(f[i][a] * rad_rows[a, j] for a in range(r)) for j in range(d)]
        return [base[j] + corr[j] for j in range(d)]

    # brackets are bilinear; expand symbolically over the structure tensor
    eqs = []
    for i in range(k):
        xi = lift(i)
        for j in range(i + 1, k):
            xj = lift(j)
            w = [sympy.S.Zero] * d
            for a in range(d):
                if xi[a] == 0:
                    continue
                for b in range(d):
                    if xj[b] == 0 or a == b:
                        continue
                    cab = alg.table[a][b]
                    for m in range(d):
                        if cab[m]:
                            w[m] += xi[a] * xj[b] * Rational(cab[m])
            # target: sum over quotient structure constants of lifted basis
            target = [sympy.S.Zero] * d
            for m in range(k):
                c = qalg.table[i][j][m]
                if c:
                    xm = lift(m)
                    for t in range(d):
                        target[t] += Rational(c) * xm[t]
            for t in range(d):
                eqs.append(sympy.expand(w[t] - target[t]))
    # the equations contain products f*f only through zero coefficients
    # (radical abelian); drop any residual nonlinear artifacts defensively
    linear_eqs = []
    for e in eqs:
        poly = sympy.Poly(e, *rows_syms) if e != 0 else None
        if poly is None:
            continue
        if poly.total_degree() > 1:
            # quadratic terms should cancel for an abelian radical
            e = sum(
                coeff * sympy.Mul(*[s**p for s, p in zip(rows_syms, mon)])
                for mon, coeff in poly.terms()
                if sum(mon) <= 1
            )
        linear_eqs.append(e)
    sol = sympy.solve(linear_eqs, rows_syms, dict=True)
    if not sol:
        return None
    subst = sol[0]
    assignment = {s: subst.get(s, 0) for s in rows_syms}
    # free symbols in the solution: set to zero
    assignment = {s: (v if not getattr(v, "free_symbols", set()) else v.subs({q: 0 for q in v.free_symbols})) for s, v in assignment.items()}
    rows = []
    for i in range(k):
        vec = [Rational(x) for x in section.row(i)]
        for a in range(r):
            coef = assignment[rows_syms[i * r + a]]
            for j in range(d):
                vec[j] += coef * rad_rows[a, j]
        rows.append(vec)
    return Matrix(rows)


def levi_subalgebra(alg: LieAlgebra, declared: Optional[Subspace] = None) -> Optional[Subspace]:
    """A semisimple complement of the radical, or None if lifting fails."""
    d = alg.dim
    if d == 0:
        return zero_subspace(0)
    if declared is not None and _verify_levi(alg, declared):
        return declared
    rows = _levi_rows(alg)
    if rows is None:
        return None
    sub = _to_subspace(d, rows)
    if not _verify_levi(alg, sub):
        return None
    return sub


def _verify_levi(alg: LieAlgebra, s: Subspace) -> bool:
    rad = radical(alg)
    if s.dim + rad.dim != alg.dim:
        return False
    if s.dim == 0:
        return True
    if not is_subalgebra(alg, s):
        return False
    # Killing form of g restricted to s must be nondegenerate
    K = killing_form(alg)
    b = s.orthonormal()
    restricted = b @ K @ b.T
    sv = np.linalg.svd(restricted, compute_uv=False)
    return bool(sv.size and sv[-1] > 1e-9 * max(sv[0], 1.0))


def is_subalgebra(alg: LieAlgebra, V: Subspace, tol: float | None = None) -> bool:
    """True iff [V, V] ⊆ span(V) within the rank tolerance."""
    if V.ambient_dim != alg.dim:
        raise ValueError("subspace ambient dimension does not match the algebra")
    if V.dim == 0:
        return True
    t = alg.structure_tensor()
    b = V.basis
    brackets = np.einsum("ijk,ai,bj->abk", t, b, b).reshape(-1, alg.dim)
    return V.contains(brackets, tol=tol)


def is_ideal(alg: LieAlgebra, V: Subspace, tol: float | None = None) -> bool:
    if V.dim == 0:
        return True
    t = alg.structure_tensor()
    brackets = np.einsum("ijk,ai,bj->abk", t, np.eye(alg.dim), V.basis).reshape(-1, alg.dim)
    return V.contains(brackets, tol=tol)


# -- structure report ----------------------------------------------------


@dataclass(frozen=True)
class StructureReport:
    is_solvable: bool
    is_nilpotent: bool
    is_semisimple: bool
    radical: Subspace
    levi: Optional[Subspace]
    center: Subspace
    derived_series_dims: tuple[int, ...]
    lower_central_dims: tuple[int, ...]


def structure_report(alg: LieAlgebra, declared_levi: Optional[Subspace] = None) -> StructureReport:
    ds = [m.rows for m in derived_series(alg)]
    lcs = [m.rows for m in lower_central_series(alg)]
    rad = radical(alg)
    solvable = ds[-1] == 0
    nilpotent = lcs[-1] == 0
    levi = levi_subalgebra(alg, declared=declared_levi)
    return StructureReport(
        is_solvable=solvable,
        is_nilpotent=nilpotent,
        is_semisimple=rad.dim == 0,
        radical=rad,
        levi=levi,
        center=_to_subspace(alg.dim, center_exact(alg)),
        derived_series_dims=tuple(ds),
        lower_central_dims=tuple(lcs),
    )
