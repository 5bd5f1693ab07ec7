"""Exact linear algebra over the rationals and the integers.

Structure-theory decisions (ideals, radicals, series dimensions) are made
here with Fraction/sympy arithmetic so that they never depend on a float
tolerance.  Integer kernels are saturated, i.e. they return a basis of the
full lattice ``span_Q(ker) ∩ Z^n``.
"""

from __future__ import annotations

from fractions import Fraction

import sympy
from sympy import Matrix, Rational


def to_rational_matrix(rows) -> Matrix:
    """Build a sympy Matrix with Rational entries from Fractions/ints/strings."""
    return Matrix([[Rational(x) for x in row] for row in rows])


def rowspace_basis(mat: Matrix) -> Matrix:
    """Basis of the row space as the nonzero rows of the RREF."""
    if mat.rows == 0:
        return mat
    rref, pivots = mat.rref()
    return rref[: len(pivots), :]


def rowspace_rank(mat: Matrix) -> int:
    return mat.rank() if mat.rows else 0

def nullspace_basis(mat: Matrix) -> Matrix:
    """Kernel {x : mat @ x = 0}, returned as rows."""
    if mat.rows == 0:
        return sympy.eye(mat.cols)
    vecs = mat.nullspace()
    if not vecs:
        return Matrix(0, mat.cols, [])
    return Matrix([[v[i] for i in range(mat.cols)] for v in vecs])


def in_rowspace(mat: Matrix, vec) -> bool:
    """True iff vec lies in the row space of mat (exact)."""
    v = Matrix([[Rational(x) for x in vec]])
    if all(x == 0 for x in v):
        return True
    if mat.rows == 0:
        return False
    stacked = mat.col_join(v)
    return stacked.rank() == mat.rank()


def solve_in_rowspace(mat: Matrix, vec):
    """Coefficients c with c @ mat = vec, or None if vec is outside the span."""
    target = Matrix([Rational(x) for x in vec])
    if mat.rows == 0:
        return None
    try:
        sol, params = mat.T.gauss_jordan_solve(target)
    except ValueError:
        return None
    if params.rows:
        sol = sol.subs({p: 0 for p in params})
    return sol


def integer_kernel(mat: Matrix) -> Matrix:
    """Saturated integer kernel of an integer matrix.

    Returns rows g with mat @ g.T = 0 that generate ker(mat) ∩ Z^n as a
    group.  Uses column reduction by Euclidean operations, carrying a
    unimodular transform.
    """
    m = mat.rows
    n = mat.cols
    if m == 0:
        return sympy.eye(n)
    a = [[int(x) for x in mat.row(i)] for i in range(m)]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]  # column transform

    def col_swap(j, k):
        for i in range(m):
            a[i][j], a[i][k] = a[i][k], a[i][j]
        for i in range(n):
            u[i][j], u[i][k] = u[i][k], u[i][j]

    def col_addmul(j, k, q):
        # col_j += q * col_k
        for i in range(m):
            a[i][j] += q * a[i][k]
        for i in range(n):
            u[i][j] += q * u[i][k]

    row = 0
    col = 0
    while row < m and col < n:
        # reduce row `row` across columns col..n-1 to a single pivot
        while True:
            nz = [j for j in range(col, n) if a[row][j] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda j: abs(a[row][j]))
            col_swap(col, piv)
            done = True
            for j in range(col + 1, n):
                if a[row][j] != 0:
                    q = a[row][j] // a[row][col]
                    col_addmul(j, col, -q)
                    if a[row][j] != 0:
                        done = False
            if done:
                break
        if any(a[row][j] != 0 for j in range(col, n)):
            col += 1
        row += 1
    # columns col..n-1 of u span the kernel lattice
    ker = [[u[i][j] for i in range(n)] for j in range(col, n)]
    return Matrix(ker) if ker else Matrix(0, n, [])


def fractions_matrix(mat: Matrix):
    """sympy Matrix -> list of lists of Fraction."""
    return [
        [Fraction(int(mat[i, j].p), int(mat[i, j].q)) for j in range(mat.cols)]
        for i in range(mat.rows)
    ]
