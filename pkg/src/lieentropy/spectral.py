"""Generalized eigenspaces of a Lie algebra endomorphism and the dynamic
subalgebras they assemble into, with the grading / invariance / growth
checks that justify using them downstream.

Conjugate eigenvalue pairs are fused into a single real class; generalized
eigenspaces are kernels of the full d-th power of the shifted operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
import sympy
from sympy import Matrix, Rational

from .algebra import LieAlgebra, ValidationReport, is_subalgebra, levi_subalgebra, killing_form, radical
from .subspace import Subspace, numeric_rank, span, subspace_intersection, subspace_sum, zero_subspace

MODULUS_TOL = 1e-9  # band half-width around |alpha| = 1
CLUSTER_TOL = 1e-6  # relative eigenvalue clustering radius


@dataclass(frozen=True)
class Endomorphism:
    """A linear map on the algebra, given by its matrix in the algebra basis
    (columns are images of basis vectors)."""

    matrix: np.ndarray
    ambient: LieAlgebra
    exact: Optional[tuple] = None  # rows of Fractions when available

    @classmethod
    def from_rows(cls, alg: LieAlgebra, rows) -> "Endomorphism":
        exact_rows = []
        ok = True
        for row in rows:
            cur = []
            for x in row:
                if isinstance(x, (int, Fraction, str)):
                    cur.append(Fraction(x))
                elif isinstance(x, float) and float(x).is_integer():
                    cur.append(Fraction(int(x)))
                else:
                    ok = False
                    break
            if not ok:
                break
            exact_rows.append(tuple(cur))
        mat = np.array([[float(Fraction(x) if isinstance(x, str) else x) for x in row] for row in rows], dtype=float)
        if mat.shape != (alg.dim, alg.dim):
            raise ValueError(f"matrix shape {mat.shape} does not match algebra dim {alg.dim}")
        return cls(matrix=mat, ambient=alg, exact=tuple(exact_rows) if ok else None)

    @property
    def dim(self) -> int:
        return self.ambient.dim

    def exact_matrix(self) -> Optional[Matrix]:
        if self.exact is None:
            return None
        return Matrix([[Rational(x.numerator, x.denominator) for x in row] for row in self.exact])


@dataclass(frozen=True)
class EigenClass:
    value: complex  # representative with nonnegative imaginary part
    modulus: float
    multiplicity: int  # real dimension of the class subspace
    real_subspace: Subspace
    is_pair: bool  # True when the class fuses a conjugate pair


@dataclass(frozen=True)
class SpectralDecomposition:
    classes: tuple[EigenClass, ...]
    g_phi: Subspace
    k_phi: Subspace
    g_plus: Subspace
    g_zero: Subspace
    g_minus: Subspace
    g_plus_zero: Subspace
    g_minus_zero: Subspace


def check_homomorphism(alg: LieAlgebra, phi: Endomorphism, tol: float = 1e-9) -> ValidationReport:
    """phi[e_i, e_j] = [phi e_i, phi e_j] on all basis pairs."""
    m = phi.matrix
    if m.shape != (alg.dim, alg.dim):
        raise ValueError("matrix dimension mismatch")
    t = alg.structure_tensor()
    scale = max(1.0, float(np.abs(m).max()) ** 2) * max(1.0, float(np.abs(t).max()))
    bad = []
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            lhs = m @ t[i, j]
            rhs = np.einsum("ijk,i,j->k", t, m[:, i], m[:, j])
            err = float(np.linalg.norm(lhs - rhs))
            if err > tol * scale:
                bad.append((i, j, err))
    return ValidationReport(valid=not bad, violations=tuple(bad))


# -- eigenclass computation ----------------------------------------------


def _cluster_eigenvalues(vals: np.ndarray) -> list[tuple[complex, int]]:
    """Group float eigenvalues into (representative, count) clusters."""
    scale = max(1.0, float(np.abs(vals).max())) if vals.size else 1.0
    tol = CLUSTER_TOL * scale
    used = np.zeros(len(vals), dtype=bool)
    clusters = []
    order = np.lexsort((vals.imag, vals.real))
    for idx in order:
        if used[idx]:
            continue
        members = [idx]
        used[idx] = True
        for jdx in order:
            if not used[jdx] and abs(vals[jdx] - vals[idx]) <= tol:
                used[jdx] = True
                members.append(jdx)
        rep = complex(np.mean(vals[members]))
        clusters.append((rep, len(members)))
    return clusters


def _kernel_of_power(m: np.ndarray, expected_dim: int) -> np.ndarray:
    """Orthonormal rows spanning ker(m^d), taking the d smallest singular
    directions; m is rescaled before powering to avoid overflow."""
    d = m.shape[0]
    scale = np.linalg.norm(m, 2)
    base = m / scale if scale > 0 else m
    powered = np.linalg.matrix_power(base, d)
    _, _, vt = np.linalg.svd(powered)
    return vt[d - expected_dim:] if expected_dim else np.zeros((0, d))


def generalized_eigenspaces(phi: Endomorphism) -> list[EigenClass]:
    """Partition R^d into real invariant subspaces, one per eigenvalue class
    (conjugate pairs fused)."""
    m = phi.matrix
    d = m.shape[0]
    if d == 0:
        return []
    try:
        vals = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise ArithmeticError("eigenvalue solver failed to converge") from exc
    clusters = _cluster_eigenvalues(vals)
    # fuse conjugates: keep representatives with imag >= 0
    fused: list[tuple[complex, int, bool]] = []
    skip = set()
    scale = max(1.0, float(np.abs(vals).max()))
    for a, (va, na) in enumerate(clusters):
        if a in skip:
            continue
        if abs(va.imag) <= CLUSTER_TOL * scale:
            fused.append((complex(va.real, 0.0), na, False))
            continue
        partner = None
        for b, (vb, nb) in enumerate(clusters):
            if b != a and b not in skip and abs(vb - np.conj(va)) <= 2 * CLUSTER_TOL * scale:
                partner = b
                break
        if partner is not None:
            skip.add(partner)
            rep = va if va.imag > 0 else np.conj(va)
            fused.append((complex(rep), na + clusters[partner][1], True))
        else:  # lone complex value: treat with its conjugate implicitly
            rep = va if va.imag > 0 else np.conj(va)
            fused.append((complex(rep), 2 * na, True))
    classes = []
    for value, mult, is_pair in fused:
        if is_pair:
            a, b = value.real, value.imag
            shifted = m @ m - 2 * a * m + (a * a + b * b) * np.eye(d)
        else:
            shifted = m - value.real * np.eye(d)
        basis = _kernel_of_power(shifted, mult)
        classes.append(
            EigenClass(
                value=value,
                modulus=float(abs(value)),
                multiplicity=mult,
                real_subspace=Subspace(d, basis) if mult else zero_subspace(d),
                is_pair=is_pair,
            )
        )
    assert sum(c.multiplicity for c in classes) == d
    return classes


def dynamic_subalgebras(
    alg: LieAlgebra, phi: Endomorphism, modulus_tol: float = MODULUS_TOL
) -> SpectralDecomposition:
    """Assemble the seven dynamic subalgebras from the eigenvalue classes.

    Moduli within `modulus_tol` of 1 are classified as central.
    """
    report = check_homomorphism(alg, phi)
    if not report:
        raise ValueError(f"matrix is not a Lie algebra homomorphism: {report.violations[:3]}")
    d = alg.dim
    classes = generalized_eigenspaces(phi)

    def collect(pred) -> Subspace:
        rows = [c.real_subspace.basis for c in classes if pred(c) and c.multiplicity]
        if not rows:
            return zero_subspace(d)
        return span(d, np.vstack(rows))

    zero_tol = modulus_tol
    g_phi = collect(lambda c: c.modulus > zero_tol)
    k_phi = collect(lambda c: c.modulus <= zero_tol)
    g_plus = collect(lambda c: c.modulus > 1 + modulus_tol)
    g_zero = collect(lambda c: abs(c.modulus - 1) <= modulus_tol)
    g_minus = collect(lambda c: zero_tol < c.modulus < 1 - modulus_tol)
    g_plus_zero = subspace_sum(g_plus, g_zero)
    g_minus_zero = subspace_sum(g_minus, g_zero)
    return SpectralDecomposition(
        classes=tuple(classes),
        g_phi=g_phi,
        k_phi=k_phi,
        g_plus=g_plus,
        g_zero=g_zero,
        g_minus=g_minus,
        g_plus_zero=g_plus_zero,
        g_minus_zero=g_minus_zero,
    )


# -- checks --------------------------------------------------------------


def check_grading(alg: LieAlgebra, decomp: SpectralDecomposition, tol: float = 1e-7) -> ValidationReport:
    """[g_a, g_b] ⊆ g_{ab}; the target is {0} when ab is not an eigenvalue.

    For fused conjugate classes the admissible products are all of
    {a b, a conj(b)}, so the target is the sum of every class matching one
    of them.
    """
    t = alg.structure_tensor()
    d = alg.dim
    classes = decomp.classes
    scale = max(1.0, max((c.modulus for c in classes), default=1.0))
    bad = []
    for ia, ca in enumerate(classes):
        for ib, cb in enumerate(classes):
            if ca.multiplicity == 0 or cb.multiplicity == 0:
                continue
            products = {ca.value * cb.value, ca.value * np.conj(cb.value)}
            targets = []
            for cc in classes:
                for p in products:
                    if abs(cc.value - p) <= 1e-6 * max(1.0, abs(p)) or abs(np.conj(cc.value) - p) <= 1e-6 * max(1.0, abs(p)):
                        targets.append(cc.real_subspace.basis)
                        break
            target = span(d, np.vstack(targets)) if targets else zero_subspace(d)
            brackets = np.einsum(
                "ijk,ai,bj->abk", t, ca.real_subspace.basis, cb.real_subspace.basis
            ).reshape(-1, d)
            norms = np.linalg.norm(brackets, axis=1)
            if target.dim == 0:
                err = float(norms.max()) if norms.size else 0.0
                if err > tol * scale:
                    bad.append((ia, ib, err))
            else:
                q = target.orthonormal()
                resid = brackets - (brackets @ q.T) @ q
                err = float(np.linalg.norm(resid, axis=1).max()) if resid.size else 0.0
                if err > tol * max(scale, float(norms.max()) if norms.size else 1.0):
                    bad.append((ia, ib, err))
    return ValidationReport(valid=not bad, violations=tuple(bad))


@dataclass(frozen=True)
class GrowthBoundReport:
    c: float
    mu: float
    max_m: int
    violations: tuple


def _sample_unit_vectors(sub: Subspace, count: int, seed: int = 7) -> np.ndarray:
    if sub.dim == 0:
        return np.zeros((0, sub.ambient_dim))
    rng = np.random.default_rng(seed)
    coeffs = rng.normal(size=(count, sub.dim))
    vecs = coeffs @ sub.orthonormal()
    return vecs / np.linalg.norm(vecs, axis=1, keepdims=True)


def check_growth_bounds(
    phi: Endomorphism,
    decomp: SpectralDecomposition,
    max_m: int = 30,
    samples: int = 50,
    subexp_rate: float = 0.1,
) -> GrowthBoundReport:
    """Fit an explicit witness (c, mu) for the expansion/contraction bounds
    and verify it on sampled unit vectors.

    mu is the midpoint between the binding spectral ratio and 1; c is the
    worst sampled ratio (capped at 1).  The central part is checked for
    subexponential growth: |phi^m Z| mu^(a m) must decay.
    """
    m = phi.matrix
    plus_moduli = [c.modulus for c in decomp.classes if c.modulus > 1 + MODULUS_TOL]
    minus_moduli = [
        c.modulus for c in decomp.classes if MODULUS_TOL < c.modulus < 1 - MODULUS_TOL
    ]
    rho_plus = min(plus_moduli) if plus_moduli else None
    rho_minus = max(minus_moduli) if minus_moduli else None
    bound = max(
        (1.0 / rho_plus) if rho_plus else 0.0,
        rho_minus if rho_minus else 0.0,
    )
    mu = (bound + 1.0) / 2.0 if bound > 0 else 0.5

    def orbit_norms(vecs: np.ndarray) -> np.ndarray:
        out = np.empty((max_m + 1, len(vecs)))
        cur = vecs.T.copy()
        for step in range(max_m + 1):
            out[step] = np.linalg.norm(cur, axis=0)
            cur = m @ cur
        return out

    xs = _sample_unit_vectors(decomp.g_plus, samples)
    ys = _sample_unit_vectors(decomp.g_minus, samples, seed=11)
    zs = _sample_unit_vectors(decomp.g_zero, samples, seed=13)
    ms = np.arange(max_m + 1)

    c_fit = 1.0
    if len(xs):
        norms = orbit_norms(xs)  # |X| = 1
        ratios = norms * (mu ** ms)[:, None]
        c_fit = min(c_fit, float(ratios.min()))
    if len(ys):
        norms = orbit_norms(ys)
        ratios = (mu ** ms)[:, None] / np.maximum(norms, 1e-300)
        c_fit = min(c_fit, float(ratios.min()))
    c_fit = max(c_fit * (1 - 1e-9), 1e-300)

    violations = []
    if len(xs):
        norms = orbit_norms(xs)
        lhs = norms
        rhs = c_fit * (mu ** (-ms))[:, None]
        bad = lhs < rhs * (1 - 1e-9)
        for step, idx in zip(*np.nonzero(bad)):
            violations.append(("expanding", int(step), int(idx)))
    if len(ys):
        norms = orbit_norms(ys)
        rhs = (mu ** ms)[:, None] / c_fit
        bad = norms > rhs * (1 + 1e-9)
        for step, idx in zip(*np.nonzero(bad)):
            violations.append(("contracting", int(step), int(idx)))
    if len(zs):
        # run the weighted orbit until mu^(rate*m) alone reaches 1e-8, so
        # polynomial central growth cannot mask the exponential damping
        decay_steps = math.ceil(math.log(1e-8) / (subexp_rate * math.log(mu)))
        horizon = min(max(200, 4 * max_m, decay_steps), 20000)
        cur = zs.T.copy()
        weighted_first = None
        weighted_last = None
        peak = 0.0
        for step in range(horizon + 1):
            w = float(np.max(np.linalg.norm(cur, axis=0))) * mu ** (subexp_rate * step)
            peak = max(peak, w)
            if step == 0:
                weighted_first = w
            weighted_last = w
            cur = m @ cur
        if weighted_last > 1e-6 * max(peak, weighted_first):
            violations.append(("central-subexponential", horizon, weighted_last))
    return GrowthBoundReport(c=c_fit, mu=mu, max_m=max_m, violations=tuple(violations))


def is_semisimple_endo(phi: Endomorphism, tol: float = 1e-8) -> bool:
    """True iff the matrix is diagonalizable over C.

    Rational matrices use the exact squarefree-minimal-polynomial test;
    float matrices fall back to an eigenvector-rank test.
    """
    exact = phi.exact_matrix()
    if exact is not None:
        lam = sympy.symbols("lam")
        p = exact.charpoly(lam).as_expr()
        minimal = sympy.Poly(p, lam)
        g = sympy.gcd(minimal, minimal.diff(lam))
        squarefree = sympy.Poly(sympy.quo(minimal, g), lam)
        mmat = sympy.zeros(exact.rows)
        coeffs = squarefree.all_coeffs()
        # evaluate the squarefree part on the matrix: zero iff diagonalizable
        acc = sympy.eye(exact.rows)
        val = sympy.zeros(exact.rows)
        for c in reversed(coeffs):
            val += c * acc
            acc = exact * acc
        return val.is_zero_matrix
    m = phi.matrix
    vals, vecs = np.linalg.eig(m)
    return numeric_rank(vecs.T, tol=tol) == m.shape[0]


def find_invariant_levi(
    alg: LieAlgebra, phi: Endomorphism, declared: Optional[Subspace] = None
) -> Optional[Subspace]:
    """A Levi subalgebra with phi(s) = s, or None.

    Tries the declared/computed Levi first; when phi is semisimple,
    attempts a one-pass linear correction of the base Levi by a map into
    the radical (a Sylvester equation) and verifies the result.
    """
    if not check_homomorphism(alg, phi):
        raise ValueError("phi is not a homomorphism")
    s = levi_subalgebra(alg, declared=declared)
    if s is None:
        return None
    if s.dim == 0:
        return s
    if _is_invariant(phi, s):
        return s
    if not is_semisimple_endo(phi):
        return None
    corrected = _sylvester_correction(alg, phi, s)
    if corrected is not None and _is_invariant(phi, corrected) and _verify_levi_numeric(alg, corrected):
        return corrected
    return None


def _is_invariant(phi: Endomorphism, sub: Subspace, tol: float | None = None) -> bool:
    if sub.dim == 0:
        return True
    images = (phi.matrix @ sub.basis.T).T
    return sub.contains(images, tol=tol)


def _verify_levi_numeric(alg: LieAlgebra, s: Subspace) -> bool:
    rad = radical(alg)
    if s.dim + rad.dim != alg.dim:
        return False
    if not is_subalgebra(alg, s):
        return False
    K = killing_form(alg)
    b = s.orthonormal()
    sv = np.linalg.svd(b @ K @ b.T, compute_uv=False)
    return bool(sv.size and sv[-1] > 1e-9 * max(sv[0], 1.0))


def _sylvester_correction(alg: LieAlgebra, phi: Endomorphism, s: Subspace) -> Optional[Subspace]:
    """Solve for f: s -> rad so that the graph {x + f(x)} is phi-invariant."""
    from scipy.linalg import solve_sylvester

    rad = radical(alg)
    if rad.dim == 0:
        return s
    d = alg.dim
    sb = s.orthonormal()          # (k, d)
    rb = rad.orthonormal()        # (r, d)
    m = phi.matrix
    # coordinates: project phi-images onto the two factors
    a = sb @ m @ sb.T             # action on s-coords (k, k): pi_s(phi x)
    rmat = rb @ m @ rb.T          # action on rad coords
    b = rb @ m @ sb.T             # pi_r(phi x) for x in s  (r, k)
    # need f with f a = r f + b  (f: k -> r coords), i.e. r f - f a = -b
    try:
        f = solve_sylvester(rmat, -a, -b)
    except Exception:
        return None
    graph = sb + f.T @ rb
    try:
        return Subspace(d, graph)
    except ValueError:
        return None


def check_compact_centrality(
    alg: LieAlgebra, phi: Endomorphism, decomp: SpectralDecomposition
) -> ValidationReport:
    """For compact-type algebras (Killing form negative semidefinite), the
    unstable and stable parts must lie in the center.  Returns a report with
    a single 'not-applicable' marker otherwise."""
    K = killing_form(alg)
    if alg.dim:
        eigs = np.linalg.eigvalsh((K + K.T) / 2)
        if eigs.size and eigs.max() > 1e-9 * max(1.0, float(np.abs(eigs).max())):
            return ValidationReport(valid=True, violations=(("not-applicable",),))
    from .algebra import center_exact, _to_subspace

    center = _to_subspace(alg.dim, center_exact(alg))
    bad = []
    for name, sub in (("g_plus", decomp.g_plus), ("g_minus", decomp.g_minus)):
        if sub.dim and not center.contains_subspace(sub):
            bad.append((name, "not contained in the center"))
    return ValidationReport(valid=not bad, violations=tuple(bad))
