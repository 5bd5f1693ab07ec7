"""Float-side subspace arithmetic with a single rank-tolerance knob.

Rank decisions use a singular-value cutoff of ``RANK_TOL`` times the largest
singular value (absolute fallback for near-zero matrices).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

RANK_TOL = 1e-9


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of R^ambient_dim, spanned by the rows of `basis`."""

    ambient_dim: int
    basis: np.ndarray  # shape (rank, ambient_dim)
    rank: int = field(init=False)

    def __post_init__(self):
        basis = np.atleast_2d(np.asarray(self.basis, dtype=float))
        if basis.size == 0:
            basis = np.zeros((0, self.ambient_dim))
        if basis.shape[1] != self.ambient_dim:
            raise ValueError(
                f"basis vectors have length {basis.shape[1]}, ambient dim is {self.ambient_dim}"
            )
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "rank", numeric_rank(basis))
        if self.rank != basis.shape[0]:
            raise ValueError("basis vectors are not linearly independent")

    @property
    def dim(self) -> int:
        return self.rank

    def orthonormal(self) -> np.ndarray:
        if self.rank == 0:
            return np.zeros((0, self.ambient_dim))
        _, _, vt = np.linalg.svd(self.basis, full_matrices=False)
        return vt[: self.rank]

    def contains(self, vectors, tol: float | None = None) -> bool:
        vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
        scale = np.linalg.norm(vectors, axis=1)
        tol = RANK_TOL if tol is None else tol
        q = self.orthonormal()
        resid = vectors - (vectors @ q.T) @ q
        return bool(np.all(np.linalg.norm(resid, axis=1) <= tol * np.maximum(scale, 1.0)))

    def contains_subspace(self, other: "Subspace", tol: float | None = None) -> bool:
        return self.contains(other.basis, tol=tol)


def numeric_rank(mat: np.ndarray, tol: float | None = None) -> int:
    mat = np.atleast_2d(np.asarray(mat, dtype=float))
    if mat.size == 0:
        return 0
    sv = np.linalg.svd(mat, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    tol = RANK_TOL if tol is None else tol
    return int(np.sum(sv > tol * sv[0]))


def span(ambient_dim: int, vectors) -> Subspace:
    """Subspace spanned by the given (possibly dependent) vectors."""
    vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
    if vectors.size == 0:
        return Subspace(ambient_dim, np.zeros((0, ambient_dim)))
    r = numeric_rank(vectors)
    if r == 0:
        return Subspace(ambient_dim, np.zeros((0, ambient_dim)))
    _, _, vt = np.linalg.svd(vectors, full_matrices=False)
    return Subspace(ambient_dim, vt[:r])


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return span(a.ambient_dim, np.vstack([a.basis, b.basis]))


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    """Intersection via the kernel of stacked orthogonal-complement projectors."""
    d = a.ambient_dim
    if a.rank == 0 or b.rank == 0:
        return span(d, np.zeros((0, d)))
    qa, qb = a.orthonormal(), b.orthonormal()
    # x in both spans iff (I - Pa) x = 0 and (I - Pb) x = 0
    pa = np.eye(d) - qa.T @ qa
    pb = np.eye(d) - qb.T @ qb
    stacked = np.vstack([pa, pb])
    sv = np.linalg.svd(stacked, compute_uv=False)
    _, _, vt = np.linalg.svd(stacked)
    cutoff = RANK_TOL * max(sv[0], 1.0)
    kernel = vt[sv.size - np.sum(sv <= cutoff):] if np.sum(sv <= cutoff) else np.zeros((0, d))
    return span(d, kernel)


def zero_subspace(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, np.zeros((0, ambient_dim)))


def full_subspace(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, np.eye(ambient_dim))
