"""Built-in desk-scale algebras and automorphism generators used across
the library, the shipped spec files, and the tests."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .algebra import LieAlgebra


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra.from_brackets(n, [])


def heisenberg3() -> LieAlgebra:
    # [e1, e2] = e3
    return LieAlgebra.from_brackets(3, [(0, 1, 2, 1)])


def sl2() -> LieAlgebra:
    # basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h
    return LieAlgebra.from_brackets(
        3,
        [(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)],
        basis_labels=("h", "e", "f"),
    )


def so3() -> LieAlgebra:
    # [x,y] = z, [y,z] = x, [z,x] = y
    return LieAlgebra.from_brackets(
        3,
        [(0, 1, 2, 1), (1, 2, 0, 1), (0, 2, 1, -1)],
        basis_labels=("x", "y", "z"),
    )


def sl2_semidirect_r2() -> LieAlgebra:
    """sl2 acting on R^2 by the standard representation.

    Basis (h, e, f, x, y): h x = x, h y = -y, e y = x, f x = y.
    """
    return LieAlgebra.from_brackets(
        5,
        [
            (0, 1, 1, 2),
            (0, 2, 2, -2),
            (1, 2, 0, 1),
            (0, 3, 3, 1),
            (0, 4, 4, -1),
            (1, 4, 3, 1),
            (2, 3, 4, 1),
        ],
        basis_labels=("h", "e", "f", "x", "y"),
    )


ALGEBRAS = {
    "abelian2": lambda: abelian(2),
    "abelian3": lambda: abelian(3),
    "abelian4": lambda: abelian(4),
    "heisenberg3": heisenberg3,
    "sl2": sl2,
    "so3": so3,
    "sl2_semidirect_r2": sl2_semidirect_r2,
}


# -- random automorphism generators --------------------------------------
#
# Each generator returns a d x d float matrix that is an automorphism of
# the corresponding algebra (exactly, up to float rounding).


def _random_gl(rng: np.random.Generator, n: int, cond_cap: float = 50.0) -> np.ndarray:
    while True:
        a = rng.uniform(-1.5, 1.5, size=(n, n))
        if abs(np.linalg.det(a)) > 0.1 and np.linalg.cond(a) < cond_cap:
            return a


def random_automorphism(name: str, rng: np.random.Generator) -> np.ndarray:
    if name.startswith("abelian"):
        n = int(name[len("abelian"):])
        return _random_gl(rng, n)
    if name == "heisenberg3":
        # phi(e1), phi(e2) free mod the center, phi(e3) = det(A) e3
        a = _random_gl(rng, 2)
        p, q = rng.uniform(-1.0, 1.0, size=2)
        m = np.zeros((3, 3))
        m[:2, :2] = a
        m[2, 0], m[2, 1] = p, q
        m[2, 2] = np.linalg.det(a)
        return m  # columns are the images of the basis vectors
    if name == "sl2":
        g = _random_gl(rng, 2)
        g /= np.sqrt(abs(np.linalg.det(g)))
        return _ad_sl2(g * np.sign(np.linalg.det(g)))
    if name == "so3":
        q = np.linalg.qr(rng.normal(size=(3, 3)))[0]
        if np.linalg.det(q) < 0:
            q[:, 0] *= -1
        return q
    if name == "sl2_semidirect_r2":
        g = _random_gl(rng, 2)
        g /= np.sqrt(abs(np.linalg.det(g)))
        g = g * np.sign(np.linalg.det(g))
        c = rng.uniform(0.4, 2.5)
        m = np.zeros((5, 5))
        m[:3, :3] = _ad_sl2(g)
        m[3:, 3:] = c * g
        return m
    raise KeyError(name)


def _ad_sl2(g: np.ndarray) -> np.ndarray:
    """Adjoint action of g in SL2 on the basis (h, e, f)."""
    h = np.array([[1.0, 0.0], [0.0, -1.0]])
    e = np.array([[0.0, 1.0], [0.0, 0.0]])
    f = np.array([[0.0, 0.0], [1.0, 0.0]])
    ginv = np.linalg.inv(g)

    def coords(m):
        # m = a h + b e + c f
        return np.array([m[0, 0], m[0, 1], m[1, 0]])

    cols = [coords(g @ b @ ginv) for b in (h, e, f)]
    return np.array(cols).T
