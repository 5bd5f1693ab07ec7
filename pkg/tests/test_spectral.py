import math

import numpy as np
import pytest

from lieentropy import (
    Endomorphism,
    check_grading,
    check_growth_bounds,
    check_homomorphism,
    dynamic_subalgebras,
    find_invariant_levi,
    generalized_eigenspaces,
)
from lieentropy.catalog import ALGEBRAS, abelian, heisenberg3, random_automorphism, sl2, sl2_semidirect_r2
from lieentropy.spectral import is_semisimple_endo
from lieentropy.subspace import subspace_intersection

PHI = (1 + math.sqrt(5)) / 2


def test_cat_map_decomposition():
    alg = abelian(2)
    cat = Endomorphism.from_rows(alg, [[2, 1], [1, 1]])
    decomp = dynamic_subalgebras(alg, cat)
    assert decomp.g_plus.dim == 1
    assert decomp.g_minus.dim == 1
    assert decomp.g_zero.dim == 0
    assert decomp.k_phi.dim == 0
    moduli = sorted(cls.modulus for cls in decomp.classes)
    assert moduli == pytest.approx([PHI**-2, PHI**2], abs=1e-9)


def test_rotation_pair_is_central():
    alg = abelian(2)
    rot = Endomorphism.from_rows(alg, [[0, -1], [1, 0]])
    decomp = dynamic_subalgebras(alg, rot)
    assert decomp.g_zero.dim == 2
    (cls,) = decomp.classes
    assert cls.is_pair and cls.multiplicity == 2
    assert cls.modulus == pytest.approx(1.0, abs=1e-12)


def test_heisenberg_diag_dims():
    h3 = heisenberg3()
    phi = Endomorphism.from_rows(h3, [[2, 0, 0], [0, "1/2", 0], [0, 0, 1]])
    assert check_homomorphism(h3, phi)
    decomp = dynamic_subalgebras(h3, phi)
    assert (decomp.g_plus.dim, decomp.g_zero.dim, decomp.g_minus.dim) == (1, 1, 1)
    assert decomp.g_plus_zero.dim == 2 and decomp.g_minus_zero.dim == 2


def test_homomorphism_check_rejects_center_scaling():
    h3 = heisenberg3()
    bad = Endomorphism.from_rows(h3, [[1, 0, 0], [0, 1, 0], [0, 0, 2]])
    assert not check_homomorphism(h3, bad)


def test_nilpotent_part_lands_in_kernel_subalgebra():
    alg = abelian(3)
    phi = Endomorphism.from_rows(alg, [[0, 1, 0], [0, 0, 0], [0, 0, 3]])
    decomp = dynamic_subalgebras(alg, phi)
    assert decomp.k_phi.dim == 2  # nilpotent block of rank 2
    assert decomp.g_phi.dim == 1
    assert decomp.g_phi.dim + decomp.k_phi.dim == alg.dim


def test_generalized_eigenspaces_cover_dimension():
    rng = np.random.default_rng(3)
    for name in sorted(ALGEBRAS):
        alg = ALGEBRAS[name]()
        for _ in range(3):
            phi = Endomorphism.from_rows(alg, random_automorphism(name, rng).tolist())
            classes = generalized_eigenspaces(phi)
            assert sum(cls.multiplicity for cls in classes) == alg.dim


def test_grading_zero_violations_on_catalog_pairs():
    rng = np.random.default_rng(9)
    for name in sorted(ALGEBRAS):
        alg = ALGEBRAS[name]()
        for _ in range(3):
            phi = Endomorphism.from_rows(alg, random_automorphism(name, rng).tolist())
            decomp = dynamic_subalgebras(alg, phi)
            report = check_grading(alg, decomp)
            assert report, f"{name}: {report.violations[:3]}"


def test_plus_zero_minus_intersections_trivial():
    rng = np.random.default_rng(21)
    alg = sl2()
    for _ in range(10):
        phi = Endomorphism.from_rows(alg, random_automorphism("sl2", rng).tolist())
        d = dynamic_subalgebras(alg, phi)
        for a, b in ((d.g_plus, d.g_zero), (d.g_plus, d.g_minus), (d.g_zero, d.g_minus)):
            assert subspace_intersection(a, b).dim == 0


def test_growth_bounds_cat():
    alg = abelian(2)
    cat = Endomorphism.from_rows(alg, [[2, 1], [1, 1]])
    decomp = dynamic_subalgebras(alg, cat)
    report = check_growth_bounds(cat, decomp)
    assert report.violations == ()
    assert 0 < report.c <= 1.0
    assert report.mu < 1.0


def test_semisimple_endo_detection():
    alg = abelian(3)
    diag = Endomorphism.from_rows(alg, [[2, 0, 0], [0, 3, 0], [0, 0, 5]])
    assert is_semisimple_endo(diag)
    jordan = Endomorphism.from_rows(alg, [[2, 1, 0], [0, 2, 0], [0, 0, 5]])
    assert not is_semisimple_endo(jordan)


def test_invariant_levi_semidirect():
    alg = sl2_semidirect_r2()
    phi = Endomorphism.from_rows(alg, np.diag([1, 1, 1, 2, 2]).tolist())
    levi = find_invariant_levi(alg, phi)
    assert levi is not None and levi.dim == 3
