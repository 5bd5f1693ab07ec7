import math

import numpy as np
import pytest

from lieentropy import (
    Endomorphism,
    GroupSpec,
    lattice_automorphism,
    toral_component,
    unstable_toral_part,
    validate_group_spec,
)
from lieentropy.catalog import abelian, heisenberg3
from lieentropy.groups import induced_lattice_matrix, radical_toral_component, unstable_hull_block, TorusBlock


def torus_spec(matrix, lattice=None, dim=2):
    alg = abelian(dim)
    lattice = lattice if lattice is not None else np.eye(dim, dtype=int).tolist()
    return GroupSpec(algebra=alg, model="torus", lattice=lattice, flags={"solvable": True}), Endomorphism.from_rows(alg, matrix)


def test_torus_requires_full_lattice():
    alg = abelian(2)
    spec = GroupSpec(algebra=alg, model="torus", lattice=[[1, 0]], flags={"solvable": True})
    phi = Endomorphism.from_rows(alg, [[1, 0], [0, 1]])
    report = validate_group_spec(spec, phi)
    assert not report
    assert any("lattice" in what for _, what in report.violations)


def test_torus_requires_abelian():
    h3 = heisenberg3()
    spec = GroupSpec(algebra=h3, model="torus", lattice=np.eye(3, dtype=int).tolist(), flags={"solvable": True})
    phi = Endomorphism.from_rows(h3, np.eye(3, dtype=int).tolist())
    assert not validate_group_spec(spec, phi)


def test_central_quotient_lattice_must_be_central():
    h3 = heisenberg3()
    phi = Endomorphism.from_rows(h3, np.eye(3, dtype=int).tolist())
    good = GroupSpec(algebra=h3, model="central_quotient", lattice=[[0, 0, 1]], flags={"solvable": True})
    assert validate_group_spec(good, phi)
    bad = GroupSpec(algebra=h3, model="central_quotient", lattice=[[1, 0, 0]], flags={"solvable": True})
    assert not validate_group_spec(bad, phi)


def test_lattice_not_preserved_is_rejected():
    spec, _ = torus_spec([[1, 0], [0, 1]])
    alg = spec.algebra
    phi = Endomorphism.from_rows(alg, [["1/2", 0], [0, 1]])
    assert not validate_group_spec(spec, phi)


def test_induced_lattice_matrix_in_lattice_coordinates():
    # doubled lattice: phi = cat map acts the same in lattice coordinates
    spec, phi = torus_spec([[2, 1], [1, 1]], lattice=[[2, 0], [0, 2]])
    b = induced_lattice_matrix(spec, phi)
    assert b.tolist() == [[2, 1], [1, 1]]


def test_lattice_automorphism_determinant():
    spec, cat = torus_spec([[2, 1], [1, 1]])
    assert lattice_automorphism(spec, cat) is True
    spec23, diag = torus_spec([[2, 0], [0, 3]])
    assert lattice_automorphism(spec23, diag) is False
    alg = abelian(2)
    no_lattice = GroupSpec(algebra=alg, model="simply_connected", flags={"solvable": True, "simply_connected": True})
    assert lattice_automorphism(no_lattice, cat) is None


def test_unstable_hull_full_for_cat():
    block = TorusBlock(2, np.array([[2, 1], [1, 1]]))
    hull = unstable_hull_block(block)
    assert hull.rank == 2  # the rational hull of the expanding line is the whole plane
    assert abs(np.linalg.det(hull.induced_matrix.astype(float))) == pytest.approx(1.0)


def test_unstable_hull_empty_for_rotation():
    block = TorusBlock(2, np.array([[0, -1], [1, 0]]))
    assert unstable_hull_block(block).rank == 0


def test_unstable_hull_splits_mixed_block():
    # cat block plus a fixed circle: hull keeps only the cat block
    m = np.zeros((3, 3), dtype=int)
    m[:2, :2] = [[2, 1], [1, 1]]
    m[2, 2] = 1
    hull = unstable_hull_block(TorusBlock(3, m))
    assert hull.rank == 2
    vals = np.linalg.eigvals(hull.induced_matrix.astype(float))
    assert sorted(np.abs(vals)) == pytest.approx([0.381966011, 2.618033988], abs=1e-8)


def test_toral_component_models():
    spec, cat = torus_spec([[2, 1], [1, 1]])
    assert toral_component(spec, cat).rank == 2
    h3 = heisenberg3()
    phi = Endomorphism.from_rows(h3, [[2, 0, 0], [0, "1/2", 0], [0, 0, 1]])
    sc = GroupSpec(algebra=h3, model="simply_connected", flags={"solvable": True, "simply_connected": True})
    assert toral_component(sc, phi).rank == 0
    cq = GroupSpec(algebra=h3, model="central_quotient", lattice=[[0, 0, 1]], flags={"solvable": True})
    block = toral_component(cq, phi)
    assert block.rank == 1 and block.induced_matrix.tolist() == [[1]]
    assert radical_toral_component(cq, phi).rank == 1


def test_unstable_toral_part_diag23():
    spec, phi = torus_spec([[2, 0], [0, 3]])
    block = unstable_toral_part(spec, phi)
    assert block.rank == 2
    vals = np.linalg.eigvals(block.induced_matrix.astype(float))
    assert float(np.sum(np.log(np.abs(vals)))) == pytest.approx(math.log(6), abs=1e-12)
