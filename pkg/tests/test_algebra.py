import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lieentropy import LieAlgebra, check_jacobi, is_nilpotent, is_solvable, killing_form, levi_subalgebra, radical, structure_report
from lieentropy.algebra import derived_series, killing_form_exact, lower_central_series
from lieentropy.catalog import ALGEBRAS, heisenberg3, sl2, sl2_semidirect_r2, so3


@pytest.fixture(params=sorted(ALGEBRAS))
def named_algebra(request):
    return request.param, ALGEBRAS[request.param]()


def test_jacobi_holds_on_catalog(named_algebra):
    name, alg = named_algebra
    assert check_jacobi(alg), f"{name} violates Jacobi"


def test_jacobi_detects_violation():
    bad = LieAlgebra.from_brackets(3, [(0, 1, 2, 1), (0, 2, 0, 1), (1, 2, 1, 1)])
    report = check_jacobi(bad)
    assert not report
    assert report.violations


rational = st.fractions(
    min_value=-5, max_value=5, max_denominator=7
)


@settings(max_examples=50, deadline=None)
@given(
    x=st.lists(rational, min_size=3, max_size=3),
    y=st.lists(rational, min_size=3, max_size=3),
)
def test_bracket_antisymmetry_exact(x, y):
    alg = sl2()
    xy = alg.bracket(x, y)
    yx = alg.bracket(y, x)
    assert all(a + b == 0 for a, b in zip(xy, yx))


def test_bracket_bilinearity_exact():
    alg = sl2_semidirect_r2()
    rng = np.random.default_rng(0)
    for _ in range(20):
        x, y, z = (list(map(Fraction, rng.integers(-4, 5, alg.dim))) for _ in range(3))
        lhs = alg.bracket([a + b for a, b in zip(x, y)], z)
        rhs = [a + b for a, b in zip(alg.bracket(x, z), alg.bracket(y, z))]
        assert lhs == rhs


def test_sl2_killing_oracle():
    # ad h = diag(0, 2, -2), ad e, ad f from the defining relations:
    # K(h,h) = tr(ad h ad h) = 8, K(e,f) = 4, all other basis pairs 0
    k = killing_form_exact(sl2())
    expected = [[8, 0, 0], [0, 0, 4], [0, 4, 0]]
    assert k.tolist() == expected
    assert np.allclose(killing_form(sl2()), np.array(expected, dtype=float))


def test_so3_killing_negative_definite():
    k = killing_form(so3())
    assert np.all(np.linalg.eigvalsh(k) < 0)


def test_heisenberg_series_dims():
    h3 = heisenberg3()
    lc = [m.rows for m in lower_central_series(h3)]
    assert lc == [3, 1, 0]
    ds = [m.rows for m in derived_series(h3)]
    assert ds == [3, 1, 0]
    assert is_nilpotent(h3) and is_solvable(h3)


def test_sl2_not_solvable_radical_zero():
    alg = sl2()
    assert not is_solvable(alg)
    assert radical(alg).dim == 0
    rep = structure_report(alg)
    assert rep.is_semisimple
    assert rep.levi is not None and rep.levi.dim == 3


def test_semidirect_radical_and_levi():
    alg = sl2_semidirect_r2()
    rad = radical(alg)
    assert rad.dim == 2
    # the radical is the abelian ideal spanned by x, y (last two coordinates)
    for row in rad.basis:
        assert np.allclose(row[:3], 0.0, atol=1e-9)
    levi = levi_subalgebra(alg)
    assert levi is not None and levi.dim == 3
    rep = structure_report(alg)
    assert not rep.is_solvable and not rep.is_semisimple


def test_killing_form_invariance_under_catalog_automorphisms():
    from lieentropy.catalog import random_automorphism

    rng = np.random.default_rng(11)
    for name in sorted(ALGEBRAS):
        alg = ALGEBRAS[name]()
        k = killing_form(alg)
        for _ in range(5):
            g = random_automorphism(name, rng)
            assert np.allclose(g.T @ k @ g, k, atol=1e-10 * max(1.0, np.abs(k).max())), name
