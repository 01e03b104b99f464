"""Data model, arithmetic, validation, unitization, minimal polynomials, spectra."""

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import staralg as sa
from staralg.core import algebra_from_json, algebra_to_json


@pytest.fixture
def m2():
    return sa.matrix_algebra(2)


def test_validate_matrix_algebra(m2):
    report = sa.validate(m2)
    assert report.passed
    assert report.associativity_defect == 0.0
    assert report.involution_defect == 0.0


def test_validate_rejects_broken_associativity():
    c = np.zeros((2, 2, 2), dtype=complex)
    c[0, 0, 1] = 1.0
    c[1, 1, 0] = 1.0
    c[0, 1, 0] = 1.0
    alg = sa.StarAlgebra(c, np.eye(2, dtype=complex))
    assert not sa.validate(alg).passed


def test_validate_rejects_non_involutive_star(m2):
    s = np.eye(4, dtype=complex)
    s[0, 0] = 2.0  # star of star is then 4x, not x
    alg = sa.StarAlgebra(m2.mul, s)
    assert not sa.validate(alg).passed


def test_arithmetic_matches_matrices(m2):
    # elements of M_2 in the E_pq basis multiply like matrices
    rng = np.random.default_rng(0)
    for _ in range(10):
        x = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        y = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        a = m2.element(x.reshape(-1))
        b = m2.element(y.reshape(-1))
        assert np.allclose((a * b).coeffs, (x @ y).reshape(-1))
        assert np.allclose((a + b).coeffs, (x + y).reshape(-1))
        assert np.allclose(a.star().coeffs, x.conj().T.reshape(-1))


def test_parent_mismatch_raises(m2):
    other = sa.matrix_algebra(2)
    with pytest.raises(sa.ParentMismatch):
        m2.element([1, 0, 0, 0]) * other.element([1, 0, 0, 0])


def test_unit_detection(m2):
    assert m2.is_unital()
    assert np.allclose(m2.unit_vector(), [1, 0, 0, 1])
    assert not sa.nilpotent_line().is_unital()


def test_unitize_adjoins_a_unit():
    alg = sa.unitize(sa.nilpotent_line())
    assert alg.dim == 2
    assert alg.is_unital()
    one = alg.element(alg.unit_vector())
    x = alg.basis_element(1)
    assert ((one * x) - x).norm() < 1e-14
    assert ((x * x)).norm() < 1e-14  # x stays nilpotent


def test_unital_hull_of_unital_algebra_is_itself(m2):
    hull = sa.unital_hull(m2)
    assert not hull.adjoined
    assert hull.algebra is m2


def test_minimal_polynomial_of_projection(m2):
    # [TRIVIAL] a projection satisfies t^2 - t
    p = m2.element([1, 0, 0, 0])
    coeffs = sa.minimal_polynomial(p)
    assert np.allclose(coeffs, [1.0, -1.0, 0.0])


def test_minimal_polynomial_of_nilpotent():
    # [TRIVIAL] x^2 = 0 and x != 0 gives t^2
    alg = sa.nilpotent_line()
    coeffs = sa.minimal_polynomial(alg.element([1.0]))
    assert np.allclose(coeffs, [1.0, 0.0, 0.0])


def test_spectrum_symmetric_off_diagonal(m2):
    # [DERIVED] eigenvalues of [[0,1],[1,0]] are -1, 1
    sp = sa.spectrum(m2.element([0, 1, 1, 0]))
    assert sorted(round(p.real, 9) for p in sp.points) == [-1.0, 1.0]
    assert not sp.includes_forced_zero


def test_spectrum_nonunital_forces_zero():
    # in a non-unital algebra the spectrum always contains 0
    sp = sa.spectrum(sa.nilpotent_line().element([1.0]))
    assert sp.includes_forced_zero
    assert any(abs(p) < 1e-12 for p in sp.points)


def test_spectrum_of_diagonal_element():
    alg = sa.diagonal_algebra(3)
    sp = sa.spectrum(alg.element([2.0, 3.0, 2.0]))
    assert sorted(round(p.real, 9) for p in sp.points) == [2.0, 3.0]


def test_json_round_trip(m2):
    data = algebra_to_json(m2)
    back = algebra_from_json(json.loads(json.dumps(data)))
    assert np.allclose(back.mul, m2.mul)
    assert np.allclose(back.star, m2.star)
    assert back.is_unital()


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_star_is_involutive_on_random_elements(seed):
    alg = sa.matrix_algebra(2)
    a = sa.random_element(alg, np.random.default_rng(seed))
    assert (a.star().star() - a).norm() < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_star_antimultiplicative(seed):
    alg = sa.matrix_algebra(2)
    rng = np.random.default_rng(seed)
    a, b = sa.random_element(alg, rng), sa.random_element(alg, rng)
    assert ((a * b).star() - b.star() * a.star()).norm() < 1e-10


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_minimal_polynomial_annihilates(seed):
    alg = sa.matrix_algebra(2)
    a = sa.random_element(alg, np.random.default_rng(seed))
    coeffs = sa.minimal_polynomial(a)
    hull = sa.unital_hull(alg)
    ah = hull.embed(a)
    acc = hull.algebra.zero()
    power = hull.one()
    for c in reversed(coeffs):  # coeffs are highest-degree first
        acc = acc + complex(c) * power
        power = power * ah
    assert acc.norm() < 1e-6 * max(1.0, a.norm()) ** len(coeffs)
