"""Radical, properness, hermitian check, central atoms, block isomorphisms, analyze."""

import numpy as np
import pytest

import staralg as sa
from staralg.instances import (
    diagonal_algebra,
    direct_sum,
    matrix_algebra,
    nilpotent_mutant,
    semisimple_instance,
    swap_mutant,
)
from staralg.structure import (
    abelian_split,
    block_star_isomorphism,
    matrix_unit_residual,
)


def test_radical_of_semisimple_is_zero():
    assert sa.radical(matrix_algebra(2)) == []
    assert sa.radical(diagonal_algebra(3)) == []


def test_radical_of_unitized_nilpotent():
    rad = sa.radical(sa.unitized_nilpotent())
    assert len(rad) == 1
    x = rad[0]
    assert (x * x).norm() < 1e-10  # the radical here is the nilpotent line


def test_check_proper_matrix_algebra():
    report = sa.check_proper(matrix_algebra(3))
    assert report.passed


def test_check_proper_swap_witness():
    report = sa.check_proper(sa.swap_algebra())
    assert not report.passed
    # witness element a with a*a = 0 exactly: the first coordinate
    w = report.witness["element"]
    a = sa.swap_algebra().element([complex(re, im) for re, im in w])
    assert (a.star() * a).norm() < 1e-9
    assert a.norm() > 0.1


def test_check_hermitian_cases():
    assert sa.check_hermitian(matrix_algebra(2)).passed
    assert sa.check_hermitian(sa.unitized_nilpotent()).passed  # hermitian, not semisimple
    assert not sa.check_hermitian(sa.swap_algebra()).passed


def test_quotient_by_radical_dimension():
    alg = nilpotent_mutant(2)  # unitized nilpotent + C^2, radical dim 1
    rad = sa.radical(alg)
    quotient, _ = sa.quotient_by_radical(alg, rad)
    assert quotient.dim == alg.dim - 1
    assert sa.check_proper(quotient).passed


def test_center_of_matrix_algebra():
    c = sa.center(matrix_algebra(2))
    assert len(c) == 1  # scalars only
    z = c[0]
    m = z.coeffs.reshape(2, 2)
    assert np.allclose(m, m[0, 0] * np.eye(2))


def test_central_atoms_direct_sum():
    alg = direct_sum(matrix_algebra(2), diagonal_algebra(2))
    dec = sa.central_atoms(alg)
    assert sorted(dec.block_dims) == [1, 1, 4]
    total = alg.zero()
    for atom in dec.atoms:
        assert (atom - atom * atom).norm() < 1e-9
        assert (atom - atom.star()).norm() < 1e-9
        total = total + atom
    assert np.allclose(total.coeffs, alg.unit_vector())


def test_central_atoms_scrambled():
    rng = np.random.default_rng(13)
    alg = semisimple_instance([3, 2], 2, rng)
    dec = sa.central_atoms(alg, seed=5)
    assert sorted(dec.block_dims) == [1, 1, 4, 9]


def test_abelian_split():
    rng = np.random.default_rng(21)
    alg = semisimple_instance([2], 3, rng)
    h, nonabelian, abelian = abelian_split(alg, seed=2)
    assert sa.is_projection(h)
    assert abelian.algebra.dim == 3
    assert nonabelian.algebra.dim == 4
    # h is central: ha = ah for all basis elements
    for e in alg.basis():
        assert (h * e - e * h).norm() < 1e-8


def test_block_star_isomorphism_matrix_algebra():
    alg = matrix_algebra(3)
    units = block_star_isomorphism(alg, seed=0)
    assert len(units) == 3
    assert matrix_unit_residual(alg, units) < 1e-9


def test_block_star_isomorphism_scrambled():
    rng = np.random.default_rng(17)
    alg = semisimple_instance([3], 0, rng)
    units = block_star_isomorphism(alg, seed=0)
    assert matrix_unit_residual(alg, units) < 1e-8


def test_analyze_matrix_algebra_report():
    r = sa.analyze(matrix_algebra(2))
    assert r.dim == 4 and r.unital and r.proper and r.hermitian
    assert r.semisimple and r.weakly_rickart and r.baer
    assert r.block_sizes_nonabelian == [2] and r.abelian_dim == 0
    d = r.to_dict()
    assert d["blocks"] == [2] and d["abelian_dim"] == 0


def test_analyze_swap_mutant():
    r = sa.analyze(swap_mutant(1))
    assert not r.proper and not r.hermitian and r.semisimple
    assert not r.weakly_rickart and not r.baer
    assert r.witness is not None


def test_analyze_nilpotent_mutant():
    r = sa.analyze(nilpotent_mutant(1))
    assert not r.proper and r.hermitian and not r.semisimple
    assert r.radical_dim == 1 and not r.baer


def test_analyze_rejects_malformed():
    c = np.zeros((2, 2, 2), dtype=complex)
    c[0, 0, 1] = 1.0
    c[1, 1, 0] = 1.0
    c[0, 1, 0] = 1.0
    bad = sa.StarAlgebra(c, np.eye(2, dtype=complex))
    with pytest.raises(sa.ValidationFailed):
        sa.analyze(bad)


def test_analyze_block_accounting():
    rng = np.random.default_rng(3)
    alg = semisimple_instance([2, 2, 3], 1, rng)
    r = sa.analyze(alg, seed=4)
    assert sorted(r.block_sizes_nonabelian) == [2, 2, 3]
    assert r.abelian_dim == 1
    assert sum(n * n for n in r.block_sizes_nonabelian) + r.abelian_dim == r.dim
    assert all(n >= 2 for n in r.block_sizes_nonabelian)
