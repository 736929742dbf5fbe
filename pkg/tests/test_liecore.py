from fractions import Fraction

import pytest

from lierigid.liecore import (
    InvariantFormError,
    LieAlgebra,
    LieAlgebraError,
    ClosureError,
    GModule,
    Subalgebra,
    adjoint_module,
    inner_automorphism,
    invariant_symmetric_form,
    is_semisimple,
    killing_form,
    matrix_coordinates,
    nilpotent_elements,
    quotient_module,
    sl,
    sl2,
    sl2_sym_power,
    so_from_form,
    subalgebra_closure_check,
    trivial_module,
    validate,
)
from lierigid.qlinalg import QMatrix

from subalgebras import so5_pool, unit

H, E, F = 0, 1, 2


def test_sl2_relations_valid():
    L = sl2()
    assert validate(L).valid
    assert L.bracket_basis(H, E) == (0, 2, 0)
    assert L.bracket_basis(H, F) == (0, 0, -2)
    assert L.bracket_basis(E, F) == (1, 0, 0)


def test_abelian_valid():
    assert validate(LieAlgebra(3, {})).valid


def test_perturbed_sl2_jacobi_residual():
    L = LieAlgebra(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1, 1: 1}})
    rep = validate(L)
    assert not rep.valid and not rep.antisymmetry_violations
    assert rep.jacobi_violations == [((0, 1, 2), (0, 2, 0))]


def test_antisymmetry_violation_reported():
    L = LieAlgebra(2, {(0, 1): {1: 1}, (1, 0): {1: 1}})
    rep = validate(L)
    assert rep.antisymmetry_violations == [(0, 1, (0, 2))]


def test_closure_examples():
    L = sl2()
    assert subalgebra_closure_check(Subalgebra(L, [L.basis_vector(E)])).closed
    assert subalgebra_closure_check(Subalgebra(L, [L.basis_vector(H), L.basis_vector(E)])).closed
    res = subalgebra_closure_check(Subalgebra(L, [L.basis_vector(E), L.basis_vector(F)]))
    assert not res.closed and res.bracket == (1, 0, 0)


def test_quotient_module_dims():
    L = sl2()
    aff = Subalgebra(L, [L.basis_vector(H), L.basis_vector(E)])
    M = quotient_module(aff)
    assert M.dim == 1 and M.is_representation()
    assert quotient_module(Subalgebra.full(L)).dim == 0
    with pytest.raises(ClosureError):
        quotient_module(Subalgebra(L, [L.basis_vector(E), L.basis_vector(F)]))
    so5, pool = so5_pool()
    assert quotient_module(Subalgebra(so5, pool[2])).dim == 8


def test_killing_form():
    L = sl2()
    K = killing_form(L)
    assert K[H, H] == 8
    assert K.det() != 0 and is_semisimple(L)
    assert not is_semisimple(LieAlgebra(2, {}))
    aff = Subalgebra(L, [L.basis_vector(H), L.basis_vector(E)])
    assert killing_form(aff.algebra).det() == 0
    assert not is_semisimple(aff.algebra)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_sl_constructor(n):
    L = sl(n)
    assert L.dim == n * n - 1
    assert validate(L).valid
    assert is_semisimple(L)


def test_so5_from_sym4_form():
    S = sl2_sym_power(4)
    B = invariant_symmetric_form([S.h, S.e, S.f])
    expected = [[0, 0, 0, 0, 6], [0, 0, 0, Fraction(-3, 2), 0], [0, 0, 1, 0, 0],
                [0, Fraction(-3, 2), 0, 0, 0], [6, 0, 0, 0, 0]]
    assert B == QMatrix(expected)
    so5 = so_from_form(B)
    assert so5.dim == 10 and validate(so5).valid and is_semisimple(so5)
    for m in so5.matrices:
        assert (m.T @ B + B @ m).is_zero()


def test_so_from_form_errors():
    with pytest.raises(LieAlgebraError):
        so_from_form(QMatrix([[1, 1], [0, 1]]))
    with pytest.raises(LieAlgebraError):
        so_from_form(QMatrix([[1, 0], [0, 0]]))


def test_invariant_form_errors():
    e, h, f = unit(2, 0, 1), QMatrix([[1, 0], [0, -1]]), unit(2, 1, 0)
    with pytest.raises(InvariantFormError):
        invariant_symmetric_form([h, e, f])
    with pytest.raises(InvariantFormError):
        invariant_symmetric_form([QMatrix.zeros(2, 2)])


@pytest.mark.parametrize("m", [1, 2, 3, 4, 6])
def test_sym_power_preserves_brackets(m):
    S = sl2_sym_power(m)
    assert S.h.commutator(S.e) == S.e.scale(2)
    assert S.h.commutator(S.f) == S.f.scale(-2)
    assert S.e.commutator(S.f) == S.h
    assert [S.h[i, i] for i in range(m + 1)] == [m - 2 * k for k in range(m + 1)]


def test_modules_are_representations():
    L = sl(3)
    assert adjoint_module(L).is_representation()
    assert trivial_module(L, 2).is_representation()
    bad = GModule(sl2(), [QMatrix.identity(1)] * 3)
    assert bad.representation_defects()


def test_inner_automorphism_preserves_brackets():
    L = sl(3)
    for i in nilpotent_elements(L):
        x = tuple(Fraction(2) if k == i else Fraction(0) for k in range(L.dim))
        phi = inner_automorphism(L, x)
        for a in range(L.dim):
            for b in range(L.dim):
                lhs = phi.apply(L.bracket_basis(a, b))
                rhs = L.bracket(phi.col(a), phi.col(b))
                assert lhs == rhs
    with pytest.raises(LieAlgebraError):
        inner_automorphism(L, matrix_coordinates(L, QMatrix([[1, 0, 0], [0, -1, 0], [0, 0, 0]])))


def test_mixed_basis_same_span():
    L = sl(3)
    g = Subalgebra(L, [L.basis_vector(0), L.basis_vector(1)])
    g2 = g.mixed(QMatrix([[1, 1], [0, 2]]))
    assert all(g.contains(r) for r in g2.basis.rows)
    with pytest.raises(ValueError):
        g.mixed(QMatrix([[1, 1], [1, 1]]))
