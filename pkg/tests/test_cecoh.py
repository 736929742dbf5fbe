from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lierigid.cecoh import (
    CEComplex,
    FamilyError,
    RepresentationError,
    ce_differential,
    cohomology_dims,
    family_closure_check,
    rigidity_verdict,
)
from lierigid.geom import PolyVectorField
from lierigid.liecore import (
    GModule,
    LieAlgebra,
    Subalgebra,
    adjoint_module,
    conjugate_subalgebra,
    is_semisimple,
    quotient_module,
    sl,
    sl2,
    sl2_sym_power,
    trivial_module,
)
from lierigid.qlinalg import QMatrix, RatFunc, rank

import oracles
from subalgebras import random_automorphism, random_subalgebras, sl2_pool, sl3_pool, so5_pool


def sym_module(m):
    if m == 0:
        return trivial_module(sl2(), 1)
    S = sl2_sym_power(m)
    return GModule(sl2(), [S.h, S.e, S.f], name=f"Sym{m}")


def tensor(M, N):
    I_m, I_n = QMatrix.identity(M.dim), QMatrix.identity(N.dim)

    def kron(A, B):
        rows = []
        for i in range(A.nrows):
            for k in range(B.nrows):
                rows.append([A[i, j] * B[k, l] for j in range(A.ncols) for l in range(B.ncols)])
        return QMatrix(rows)

    return GModule(M.algebra, [kron(a, I_n) + kron(I_m, b) for a, b in zip(M.action, N.action)])


def test_abelian_trivial_differentials_vanish():
    L = LieAlgebra(3, {})
    M = trivial_module(L, 2)
    for k in range(3):
        assert ce_differential(L, M, k).is_zero()


def test_aff_in_sl2_rank_delta0():
    L = sl2()
    aff = Subalgebra(L, [L.basis_vector(0), L.basis_vector(1)])
    M = quotient_module(aff)
    d0 = ce_differential(aff.algebra, M, 0)
    assert d0.shape == (2, 1) and rank(d0) == 1


def test_delta0_sign():
    """(d^0 m)(x) = -x . m."""
    M = sym_module(2)
    d0 = ce_differential(M.algebra, M, 0)
    for a in range(3):
        for j in range(M.dim):
            col = [d0[a * M.dim + i, j] for i in range(M.dim)]
            assert col == [-v for v in M.action[a].col(j)]


def test_aff_so5_dims_and_complex():
    so5, pool = so5_pool()
    aff = Subalgebra(so5, pool[2])
    M = quotient_module(aff)
    assert cohomology_dims(aff.algebra, M, 1) == (8, 8, 0)
    assert not CEComplex(aff, M, max_degree=2).defects()


def test_sl2_adjoint_whitehead():
    L = sl2()
    assert cohomology_dims(L, adjoint_module(L), 1)[2] == 0


def test_zero_dimensional_algebra():
    M = GModule.zero_dim_algebra(4)
    z, b, h = cohomology_dims(M.algebra, M, 0)
    assert (z, h) == (4, 4)


def test_bad_module_rejected():
    bad = GModule(sl2(), [QMatrix.identity(1)] * 3)
    with pytest.raises(RepresentationError):
        cohomology_dims(bad.algebra, bad, 1)
    with pytest.raises(ValueError):
        cohomology_dims(sl2(), sym_module(1), -1)


@pytest.mark.parametrize("m", [0, 1, 2, 3, 4])
def test_complex_and_oracle_on_sym_modules(m):
    M = sym_module(m)
    cx = CEComplex(M.algebra, M, max_degree=3)
    assert not cx.defects()
    z, b, h = cohomology_dims(M.algebra, M, 1)
    oz, ob, inv = oracles.module_cohomology(M.algebra, [a.rows for a in M.action])
    assert (z, b) == (oz, ob)
    assert b == M.dim - len(M.invariants()) == M.dim - inv
    assert h == 0


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2))
def test_complex_on_tensor_products(a, b):
    M = tensor(sym_module(a), sym_module(b))
    assert M.is_representation()
    assert not CEComplex(M.algebra, M, max_degree=3).defects()
    z, bb, h = cohomology_dims(M.algebra, M, 1)
    assert bb == M.dim - len(M.invariants())
    assert h == 0


def _pool_subalgebras():
    out = []
    for pool, seed in ((sl2_pool, 1), (sl3_pool, 2), (so5_pool, 3)):
        L, p = pool()
        out.extend(random_subalgebras(L, p, 5, seed))
    return out


@pytest.mark.parametrize("g", _pool_subalgebras(), ids=lambda g: f"dim{g.dim}in{g.parent.dim}")
def test_quotient_complex_against_oracle(g):
    M = quotient_module(g)
    assert M.is_representation()
    assert not CEComplex(g, M, max_degree=2).defects()
    rv = rigidity_verdict(g)
    assert (rv.dim_Z1, rv.dim_B1) == oracles.subalgebra_cohomology(g.parent, g.basis.rows)
    assert rv.dim_B1 == M.dim - rv.dim_invariants
    if is_semisimple(g.algebra):
        assert rv.dim_H1 == 0 and rv.rigid


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_whitehead_adjoint_sl(n):
    L = sl(n)
    assert cohomology_dims(L, adjoint_module(L), 1) == (L.dim, L.dim, 0)


def test_rigidity_invariant_under_basis_change_and_conjugation():
    rng = np.random.default_rng(7)
    for pool in (sl3_pool, so5_pool):
        L, p = pool()
        for rows in p:
            g = Subalgebra(L, rows)
            base = rigidity_verdict(g)
            d = g.dim
            while True:
                change = QMatrix([[int(x) for x in r] for r in rng.integers(-3, 4, size=(d, d))])
                if change.det():
                    break
            assert rigidity_verdict(g.mixed(change)) == base
            phi = random_automorphism(L, rng, steps=3)
            assert rigidity_verdict(conjugate_subalgebra(g, phi)) == base


FAMILIA1 = [
    ["0", "x1 + t*x2", "x2", "0", "x4 + t*x5", "x5"],
    ["0", "-x0", "0", "0", "-x3", "0"],
    ["0", "-t*x0", "-x0", "0", "-t*x3", "-x3"],
]


def familia1():
    return [PolyVectorField.parse(c, has_param=True, name=f"X{i + 1}") for i, c in enumerate(FAMILIA1)]


def test_familia1_table():
    t = RatFunc.t()
    fc = family_closure_check(familia1())
    assert fc.closed
    assert fc.table == {(0, 1): [0, 1, 0], (0, 2): [0, t, 1], (1, 2): [0, 0, 0]}
    vf = family_closure_check(familia1(), convention="vector_field")
    assert vf.table[(0, 2)] == [0, -t, -1]


@pytest.mark.parametrize("t0", [0, 1, 2, Fraction(-3, 7)])
def test_family_specialization_agrees_with_fibers(t0):
    fam = familia1()
    generic = family_closure_check(fam)
    fiber = family_closure_check([X.specialize(t0) for X in fam])
    assert fiber.closed
    assert fiber.specialize(t0) == generic.specialize(t0)


def test_family_witness_and_errors():
    X = PolyVectorField.parse(["0", "x0", "0"])
    Y = PolyVectorField.parse(["0", "0", "x1"])
    fc = family_closure_check([X, Y], convention="vector_field")
    assert not fc.closed
    assert fc.bracket == PolyVectorField.parse(["0", "0", "x0"]).with_param()
    assert family_closure_check([X]).closed
    with pytest.raises(FamilyError):
        family_closure_check([X, X.scale(2)])
    with pytest.raises(ValueError):
        family_closure_check([X], convention="left")
