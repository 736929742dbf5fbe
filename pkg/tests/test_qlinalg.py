from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lierigid.qlinalg import (
    QMatrix,
    RatFunc,
    SpanCoordinates,
    UPoly,
    as_fraction,
    kernel_basis,
    rank,
    rank_ratfunc,
    rref,
    solve_ratfunc,
)

import oracles

small = st.integers(-5, 5)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_rank_examples():
    assert rank(QMatrix.identity(2)) == 2
    assert rank(QMatrix.zeros(3, 4)) == 0
    assert rank([[1, 2], [2, 4]]) == 1


def test_kernel_examples():
    assert kernel_basis(QMatrix.identity(3)) == []
    zero = kernel_basis(QMatrix.zeros(2, 3))
    assert zero == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    (v,) = kernel_basis([[1, 1]])
    assert v[0] == -v[1] != 0


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    assert as_fraction("3/4") == Fraction(3, 4)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rank_nullity_against_oracle(rows):
    m = QMatrix(rows)
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == m.ncols
    assert rank(m) == oracles.rank(rows)
    for v in ker:
        assert not any(m.apply(v))


@settings(max_examples=50, deadline=None)
@given(matrices())
def test_kernel_is_canonical(rows):
    """Kernel bases do not depend on the presentation of the row space."""
    m = QMatrix(rows)
    shuffled = QMatrix(list(reversed(rows)) + [[a + b for a, b in zip(rows[0], rows[-1])]])
    assert kernel_basis(m) == kernel_basis(shuffled)


def test_rref_pivots():
    r, piv = rref([[0, 2, 4], [1, 1, 1]])
    assert piv == [0, 1]
    assert r.rows == ((1, 0, -1), (0, 1, 2))


def test_span_coordinates():
    sc = SpanCoordinates([(1, 1, 0), (0, 1, 1)])
    assert sc.coords((1, 3, 2)) == (1, 2)
    assert not sc.contains((1, 0, 0))
    with pytest.raises(ValueError):
        sc.coords((1, 0, 0))


def test_det_and_products():
    A = QMatrix([[1, 2], [3, 4]])
    assert A.det() == -2
    assert (A @ QMatrix.identity(2)) == A
    assert A.commutator(A).is_zero()
    assert A.T.rows == ((1, 3), (2, 4))


def test_upoly_gcd():
    t = UPoly.t()
    a = (t - UPoly([1])) * (t + UPoly([2]))
    b = (t - UPoly([1])) * (t + UPoly([3]))
    assert a.gcd(b) == t - UPoly([1])


def test_ratfunc_reduces():
    t = RatFunc.t()
    r = (t * t - 1) / (t - 1)
    assert r == t + 1
    assert r(2) == 3


def test_rank_ratfunc_examples():
    t = RatFunc.t()
    assert rank_ratfunc([[t, 0], [0, 1]]) == 2
    assert rank_ratfunc([[t, t * t], [1, t]]) == 1
    assert rank_ratfunc([[t - 1]]) == 1


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.tuples(small, small), min_size=3, max_size=3), min_size=1, max_size=3),
       st.integers(-20, 20))
def test_rank_ratfunc_specializes(entries, t0):
    """Generic rank is at least the rank of any specialisation, and equal away from finitely many t0."""
    m = [[RatFunc(UPoly([a, b])) for a, b in row] for row in entries]
    fiber = [[c(t0) for c in row] for row in m]
    assert rank(fiber) <= rank_ratfunc(m)
    samples = [rank([[c(s) for c in row] for row in m]) for s in range(100, 110)]
    assert max(samples) == rank_ratfunc(m)


def test_solve_ratfunc():
    t = RatFunc.t()
    a = [[1, 0], [t, 1], [0, 0]]
    x, res = solve_ratfunc(a, [t, t * t + 2, 0])
    assert x == [t, RatFunc(2)]
    x, res = solve_ratfunc(a, [0, 0, 1])
    assert x is None and any(res)
