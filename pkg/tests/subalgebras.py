"""Pools of bracket-closed subalgebras and random conjugates for the property suites."""

from fractions import Fraction

import numpy as np

from lierigid.liecore import (
    Subalgebra,
    conjugate_subalgebra,
    inner_automorphism,
    invariant_symmetric_form,
    matrix_coordinates,
    nilpotent_elements,
    sl,
    sl2_sym_power,
    so_from_form,
    subalgebra_closure_check,
)
from lierigid.qlinalg import QMatrix


def unit(n, i, j):
    return QMatrix([[int((a, b) == (i, j)) for b in range(n)] for a in range(n)])


def _coords(L, mats):
    return [matrix_coordinates(L, m) for m in mats]


def sl2_pool():
    L = sl(2)
    e, h, f = (matrix_coordinates(L, m) for m in (unit(2, 0, 1), QMatrix([[1, 0], [0, -1]]), unit(2, 1, 0)))
    return L, [[e], [h], [h, e], [h, f], [e, h, f]]


def principal_sl2(n):
    S = sl2_sym_power(n - 1)
    return [S.h, S.e, S.f]


def sl3_pool():
    L = sl(3)
    h1 = QMatrix([[1, 0, 0], [0, -1, 0], [0, 0, 0]])
    corner = [unit(3, 0, 1), h1, unit(3, 1, 0)]
    borel = [h1, QMatrix([[0, 0, 0], [0, 1, 0], [0, 0, -1]]), unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)]
    heis = [unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)]
    return L, [_coords(L, corner), _coords(L, principal_sl2(3)), _coords(L, borel), _coords(L, heis),
               _coords(L, [h1, unit(3, 0, 2)])]


def so5_pool():
    S = sl2_sym_power(4)
    B = invariant_symmetric_form([S.h, S.e, S.f])
    L = so_from_form(B)
    e3 = S.e @ S.e @ S.e
    f3 = S.f @ S.f @ S.f
    other = [e3, f3, e3.commutator(f3)]
    return L, [_coords(L, [S.h, S.e, S.f]), _coords(L, other), _coords(L, [S.h, S.e]),
               _coords(L, [S.e]), _coords(L, [S.h, e3])]


def random_automorphism(L, rng, steps=2):
    """Product of exp(ad(c x)) over random ad-nilpotent basis elements x."""
    nil = nilpotent_elements(L)
    phi = QMatrix.identity(L.dim)
    for _ in range(steps):
        i = nil[int(rng.integers(len(nil)))]
        c = Fraction(int(rng.integers(-3, 4)) or 1, int(rng.integers(1, 3)))
        x = tuple(c if k == i else Fraction(0) for k in range(L.dim))
        phi = inner_automorphism(L, x) @ phi
    return phi


def random_subalgebras(L, pool, count, seed):
    """``count`` random conjugates of pool members; each is checked to be closed."""
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        g = Subalgebra(L, pool[k % len(pool)])
        g = conjugate_subalgebra(g, random_automorphism(L, rng))
        assert subalgebra_closure_check(g).closed
        out.append(g)
    return out
