"""Independent reference computations built on sympy.

Nothing here calls the package's elimination, gcd or cochain code; only
plain data (structure constants, matrices) crosses over.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import sympy
from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def _qq(x):
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def dmatrix(rows, ncols=None) -> DomainMatrix:
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else (ncols or 0)
    return DomainMatrix([[_qq(x) for x in r] for r in rows], (len(rows), ncols), QQ)


def rank(rows, ncols=None) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    return dmatrix(rows, ncols).rank()


def nullspace(rows):
    M = sympy.Matrix([[sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in r] for r in rows])
    return M.nullspace()


def structure_tensor(L):
    """c[i][j] = coordinates of [e_i, e_j] as plain Fractions."""
    return [[list(L.bracket_basis(i, j)) for j in range(L.dim)] for i in range(L.dim)]


def _bracket(c, u, v):
    n = len(c)
    out = [Fraction(0)] * n
    for i in range(n):
        if not u[i]:
            continue
        for j in range(n):
            if not v[j]:
                continue
            for k, x in enumerate(c[i][j]):
                if x:
                    out[k] += u[i] * v[j] * x
    return out


def subalgebra_cohomology(L, g_rows):
    """(dim Z^1, dim B^1) of g with values in L/g, from the cocycle equations.

    A 1-cochain is a linear map F: g -> L (rows F[a] = f(g_a)) taken modulo
    maps into g.  It is a cocycle iff for all a < b
        f([g_a, g_b]) - [g_a, f(g_b)] + [g_b, f(g_a)]  lies in g.
    Coboundaries are x -> [x, m] for m in L.
    """
    c = structure_tensor(L)
    N, G = L.dim, [list(map(Fraction, r)) for r in g_rows]
    d = len(G)
    # annihilator P of g: rows p with p . g_a = 0
    P = [list(v) for v in nullspace(G)] if d else [[int(i == j) for j in range(N)] for i in range(N)]
    P = [[Fraction(int(x.p), int(x.q)) for x in row] for row in P]
    # structure constants of g in its own basis, via least squares on exact data
    Gm = sympy.Matrix(G).T
    def g_coords(v):
        sol = Gm.solve_least_squares(sympy.Matrix(v)) if d else sympy.Matrix([])
        return [Fraction(int(x.p), int(x.q)) for x in sol]
    s = {(a, b): g_coords(_bracket(c, G[a], G[b])) for a, b in combinations(range(d), 2)}
    # unknowns: F[a][k], flattened a * N + k
    eqs = []
    for a, b in combinations(range(d), 2):
        # vector-valued linear form in F: sum_e s_ab^e F[e] - ad(g_a) F[b] + ad(g_b) F[a]
        for prow in P:
            row = [Fraction(0)] * (d * N)
            for e, coef in enumerate(s[(a, b)]):
                if coef:
                    for k in range(N):
                        row[e * N + k] += coef * prow[k]
            for k in range(N):
                ek = [Fraction(int(i == k)) for i in range(N)]
                ga_ek = _bracket(c, G[a], ek)
                gb_ek = _bracket(c, G[b], ek)
                row[b * N + k] -= sum(p * x for p, x in zip(prow, ga_ek))
                row[a * N + k] += sum(p * x for p, x in zip(prow, gb_ek))
            eqs.append(row)
    r = rank(eqs, d * N) if eqs else 0
    z1 = d * N - r - d * d
    # coboundaries: image of m -> (P [g_a, m])_a
    cob_rows = []
    for k in range(N):
        ek = [Fraction(int(i == k)) for i in range(N)]
        cob_rows.append([sum(p * x for p, x in zip(prow, _bracket(c, G[a], ek))) for a in range(d) for prow in P])
    b1 = rank(cob_rows) if cob_rows and cob_rows[0] else 0
    return z1, b1


def module_cohomology(L, action):
    """(dim Z^1, dim B^1, dim H^0) of L with values in a module given by action matrices."""
    c = structure_tensor(L)
    d = L.dim
    m = len(action[0]) if action else 0
    A = [[[Fraction(x) for x in r] for r in M] for M in action]
    eqs = []
    for a, b in combinations(range(d), 2):
        # f([x_a, x_b]) - x_a f(x_b) + x_b f(x_a) = 0, unknown f(x_e)[k] at e * m + k
        for i in range(m):
            row = [Fraction(0)] * (d * m)
            for e, coef in enumerate(c[a][b]):
                if coef:
                    row[e * m + i] += coef
            for k in range(m):
                row[b * m + k] -= A[a][i][k]
                row[a * m + k] += A[b][i][k]
            eqs.append(row)
    z1 = d * m - (rank(eqs) if eqs else 0)
    stacked = [row for M in A for row in M]
    rk = rank(stacked, m) if stacked else 0
    return z1, rk, m - rk


def sympy_poly(p, nvars, has_param=False):
    xs = sympy.symbols(f"x0:{nvars}")
    syms = list(xs) + ([sympy.Symbol("t")] if has_param else [])
    expr = 0
    for e, cf in p.terms.items():
        term = sympy.Rational(cf.numerator, cf.denominator)
        for s, k in zip(syms, e):
            term *= s ** k
        expr += term
    return sympy.expand(expr), syms
