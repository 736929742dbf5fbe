"""Recompute the frozen derived values in tests/fixtures/derived.json.

Every number comes from the sympy oracles in tests/oracles.py or from a
direct sympy construction; the package only supplies input data
(structure constants and matrices of the catalog entries).

    python scripts/derive_fixtures.py            # print
    python scripts/derive_fixtures.py --write    # refresh the fixture file
"""

import argparse
import json
import random
import sys
from pathlib import Path

import sympy

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

import oracles  # noqa: E402
from lierigid.catalog import build  # noqa: E402

FIXTURE = ROOT / "tests" / "fixtures" / "derived.json"


def sym4_weights():
    u, v = sympy.symbols("u v")
    basis = [u ** (4 - k) * v ** k for k in range(5)]
    # h acts on binary forms as u d/du - v d/dv
    return [int(sympy.simplify((u * sympy.diff(b, u) - v * sympy.diff(b, v)) / b)) for b in basis]


def sym4_invariant_form():
    u, v = sympy.symbols("u v")
    basis = [u ** (4 - k) * v ** k for k in range(5)]
    ops = [lambda p: u * sympy.diff(p, u) - v * sympy.diff(p, v),
           lambda p: u * sympy.diff(p, v),
           lambda p: v * sympy.diff(p, u)]
    mats = []
    for op in ops:
        M = sympy.zeros(5, 5)
        for j, b in enumerate(basis):
            img = sympy.Poly(sympy.expand(op(b)), u, v)
            for i, bi in enumerate(basis):
                M[i, j] = img.coeff_monomial(bi)
        mats.append(M)
    syms = sympy.symbols("b0:15")
    B = sympy.zeros(5, 5)
    k = 0
    for i in range(5):
        for j in range(i, 5):
            B[i, j] = B[j, i] = syms[k]
            k += 1
    eqs = []
    for M in mats:
        eqs.extend(list(M.T * B + B * M))
    sol = sympy.solve(eqs, syms, dict=True)[0]
    Bs = B.subs(sol)
    free = sorted(Bs.free_symbols, key=str)
    assert len(free) == 1, "invariant form should be unique up to scale"
    Bs = Bs.subs(free[0], 1)
    lead = next(x for x in Bs if x != 0)
    Bs = Bs * (6 / lead)
    return [[str(x) for x in row] for row in Bs.tolist()], mats


def rank_at(fields_mats, p):
    rows = [list(M * sympy.Matrix(p)) for M in fields_mats] + [list(p)]
    return sympy.Matrix(rows).rank() - 1


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--write", action="store_true")
    args = ap.parse_args()
    rnd = random.Random(12345)
    out = {}

    for name, kw in (("exceptional-p3", {}), ("sl2-sym4", {}), ("adjoint-sln", {"n": 2}), ("adjoint-sln", {"n": 3})):
        e = build(name, **kw)
        z, b = oracles.subalgebra_cohomology(e.subalgebra.parent, e.subalgebra.basis.rows)
        key = name if not kw else f"{name}(n={kw['n']})"
        out[key] = {"dim_Z1": z, "dim_B1": b}

    out["sl2-sym4"]["h_weights"] = sym4_weights()
    form, mats = sym4_invariant_form()
    out["aff-so5-quadric"] = {"invariant_form": form}

    # tangent ranks of the sl2 fields and the aff fields on the quadric, at sympy-drawn points
    ranks = {rank_at(mats, [rnd.randint(-100, 100) for _ in range(5)]) for _ in range(10)}
    out["sl2-sym4"]["tangent_ranks"] = sorted(ranks)
    Bq = sympy.Matrix([[sympy.Rational(x) for x in r] for r in form])
    p0 = sympy.Matrix([1, 0, 0, 0, 0])
    qranks = set()
    for _ in range(10):
        w = sympy.Matrix([rnd.randint(-100, 100) for _ in range(5)])
        qw, bw = (w.T * Bq * w)[0], (p0.T * Bq * w)[0]
        pt = qw * p0 - 2 * bw * w
        assert (pt.T * Bq * pt)[0] == 0
        qranks.add(rank_at(mats[:2], list(pt)))
    out["aff-so5-quadric"]["tangent_ranks"] = sorted(qranks)

    # f raises the v-degree: its x4 component does not vanish on x4 = 0
    f_last_row = list(mats[2].row(4))
    out["exceptional-p3"] = dict(out["exceptional-p3"], f_preserves_hyperplane=not any(f_last_row[:4]))

    # tangent algebra of sl2 inside sl5: fields Y_A with A p in span(h p, e p, f p, p)
    n1 = 5
    unknowns = sympy.symbols("a0:25")
    A = sympy.Matrix(5, 5, unknowns)
    conds = []
    for _ in range(30):
        p = sympy.Matrix([rnd.randint(-100, 100) for _ in range(n1)])
        W = sympy.Matrix.hstack(*(M * p for M in mats), p)
        ann = W.T.nullspace()
        for a in ann:
            conds.append((a.T * A * p)[0])
    conds.append(A.trace())
    sol = sympy.linsolve(conds, unknowns)
    (vec,) = sol
    out["sl2-sym4"]["tangent_algebra_dim"] = len(set().union(*(sympy.sympify(x).free_symbols for x in vec)))

    # codigoM2: rank of the anchor map at a random point of P^5
    e = build("codigoM2")
    fm = [sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in X.linear_matrix().rows])
          for X in e.fields]
    out["codigoM2"] = {"orbit_dim": rank_at(fm, [rnd.randint(-100, 100) for _ in range(6)])}

    text = json.dumps(out, indent=2, sort_keys=True) + "\n"
    if args.write:
        FIXTURE.write_text(text)
    sys.stdout.write(text)


if __name__ == "__main__":
    main()
