"""Chevalley-Eilenberg cochains, differentials and rigidity verdicts.

C^k(g, M) = Hom(Lambda^k g, M) is coordinatised by pairs (S, a) where S runs
over k-subsets of the g-basis in lexicographic order and a over the M-basis;
the flat index is ``subset_index * dim M + a``.

The differential is

    (df)(x_1 ^ ... ^ x_{k+1}) = sum_i (-1)^i x_i . f(..., x_i omitted, ...)
                               - sum_{i<j} (-1)^(i+j) f([x_i, x_j] ^ rest)

with i, j counted from 1, so that (d^0 m)(x) = -x . m.  This is the negative
of the usual Chevalley-Eilenberg differential; kernels and images coincide.
Keeping (-1)^(i+j) on the second sum together with (-1)^i on the first does
not give a complex (d^1 d^0 m = 2 [x_1, x_2] . m).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .liecore import GModule, LieAlgebra, Subalgebra, quotient_module
from .poly import MultiPoly
from .qlinalg import QMatrix, RatFunc, UPoly, rank, rank_ratfunc, solve_ratfunc

__all__ = [
    "CEComplex",
    "RigidityReport",
    "RepresentationError",
    "ce_differential",
    "cohomology_dims",
    "rigidity_verdict",
    "family_closure_check",
    "FamilyClosure",
    "FamilyError",
]


class RepresentationError(ValueError):
    pass


def _acting(g) -> LieAlgebra:
    return g.algebra if isinstance(g, Subalgebra) else g


def _check_module(L: LieAlgebra, M: GModule):
    if M.algebra.dim != L.dim:
        raise ValueError("module is over an algebra of a different dimension")
    bad = M.representation_defects()
    if bad:
        raise RepresentationError(f"module action violates the representation law on basis pairs {bad[:5]}")


def _sparse_differential(L: LieAlgebra, M: GModule, k: int) -> tuple[list[dict], int, int]:
    """Sparse rows of delta^k: one row per coordinate of C^{k+1}."""
    d, m = L.dim, M.dim
    src = {S: n for n, S in enumerate(combinations(range(d), k))}
    tgt = list(combinations(range(d), k + 1))
    acts = [A.sparse_rows() for A in M.action]  # acts[x][row] = {col: val}
    struct = {(i, j): L.structure(i, j) for i in range(d) for j in range(i + 1, d)}
    rows: list[dict] = []
    for T in tgt:
        block = [dict() for _ in range(m)]  # block[a] = row for output coordinate a
        # first sum: (-1)^i x_i . f(T minus x_i)
        for pos, xi in enumerate(T):
            sign = -1 if (pos + 1) % 2 else 1
            base = src[T[:pos] + T[pos + 1:]] * m
            for a, arow in enumerate(acts[xi]):
                for b, v in arow.items():
                    col = base + b
                    block[a][col] = block[a].get(col, 0) + sign * v
        # second sum: -(-1)^(i+j) f([x_i, x_j] ^ rest)
        for p, q in combinations(range(k + 1), 2):
            sign = -1 if (p + q) % 2 == 0 else 1  # (p+1)+(q+1) has the parity of p+q
            rest = T[:p] + T[p + 1:q] + T[q + 1:]
            for l, c in struct.get((T[p], T[q]), {}).items():
                if l in rest:
                    continue
                # move e_l from the front into sorted position
                shift = sum(1 for r in rest if r < l)
                s = sign * (-1 if shift % 2 else 1)
                S = tuple(sorted(rest + (l,)))
                base = src[S] * m
                for a in range(m):
                    col = base + a
                    block[a][col] = block[a].get(col, 0) + s * c
        for a in range(m):
            rows.append({j: Fraction(v) for j, v in block[a].items() if v})
    return rows, len(tgt) * m, len(src) * m


def ce_differential(g, M: GModule, k: int) -> QMatrix:
    """Matrix of delta^k : C^k(g, M) -> C^{k+1}(g, M)."""
    L = _acting(g)
    if k < 0:
        raise ValueError("degree must be non-negative")
    _check_module(L, M)
    rows, nr, nc = _sparse_differential(L, M, k)
    return QMatrix.from_sparse(nr, nc, rows)


def _rank_delta(L, M, k) -> int:
    if k < 0 or k > L.dim:
        return 0
    rows, nr, nc = _sparse_differential(L, M, k)
    if nr == 0 or nc == 0:
        return 0
    return rank(QMatrix.from_sparse(nr, nc, rows))


def _cochain_dim(L, M, k) -> int:
    if k < 0 or k > L.dim:
        return 0
    return comb(L.dim, k) * M.dim


def cohomology_dims(g, M: GModule, k: int) -> tuple[int, int, int]:
    """(dim Z^k, dim B^k, dim H^k); B^0 = 0."""
    L = _acting(g)
    if k < 0:
        raise ValueError("degree must be non-negative")
    _check_module(L, M)
    z = _cochain_dim(L, M, k) - _rank_delta(L, M, k)
    b = _rank_delta(L, M, k - 1) if k > 0 else 0
    return z, b, z - b


class CEComplex:
    """Truncated cochain complex C^0 -> ... -> C^max_degree with its differentials."""

    def __init__(self, g, M: GModule, max_degree: int = 2):
        if max_degree < 1:
            raise ValueError("max_degree must be at least 1")
        self.algebra = _acting(g)
        self.module = M
        self.max_degree = max_degree
        _check_module(self.algebra, M)
        self.differentials = [ce_differential(self.algebra, M, k) for k in range(max_degree)]

    def defects(self) -> list[int]:
        """Degrees k where delta^{k+1} delta^k is not exactly zero."""
        bad = []
        for k in range(len(self.differentials) - 1):
            d0, d1 = self.differentials[k], self.differentials[k + 1]
            if d0.nrows and d1.nrows and d0.ncols and not (d1 @ d0).is_zero():
                bad.append(k)
        return bad

    def dims(self, k: int) -> tuple[int, int, int]:
        return cohomology_dims(self.algebra, self.module, k)


@dataclass(frozen=True)
class RigidityReport:
    dim_Z1: int
    dim_B1: int
    dim_H1: int
    rigid: bool
    dim_invariants: int
    dim_algebra: int
    dim_module: int

    def as_dict(self) -> dict:
        return {
            "dim_algebra": self.dim_algebra,
            "dim_module": self.dim_module,
            "dim_Z1": self.dim_Z1,
            "dim_B1": self.dim_B1,
            "dim_H1": self.dim_H1,
            "dim_invariants": self.dim_invariants,
            "rigid": self.rigid,
        }


def rigidity_verdict(g: Subalgebra) -> RigidityReport:
    """Z^1 and B^1 of g with coefficients in L/g; rigid iff they agree."""
    M = quotient_module(g)
    z, b, h = cohomology_dims(g.algebra, M, 1)
    inv = len(M.invariants())
    return RigidityReport(z, b, h, z == b, inv, g.dim, M.dim)


# ---------------------------------------------------------------------------
# closure of parameterised families of vector fields
# ---------------------------------------------------------------------------

class FamilyError(ValueError):
    pass


@dataclass
class FamilyClosure:
    closed: bool
    table: dict[tuple[int, int], list[RatFunc]] | None = None
    pair: tuple[int, int] | None = None
    bracket: object | None = None  # PolyVectorField witness
    residual: list[RatFunc] | None = None
    convention: str = "action"

    def specialize(self, t0) -> dict[tuple[int, int], list[Fraction]]:
        return {key: [c(t0) for c in v] for key, v in (self.table or {}).items()}


def _poly_to_ratfunc(coeffs: dict[int, Fraction]) -> RatFunc:
    top = max(coeffs)
    return RatFunc(UPoly([coeffs.get(i, 0) for i in range(top + 1)]))


def _field_rows(field, keys: list) -> list[RatFunc]:
    out = []
    parts = [c.split_param() for c in field.components]
    for i, mono in keys:
        c = parts[i].get(mono)
        out.append(_poly_to_ratfunc(c) if c else RatFunc(0))
    return out


def family_closure_check(fields: Sequence, convention: str = "action") -> FamilyClosure:
    """Bracket table of a t-dependent family of fields over Q(t).

    ``convention="vector_field"`` uses the bracket of vector fields as
    derivations.  The default ``"action"`` negates it, which is the bracket
    of the Lie algebra acting on the left (for linear fields X_A this is the
    matrix commutator [A, B]).  Both describe the same span, so the closure
    verdict does not depend on the choice.
    """
    from .geom import bracket_vf  # geom depends on this module's siblings only

    if convention not in ("action", "vector_field"):
        raise ValueError("convention must be 'action' or 'vector_field'")
    fields = [f.with_param() for f in fields]
    keyset = set()
    for f in fields:
        for i, comp in enumerate(f.components):
            keyset.update((i, mono) for mono in comp.split_param())
    pairs_brackets = {}
    for a, b in combinations(range(len(fields)), 2):
        br = bracket_vf(fields[a], fields[b])
        if convention == "action":
            br = -br
        pairs_brackets[(a, b)] = br
        for i, comp in enumerate(br.components):
            keyset.update((i, mono) for mono in comp.split_param())
    keys = sorted(keyset)
    cols = [_field_rows(f, keys) for f in fields]
    A = [list(r) for r in zip(*cols)] if cols else []
    if rank_ratfunc(A) < len(fields):
        raise FamilyError("generators are linearly dependent over Q(t)")
    table = {}
    for (a, b), br in pairs_brackets.items():
        rhs = _field_rows(br, keys)
        sol, residual = solve_ratfunc(A, rhs)
        if sol is None:
            return FamilyClosure(False, None, (a, b), br, residual, convention)
        table[(a, b)] = sol
    return FamilyClosure(True, table, convention=convention)


def poly_in_t(p: MultiPoly) -> RatFunc:
    """A polynomial involving only t, as an element of Q(t)."""
    if any(any(e[:-1]) for e in p.terms):
        raise ValueError("polynomial depends on x-variables")
    return _poly_to_ratfunc({e[-1]: c for e, c in p.terms.items()}) if p else RatFunc(0)
