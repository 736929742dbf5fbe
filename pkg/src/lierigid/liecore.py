"""Finite-dimensional Lie algebras over Q given by structure constants.

Also subalgebras (as coordinate rows in a parent algebra), modules given by
action matrices, the Killing form, and constructors for sl(n), orthogonal
algebras of a symmetric form and the sl2 action on binary forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Mapping, Sequence

from .qlinalg import QMatrix, SpanCoordinates, as_fraction, kernel_basis, rank, rref

__all__ = [
    "LieAlgebra",
    "Subalgebra",
    "GModule",
    "ValidationReport",
    "ClosureResult",
    "LieAlgebraError",
    "ClosureError",
    "InvariantFormError",
    "validate",
    "subalgebra_closure_check",
    "quotient_module",
    "adjoint_module",
    "trivial_module",
    "killing_form",
    "is_semisimple",
    "sl",
    "so_from_form",
    "sl2_sym_power",
    "SymPowerRep",
    "invariant_symmetric_form",
    "matrix_lie_algebra",
    "matrix_coordinates",
    "sl2",
    "inner_automorphism",
    "nilpotent_elements",
    "conjugate_subalgebra",
]

ZERO = Fraction(0)


class LieAlgebraError(ValueError):
    pass


class ClosureError(LieAlgebraError):
    def __init__(self, result: "ClosureResult"):
        self.result = result
        i, j = result.pair
        super().__init__(f"subspace is not closed under the bracket: [b{i}, b{j}] leaves the span")


class InvariantFormError(LieAlgebraError):
    pass


def _vec(v, n) -> tuple[Fraction, ...]:
    v = tuple(as_fraction(x) for x in v)
    if len(v) != n:
        raise ValueError(f"expected a vector of length {n}, got {len(v)}")
    return v


class LieAlgebra:
    """Lie algebra with basis e_0..e_{d-1} and ``[e_i, e_j] = sum_k c[i][j][k] e_k``.

    ``brackets`` maps index pairs ``(i, j)`` to ``{k: coeff}``; pairs that are
    absent bracket to zero.  Only one of ``(i, j)``/``(j, i)`` needs to be
    given, the other is filled in by antisymmetry unless both are supplied
    (which is how :func:`validate` gets to see broken input).
    """

    def __init__(self, dim: int, brackets: Mapping, names: Sequence[str] | None = None,
                 matrices: Sequence[QMatrix] | None = None):
        self.dim = dim
        self.names = tuple(names) if names is not None else tuple(f"e{i}" for i in range(dim))
        if len(self.names) != dim:
            raise ValueError("number of names does not match the dimension")
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), vals in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexError(f"bracket index ({i}, {j}) out of range")
            items = vals.items() if isinstance(vals, Mapping) else vals
            entry: dict[int, Fraction] = {}
            for k, c in items:
                if not 0 <= k < dim:
                    raise IndexError(f"bracket target index {k} out of range")
                c = as_fraction(c)
                if c:
                    entry[k] = entry.get(k, ZERO) + c
            table[(i, j)] = {k: c for k, c in entry.items() if c}
        for (i, j), vals in list(table.items()):
            if (j, i) not in table and i != j:
                table[(j, i)] = {k: -c for k, c in vals.items()}
        self._table = {key: v for key, v in table.items() if v}
        self.matrices = tuple(matrices) if matrices is not None else None

    def structure(self, i: int, j: int) -> dict[int, Fraction]:
        return dict(self._table.get((i, j), {}))

    def bracket_basis(self, i: int, j: int) -> tuple[Fraction, ...]:
        out = [ZERO] * self.dim
        for k, c in self._table.get((i, j), {}).items():
            out[k] = c
        return tuple(out)

    def bracket(self, u: Sequence, v: Sequence) -> tuple[Fraction, ...]:
        u, v = _vec(u, self.dim), _vec(v, self.dim)
        out = [ZERO] * self.dim
        nu = [(i, a) for i, a in enumerate(u) if a]
        nv = [(j, b) for j, b in enumerate(v) if b]
        for i, a in nu:
            for j, b in nv:
                entry = self._table.get((i, j))
                if entry:
                    ab = a * b
                    for k, c in entry.items():
                        out[k] += ab * c
        return tuple(out)

    def ad(self, u: Sequence) -> QMatrix:
        """Matrix of ad(u); column j holds the coordinates of [u, e_j]."""
        cols = [self.bracket(u, self.basis_vector(j)) for j in range(self.dim)]
        return QMatrix(zip(*cols), ncols=self.dim) if self.dim else QMatrix.zeros(0, 0)

    def basis_vector(self, i: int) -> tuple[Fraction, ...]:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def nonzero_brackets(self):
        """Yield ``(i, j, {k: c})`` for i < j with nonzero bracket."""
        for (i, j), v in sorted(self._table.items()):
            if i < j:
                yield i, j, dict(v)

    def to_dict(self) -> dict:
        return {
            "kind": "structure",
            "dim": self.dim,
            "names": list(self.names),
            "brackets": [
                [i, j, [[k, str(c)] for k, c in sorted(v.items())]] for i, j, v in self.nonzero_brackets()
            ],
        }

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim})"


@dataclass
class ValidationReport:
    valid: bool
    antisymmetry_violations: list[tuple[int, int, tuple[Fraction, ...]]] = field(default_factory=list)
    jacobi_violations: list[tuple[tuple[int, int, int], tuple[Fraction, ...]]] = field(default_factory=list)


def validate(L: LieAlgebra) -> ValidationReport:
    """Check antisymmetry and the Jacobi identity on all basis pairs/triples."""
    d = L.dim
    tab = L._table
    anti = []
    for i in range(d):
        for j in range(i, d):
            s = tuple(a + b for a, b in zip(L.bracket_basis(i, j), L.bracket_basis(j, i)))
            if any(s):
                anti.append((i, j, s))

    def outer(i, inner):
        # [e_i, sum_l c_l e_l] accumulated sparsely
        acc: dict[int, Fraction] = {}
        for l, c in inner.items():
            for m, v in tab.get((i, l), {}).items():
                acc[m] = acc.get(m, ZERO) + c * v
        return acc

    jac = []
    for i, j, k in combinations(range(d), 3):
        res: dict[int, Fraction] = {}
        for a, (b, c) in ((i, (j, k)), (j, (k, i)), (k, (i, j))):
            inner = tab.get((b, c))
            if inner:
                for m, v in outer(a, inner).items():
                    res[m] = res.get(m, ZERO) + v
        if any(res.values()):
            vec = [ZERO] * d
            for m, v in res.items():
                vec[m] = v
            jac.append(((i, j, k), tuple(vec)))
    return ValidationReport(not anti and not jac, anti, jac)


# ---------------------------------------------------------------------------
# subalgebras and modules
# ---------------------------------------------------------------------------

@dataclass
class ClosureResult:
    closed: bool
    pair: tuple[int, int] | None = None
    residual: tuple[Fraction, ...] | None = None
    bracket: tuple[Fraction, ...] | None = None


class Subalgebra:
    """Span of coordinate rows inside a parent algebra."""

    def __init__(self, parent: LieAlgebra, basis: Sequence[Sequence] | QMatrix, names: Sequence[str] | None = None):
        rows = basis.rows if isinstance(basis, QMatrix) else [tuple(as_fraction(x) for x in r) for r in basis]
        self.parent = parent
        self.basis = QMatrix(rows, ncols=parent.dim)
        if rank(self.basis) != self.basis.nrows:
            raise LieAlgebraError("subalgebra basis rows are linearly dependent")
        self.dim = self.basis.nrows
        self.names = tuple(names) if names is not None else tuple(f"g{i}" for i in range(self.dim))

    @classmethod
    def full(cls, L: LieAlgebra) -> "Subalgebra":
        return cls(L, QMatrix.identity(L.dim), names=L.names)

    @cached_property
    def _coords(self) -> SpanCoordinates:
        return SpanCoordinates(self.basis.rows)

    def coordinates(self, v: Sequence) -> tuple[Fraction, ...]:
        return self._coords.coords(v)

    def contains(self, v: Sequence) -> bool:
        return self._coords.contains(v) if self.dim else not any(v)

    @cached_property
    def algebra(self) -> LieAlgebra:
        """The subalgebra as an abstract Lie algebra in its own basis."""
        check = subalgebra_closure_check(self)
        if not check.closed:
            raise ClosureError(check)
        brackets = {}
        rows = self.basis.rows
        for i, j in combinations(range(self.dim), 2):
            b = self.parent.bracket(rows[i], rows[j])
            if any(b):
                c = self.coordinates(b)
                brackets[(i, j)] = {k: x for k, x in enumerate(c) if x}
        return LieAlgebra(self.dim, brackets, names=self.names)

    def mixed(self, change: QMatrix) -> "Subalgebra":
        """Same subspace in the basis ``change @ basis`` (change invertible)."""
        if change.det() == 0:
            raise ValueError("change of basis must be invertible")
        return Subalgebra(self.parent, change @ self.basis)

    def __repr__(self):
        return f"Subalgebra(dim={self.dim} in dim {self.parent.dim})"


def subalgebra_closure_check(g: Subalgebra) -> ClosureResult:
    """True iff every bracket of basis rows lies in their span."""
    rows = g.basis.rows
    for i, j in combinations(range(g.dim), 2):
        b = g.parent.bracket(rows[i], rows[j])
        res = g._coords.residual(b) if g.dim else list(b)
        if any(res):
            return ClosureResult(False, (i, j), tuple(res), b)
    return ClosureResult(True)


class GModule:
    """Representation of ``algebra`` on Q^dim by one matrix per basis element."""

    def __init__(self, algebra: LieAlgebra | Subalgebra, action: Sequence[QMatrix], name: str = "M"):
        self.algebra = algebra.algebra if isinstance(algebra, Subalgebra) else algebra
        self.action = tuple(action)
        if len(self.action) != self.algebra.dim:
            raise ValueError("need one action matrix per algebra basis element")
        dims = {a.shape for a in self.action}
        if len(dims) > 1:
            raise ValueError("action matrices must share one square shape")
        if self.action:
            n, m = self.action[0].shape
            if n != m:
                raise ValueError("action matrices must be square")
            self.dim = n
        else:
            self.dim = 0
        self.name = name

    @classmethod
    def zero_dim_algebra(cls, module_dim: int) -> "GModule":
        M = cls(LieAlgebra(0, {}), [])
        M.dim = module_dim
        return M

    def act(self, x: Sequence, m: Sequence) -> tuple[Fraction, ...]:
        """x . m for algebra coordinates ``x`` and module coordinates ``m``."""
        out = [ZERO] * self.dim
        for xi, A in zip(x, self.action):
            if xi:
                for k, v in enumerate(A.apply(m)):
                    out[k] += xi * v
        return tuple(out)

    def representation_defects(self) -> list[tuple[int, int]]:
        """Basis pairs where rho([x,y]) != rho(x)rho(y) - rho(y)rho(x)."""
        bad = []
        A = self.action
        for i, j in combinations(range(self.algebra.dim), 2):
            lhs = QMatrix.zeros(self.dim, self.dim)
            for k, c in self.algebra.structure(i, j).items():
                lhs = lhs + A[k].scale(c)
            if lhs != A[i].commutator(A[j]):
                bad.append((i, j))
        return bad

    def is_representation(self) -> bool:
        return not self.representation_defects()

    def invariants(self) -> list[tuple[Fraction, ...]]:
        """Basis of M^g, the common kernel of the action matrices."""
        if not self.action:
            return [tuple(Fraction(int(i == j)) for i in range(self.dim)) for j in range(self.dim)]
        return kernel_basis(QMatrix.vstack(self.action, ncols=self.dim))

    def __repr__(self):
        return f"GModule({self.name}, dim={self.dim}, algebra dim={self.algebra.dim})"


def complement_basis(g: Subalgebra) -> list[int]:
    """Indices of the standard basis vectors completing g's echelon basis."""
    _, pivots = rref(g.basis)
    piv = set(pivots)
    return [j for j in range(g.parent.dim) if j not in piv]


def quotient_module(g: Subalgebra) -> GModule:
    """L/g as a g-module, in the basis of standard vectors at the non-pivot columns."""
    check = subalgebra_closure_check(g)
    if not check.closed:
        raise ClosureError(check)
    L = g.parent
    comp = complement_basis(g)
    m = len(comp)
    full = SpanCoordinates(list(g.basis.rows) + [L.basis_vector(j) for j in comp])
    action = []
    for x in g.basis.rows:
        cols = []
        for j in comp:
            c = full.coords(L.bracket(x, L.basis_vector(j)))
            cols.append(c[g.dim:])
        action.append(QMatrix(zip(*cols), ncols=m) if m else QMatrix.zeros(0, 0))
    M = GModule(g.algebra, action, name="L/g")
    M.complement = comp
    return M


def adjoint_module(L: LieAlgebra) -> GModule:
    return GModule(L, [L.ad(L.basis_vector(i)) for i in range(L.dim)], name="adjoint")


def trivial_module(L: LieAlgebra, dim: int) -> GModule:
    if L.dim == 0:
        return GModule.zero_dim_algebra(dim)
    return GModule(L, [QMatrix.zeros(dim, dim)] * L.dim, name="trivial")


# ---------------------------------------------------------------------------
# Killing form
# ---------------------------------------------------------------------------

def killing_form(L: LieAlgebra) -> QMatrix:
    ads = [L.ad(L.basis_vector(i)) for i in range(L.dim)]
    K = [[(ads[i] @ ads[j]).trace() for j in range(L.dim)] for i in range(L.dim)]
    return QMatrix(K, ncols=L.dim)


def is_semisimple(L: LieAlgebra) -> bool:
    """Cartan's criterion: the Killing form is nondegenerate."""
    if L.dim == 0:
        return True
    return killing_form(L).det() != 0


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def matrix_lie_algebra(mats: Sequence[QMatrix], names: Sequence[str] | None = None) -> LieAlgebra:
    """Structure constants of a commutator-closed family of independent matrices."""
    flat = SpanCoordinates([m.flat() for m in mats])
    brackets = {}
    for i, j in combinations(range(len(mats)), 2):
        c = mats[i].commutator(mats[j])
        if not c.is_zero():
            try:
                co = flat.coords(c.flat())
            except ValueError:
                raise LieAlgebraError(f"matrices are not closed under commutators: pair ({i}, {j})") from None
            brackets[(i, j)] = {k: x for k, x in enumerate(co) if x}
    L = LieAlgebra(len(mats), brackets, names=names, matrices=mats)
    L._matrix_coords = flat
    return L


def matrix_coordinates(L: LieAlgebra, A: QMatrix) -> tuple[Fraction, ...]:
    """Coordinates of a matrix in a matrix Lie algebra's basis."""
    if L.matrices is None:
        raise LieAlgebraError("algebra has no matrix realisation")
    return L._matrix_coords.coords(A.flat())


def _unit(n, i, j):
    return QMatrix([[1 if (r, c) == (i, j) else 0 for c in range(n)] for r in range(n)], ncols=n)


def sl(n: int) -> LieAlgebra:
    """Traceless n x n matrices.

    Basis in row-major position order: E_ij for i != j, and at position
    (i, i), i < n-1, the diagonal element E_ii - E_{i+1,i+1}.
    """
    if n < 2:
        raise ValueError("sl(n) needs n >= 2")
    mats, names = [], []
    for i in range(n):
        for j in range(n):
            if i != j:
                mats.append(_unit(n, i, j))
                names.append(f"E{i}{j}")
            elif i < n - 1:
                mats.append(_unit(n, i, i) - _unit(n, i + 1, i + 1))
                names.append(f"H{i}")
    return matrix_lie_algebra(mats, names)


def so_from_form(B: QMatrix) -> LieAlgebra:
    """{A : A^T B + B A = 0} for a symmetric invertible form B."""
    n = B.nrows
    if B.ncols != n or B != B.T:
        raise LieAlgebraError("form must be symmetric")
    if B.det() == 0:
        raise LieAlgebraError("form must be nondegenerate")
    # unknown A[r][c] sits at index r*n + c; equation (i, j) for i <= j
    eqs = []
    for i in range(n):
        for j in range(i, n):
            row = [Fraction(0)] * (n * n)
            for k in range(n):
                # (A^T B)_{ij} = sum_k A[k][i] B[k][j];  (B A)_{ij} = sum_k B[i][k] A[k][j]
                row[k * n + i] += B[k, j]
                row[k * n + j] += B[i, k]
            eqs.append(row)
    sols = kernel_basis(eqs)
    mats = [QMatrix([v[r * n:(r + 1) * n] for r in range(n)], ncols=n) for v in sols]
    mats.sort(key=lambda m: next(i for i, x in enumerate(m.flat()) if x))
    return matrix_lie_algebra(mats, [f"A{i}" for i in range(len(mats))])


@dataclass
class SymPowerRep:
    """sl2 acting on binary forms of degree m in the basis u^m, u^(m-1)v, ..., v^m."""

    m: int
    h: QMatrix
    e: QMatrix
    f: QMatrix
    ambient: LieAlgebra  # sl(m+1)
    subalgebra: Subalgebra  # image of (h, e, f)

    @property
    def matrices(self) -> tuple[QMatrix, QMatrix, QMatrix]:
        return self.h, self.e, self.f


def sl2_sym_power(m: int) -> SymPowerRep:
    if m < 1:
        raise ValueError("sl2_sym_power needs m >= 1")
    n = m + 1
    h = [[0] * n for _ in range(n)]
    e = [[0] * n for _ in range(n)]
    f = [[0] * n for _ in range(n)]
    for k in range(n):  # basis vector k is u^(m-k) v^k
        h[k][k] = m - 2 * k
        if k > 0:
            e[k - 1][k] = k  # u d/dv
        if k < m:
            f[k + 1][k] = m - k  # v d/du
    H, E, F = (QMatrix(x, ncols=n) for x in (h, e, f))
    L = sl(n)
    g = Subalgebra(L, [matrix_coordinates(L, X) for X in (H, E, F)], names=("h", "e", "f"))
    return SymPowerRep(m, H, E, F, L, g)


def sl2() -> LieAlgebra:
    """sl2 with basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    return LieAlgebra(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}, names=("h", "e", "f"))


def invariant_symmetric_form(rep: Sequence[QMatrix]) -> QMatrix:
    """The unique (up to scale) symmetric B with X^T B + B X = 0 for all X in rep."""
    if not rep:
        raise InvariantFormError("empty representation")
    n = rep[0].nrows
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    index = {p: k for k, p in enumerate(pairs)}

    def var(i, j):
        return index[(min(i, j), max(i, j))]

    eqs = []
    for X in rep:
        for i in range(n):
            for j in range(i, n):
                row = [Fraction(0)] * len(pairs)
                for k in range(n):
                    if X[k, i]:
                        row[var(k, j)] += X[k, i]
                    if X[k, j]:
                        row[var(i, k)] += X[k, j]
                eqs.append(row)
    sols = kernel_basis(eqs)
    if not sols:
        raise InvariantFormError("no nonzero invariant symmetric form")
    if len(sols) > 1:
        raise InvariantFormError(f"invariant symmetric form is not unique (solution space of dimension {len(sols)})")
    v = sols[0]
    B = [[v[var(i, j)] for j in range(n)] for i in range(n)]
    return QMatrix(B, ncols=n)


# ---------------------------------------------------------------------------
# inner automorphisms
# ---------------------------------------------------------------------------

def inner_automorphism(L: LieAlgebra, x: Sequence) -> QMatrix:
    """exp(ad x) as an exact finite sum; requires ad x nilpotent."""
    A = L.ad(x)
    term = QMatrix.identity(L.dim)
    total = term
    for k in range(1, L.dim + 1):
        term = (term @ A).scale(Fraction(1, k))
        if term.is_zero():
            return total
        total = total + term
    raise LieAlgebraError("ad x is not nilpotent")


def nilpotent_elements(L: LieAlgebra) -> list[int]:
    """Indices of basis elements whose adjoint is nilpotent."""
    out = []
    for i in range(L.dim):
        A = L.ad(L.basis_vector(i))
        P = A
        for _ in range(L.dim):
            P = P @ A
            if P.is_zero():
                out.append(i)
                break
    return out


def conjugate_subalgebra(g: Subalgebra, phi: QMatrix) -> Subalgebra:
    """Image of g under a Lie algebra automorphism given as a matrix on coordinates."""
    return Subalgebra(g.parent, [phi.apply(r) for r in g.basis.rows])
