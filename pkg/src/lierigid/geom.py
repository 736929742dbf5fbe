"""Polynomial vector fields on P^n, the anchor map and pointwise rank computations.

Fields are stored as honest polynomial fields on C^(n+1).  Tangent data on P^n
is obtained at evaluation time by appending the Euler field E(p) = p, so a set
of field values at p spans a subspace of T_p P^n of dimension
``rank(values + [p]) - 1``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

import numpy as np

from .liecore import LieAlgebra, Subalgebra, subalgebra_closure_check
from .poly import MultiPoly, parse_poly
from .qlinalg import QMatrix, SpanCoordinates, as_fraction, kernel_basis, rank

__all__ = [
    "PolyVectorField",
    "ProjPoint",
    "QuadricModel",
    "FieldLieAlgebra",
    "GeometryError",
    "bracket_vf",
    "euler_field",
    "linear_field",
    "linear_fields_from_matrices",
    "anchor_compatible",
    "evaluate_mod_euler",
    "tangent_rank",
    "random_point",
    "generic_orbit_dim",
    "OrbitDimResult",
    "tangent_algebra",
    "TangentAlgebraResult",
    "restrict_to_hyperplane",
    "adjoint_kernel_sections",
    "AdjointKernelReport",
    "quadric_point",
    "quadric_sampler",
    "is_regular_matrix",
    "adjoint_field_algebra",
    "random_regular_traceless",
    "traceless_part",
]

log = logging.getLogger(__name__)

COORD_BOUND = 10**4


class GeometryError(ValueError):
    pass


class PolyVectorField:
    """sum_i components[i] d/dx_i on C^(n+1), viewed on P^n."""

    __slots__ = ("components", "name")

    def __init__(self, components: Sequence[MultiPoly], name: str = ""):
        comps = tuple(components)
        if not comps:
            raise ValueError("a vector field needs at least one component")
        nv = {(c.nvars, c.has_param) for c in comps}
        if len(nv) != 1 or comps[0].nvars != len(comps):
            raise ValueError("components must live in one ring with one variable per component")
        self.components = comps
        self.name = name

    @classmethod
    def parse(cls, exprs: Sequence[str], has_param: bool = False, name: str = "") -> "PolyVectorField":
        n1 = len(exprs)
        return cls([parse_poly(s, n1, has_param) for s in exprs], name=name)

    @property
    def n(self) -> int:
        """Ambient projective dimension."""
        return len(self.components) - 1

    @property
    def has_param(self) -> bool:
        return self.components[0].has_param

    def degree(self) -> int:
        """Common homogeneity degree of the components (-1 for the zero field)."""
        degs = {c.degree() for c in self.components if c}
        if not degs:
            return -1
        if len(degs) > 1 or not all(c.is_homogeneous() for c in self.components):
            raise GeometryError("components are not homogeneous of a common degree")
        return degs.pop()

    def is_zero(self) -> bool:
        return all(not c for c in self.components)

    def __call__(self, p: Sequence, t=None) -> tuple[Fraction, ...]:
        return tuple(c(p, t) for c in self.components)

    def __add__(self, other: "PolyVectorField") -> "PolyVectorField":
        _check_ambient(self, other)
        return PolyVectorField([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "PolyVectorField") -> "PolyVectorField":
        _check_ambient(self, other)
        return PolyVectorField([a - b for a, b in zip(self.components, other.components)])

    def __neg__(self) -> "PolyVectorField":
        return PolyVectorField([-a for a in self.components], name=self.name)

    def scale(self, c) -> "PolyVectorField":
        return PolyVectorField([a.scale(c) for a in self.components])

    def mul_poly(self, f: MultiPoly) -> "PolyVectorField":
        return PolyVectorField([f * a for a in self.components])

    def __eq__(self, other):
        return isinstance(other, PolyVectorField) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def specialize(self, t) -> "PolyVectorField":
        return PolyVectorField([c.specialize(t) for c in self.components], name=self.name)

    def with_param(self) -> "PolyVectorField":
        return PolyVectorField([c.with_param() for c in self.components], name=self.name)

    def linear_matrix(self) -> QMatrix:
        """A with X = X_A, for a field whose components are linear forms."""
        n1 = len(self.components)
        rows = []
        for c in self.components:
            if c.has_param and any(e[-1] for e in c.terms):
                raise GeometryError("field depends on the parameter; specialise it first")
            row = [Fraction(0)] * n1
            for e, v in c.terms.items():
                if sum(e[:n1]) != 1:
                    raise GeometryError("field is not linear")
                row[e[:n1].index(1)] = v
            rows.append(row)
        return QMatrix(rows, ncols=n1)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.components):
            if c:
                parts.append(f"({c})*d{i}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"PolyVectorField({str(self)!r})"


def _check_ambient(X: PolyVectorField, Y: PolyVectorField):
    if X.n != Y.n or X.has_param != Y.has_param:
        raise GeometryError(f"ambient mismatch: P^{X.n} vs P^{Y.n}")


def bracket_vf(X: PolyVectorField, Y: PolyVectorField) -> PolyVectorField:
    """[X, Y]_i = sum_j X_j d_j Y_i - Y_j d_j X_i."""
    _check_ambient(X, Y)
    n1 = len(X.components)
    dX = [[X.components[i].partial(j) for j in range(n1)] for i in range(n1)]
    dY = [[Y.components[i].partial(j) for j in range(n1)] for i in range(n1)]
    comps = []
    for i in range(n1):
        acc = MultiPoly.zero(n1, X.has_param)
        for j in range(n1):
            if X.components[j] and dY[i][j]:
                acc = acc + X.components[j] * dY[i][j]
            if Y.components[j] and dX[i][j]:
                acc = acc - Y.components[j] * dX[i][j]
        comps.append(acc)
    return PolyVectorField(comps)


def euler_field(n: int, has_param: bool = False) -> PolyVectorField:
    return PolyVectorField([MultiPoly.var(i, n + 1, has_param) for i in range(n + 1)], name="E")


def linear_field(A: QMatrix, name: str = "") -> PolyVectorField:
    """X_A with (X_A)_i = sum_j A_ij x_j."""
    if A.nrows != A.ncols:
        raise GeometryError("matrix must be square")
    return PolyVectorField([MultiPoly.linear(A.row(i)) for i in range(A.nrows)], name=name)


@dataclass
class FieldLieAlgebra:
    """Linear vector fields together with the Lie algebra they span.

    Structure constants come from :func:`bracket_vf`; since
    [X_A, X_B] = X_{BA - AB} they are the negatives of the matrix ones.
    """

    fields: list[PolyVectorField]
    algebra: LieAlgebra
    matrices: list[QMatrix]

    @property
    def n(self) -> int:
        return self.fields[0].n

    def coordinates_of_matrix(self, A: QMatrix) -> tuple[Fraction, ...]:
        return self._coords.coords(A.flat())

    def coordinates_of_field(self, X: PolyVectorField) -> tuple[Fraction, ...]:
        return self.coordinates_of_matrix(X.linear_matrix())

    def field_of(self, coords: Sequence) -> PolyVectorField:
        A = QMatrix.zeros(self.matrices[0].nrows, self.matrices[0].ncols)
        for c, M in zip(coords, self.matrices):
            if c:
                A = A + M.scale(c)
        return linear_field(A)

    def __post_init__(self):
        self._coords = SpanCoordinates([m.flat() for m in self.matrices])


def linear_fields_from_matrices(basis: Sequence[QMatrix], names: Sequence[str] | None = None) -> FieldLieAlgebra:
    if not basis:
        raise GeometryError("empty basis")
    size = basis[0].shape
    if any(b.shape != size for b in basis) or size[0] != size[1]:
        raise GeometryError("matrices must be square of one common size")
    names = list(names) if names is not None else [f"X{i}" for i in range(len(basis))]
    fields = [linear_field(A, name=nm) for A, nm in zip(basis, names)]
    coords = SpanCoordinates([m.flat() for m in basis])
    brackets = {}
    for i, j in combinations(range(len(basis)), 2):
        br = bracket_vf(fields[i], fields[j])
        if not br.is_zero():
            c = coords.coords(br.linear_matrix().flat())
            brackets[(i, j)] = {k: x for k, x in enumerate(c) if x}
    L = LieAlgebra(len(basis), brackets, names=names)
    return FieldLieAlgebra(fields, L, list(basis))


def anchor_compatible(FL: FieldLieAlgebra) -> bool:
    """Field-side structure constants form a Lie algebra and the fields are independent."""
    from .liecore import validate

    if not validate(FL.algebra).valid:
        return False
    rows = [tuple(c for comp in X.linear_matrix().rows for c in comp) for X in FL.fields]
    return rank(rows) == len(FL.fields)


# ---------------------------------------------------------------------------
# points and pointwise ranks
# ---------------------------------------------------------------------------

class ProjPoint(tuple):
    """Homogeneous coordinates of a point of P^n; equality is up to scale."""

    def __new__(cls, coords):
        c = tuple(as_fraction(x) for x in coords)
        if not any(c):
            raise GeometryError("the zero vector is not a projective point")
        return super().__new__(cls, c)

    @property
    def n(self) -> int:
        return len(self) - 1

    def normalized(self) -> tuple[Fraction, ...]:
        lead = next(x for x in self if x)
        return tuple(x / lead for x in self)

    def __eq__(self, other):
        if not isinstance(other, tuple) or len(other) != len(self):
            return False
        try:
            return self.normalized() == ProjPoint(other).normalized()
        except GeometryError:
            return False

    def __hash__(self):
        return hash(self.normalized())

    def __str__(self):
        return "[" + ":".join(str(x) for x in self) + "]"


def evaluate_mod_euler(fields: Sequence[PolyVectorField], p: Sequence, t=None) -> QMatrix:
    """Field values at p as rows, with E(p) = p appended as the last row."""
    p = ProjPoint(p)
    rows = [X(p, t) for X in fields]
    rows.append(tuple(p))
    return QMatrix(rows, ncols=len(p))


def tangent_rank(fields: Sequence[PolyVectorField], p: Sequence, t=None) -> int:
    """Dimension of the span of the field values in T_p P^n."""
    return rank(evaluate_mod_euler(fields, p, t)) - 1


def random_point(rng: np.random.Generator, n: int, bound: int = COORD_BOUND) -> ProjPoint:
    """Uniform integer coordinates in [-bound, bound], zero vector rejected."""
    while True:
        c = rng.integers(-bound, bound, size=n + 1, endpoint=True)
        if c.any():
            return ProjPoint(int(x) for x in c)


@dataclass
class OrbitDimResult:
    dim: int
    samples: list[tuple[ProjPoint, int]]
    seed: int

    @property
    def ranks(self) -> list[int]:
        return [r for _, r in self.samples]


def generic_orbit_dim(fields: Sequence[PolyVectorField], samples: int = 25, seed: int = 0,
                      sampler: Callable[[np.random.Generator], Sequence] | None = None) -> OrbitDimResult:
    """Largest tangent rank over seeded pseudo-random points."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    rng = np.random.default_rng(seed)
    n = fields[0].n
    draw = sampler or (lambda r: random_point(r, n))
    log_ = []
    for _ in range(samples):
        p = ProjPoint(draw(rng))
        log_.append((p, tangent_rank(fields, p)))
    return OrbitDimResult(max(r for _, r in log_), log_, seed)


@dataclass
class TangentAlgebraResult:
    subalgebra: Subalgebra
    dim_g: int
    maximal: bool
    stabilized: bool
    points_used: int
    dims_after_each_point: list[int]
    label: str
    closed: bool = True


def _annihilator_conditions(L: FieldLieAlgebra, g_fields, p) -> list[tuple[Fraction, ...]]:
    W = evaluate_mod_euler(g_fields, p)
    ann = kernel_basis(W)  # vectors a with a . w = 0 for w in span(g(p), p)
    vals = [X(p) for X in L.fields]
    return [tuple(sum((ai * vi for ai, vi in zip(a, v) if ai and vi), Fraction(0)) for v in vals) for a in ann]


STABILITY_WINDOW = 5


def tangent_algebra(L: FieldLieAlgebra, g: Sequence, samples: int = 25, seed: int = 0,
                    sampler: Callable[[np.random.Generator], Sequence] | None = None,
                    max_points: int | None = None) -> TangentAlgebraResult:
    """Fields Y in L with Y(p) in span(g(p), p) at every sampled point p.

    ``g`` is a list of coordinate rows in L.  At least ``samples`` points are
    used; sampling continues while any of the last five points still cut the
    solution space down, up to ``max_points`` (default ``samples + 4 dim L``).
    The answer is an over-approximation of the fields tangent to the
    foliation that can only shrink with more points.
    """
    g_rows = [tuple(as_fraction(x) for x in r) for r in g]
    g_sub = Subalgebra(L.algebra, g_rows)
    g_fields = [L.field_of(r) for r in g_rows]
    rng = np.random.default_rng(seed)
    draw = sampler or (lambda r: random_point(r, L.n))
    if max_points is None:
        max_points = samples + 4 * L.algebra.dim
    conds: list[tuple[Fraction, ...]] = []
    dims = []
    cur = L.algebra.dim
    used = 0
    while used < max_points:
        p = ProjPoint(draw(rng))
        conds.extend(_annihilator_conditions(L, g_fields, p))
        cur = L.algebra.dim - rank(conds) if conds else L.algebra.dim
        dims.append(cur)
        used += 1
        if used >= samples and (used <= STABILITY_WINDOW or dims[-STABILITY_WINDOW - 1] == cur):
            break
    stabilized = used > STABILITY_WINDOW and dims[-STABILITY_WINDOW - 1] == cur
    sol = kernel_basis(conds) if conds else [L.algebra.basis_vector(i) for i in range(L.algebra.dim)]
    sub = Subalgebra(L.algebra, sol)
    if not all(sub.contains(r) for r in g_rows):
        raise GeometryError("sampled tangent algebra does not contain g")
    closed = subalgebra_closure_check(sub).closed
    maximal = sub.dim == g_sub.dim
    label = f"probabilistic: necessary conditions at {used} points"
    log.debug("tangent algebra dims %s", dims)
    return TangentAlgebraResult(sub, g_sub.dim, maximal, stabilized, used, dims, label, closed)


def restrict_to_hyperplane(fields: Sequence[PolyVectorField], i: int) -> list[PolyVectorField]:
    """Restrict fields preserving {x_i = 0} to that hyperplane, a copy of P^(n-1)."""
    out = []
    for X in fields:
        if not 0 <= i <= X.n:
            raise IndexError(f"coordinate index {i} out of range")
        res = X.components[i].drop_variable(i)
        if res:
            raise GeometryError(
                f"hyperplane x{i} = 0 is not invariant under field {X.name or X}: component {i} restricts to {res}"
            )
        comps = [c.drop_variable(i) for k, c in enumerate(X.components) if k != i]
        out.append(PolyVectorField(comps, name=X.name))
    return out


# ---------------------------------------------------------------------------
# adjoint action of sl_n
# ---------------------------------------------------------------------------

def is_regular_matrix(p: QMatrix) -> bool:
    """Id, p, ..., p^(n-1) linearly independent."""
    n = p.nrows
    powers = [QMatrix.identity(n)]
    for _ in range(n - 1):
        powers.append(powers[-1] @ p)
    return rank([m.flat() for m in powers]) == n


@dataclass
class AdjointKernelReport:
    n: int
    sections: list[QMatrix]
    commute: bool
    independent: bool
    kernel_dim: int
    tangent_rank: int
    regular: bool
    in_kernel: bool

    @property
    def ok(self) -> bool:
        return self.commute and self.independent and self.in_kernel and self.kernel_dim == self.n - 1


def adjoint_kernel_sections(n: int, p: QMatrix, adjoint: FieldLieAlgebra | None = None) -> AdjointKernelReport:
    """Check the kernel of the adjoint anchor map at a traceless matrix p.

    The sections are Z_k(p) = p^k - (tr(p^k)/n) Id, k = 1..n-1 (traceless
    so that they lie in sl_n).  ``adjoint`` is the field algebra of the
    adjoint action on sl_n in the basis of :func:`liecore.sl`; it is built
    when not supplied.
    """
    from .liecore import matrix_coordinates, sl

    if p.shape != (n, n):
        raise GeometryError("point must be an n x n matrix")
    if p.trace() != 0:
        raise GeometryError("point must be traceless")
    if p.is_zero():
        raise GeometryError("p = 0 is not a projective point")
    pn = QMatrix.identity(n)
    for _ in range(n):
        pn = pn @ p
    if pn.is_zero():
        raise GeometryError("p is nilpotent")
    L = sl(n)
    if adjoint is None:
        adjoint = adjoint_field_algebra(n, L)
    sections = []
    pk = QMatrix.identity(n)
    for _ in range(1, n):
        pk = pk @ p
        sections.append(pk - QMatrix.identity(n).scale(pk.trace() / n))
    commute = all(Z.commutator(p).is_zero() for Z in sections)
    independent = rank([Z.flat() for Z in sections]) == n - 1
    pc = matrix_coordinates(L, p)
    values = evaluate_mod_euler(adjoint.fields, pc)
    trank = rank(values) - 1
    kernel_dim = len(adjoint.fields) - trank
    # each Z_k(p) evaluated at p: the field of ad(Z_k) at p is [Z_k, p] = 0
    in_kernel = all(not any(adjoint.field_of(matrix_coordinates(L, Z))(pc)) for Z in sections)
    return AdjointKernelReport(n, sections, commute, independent, kernel_dim, trank, is_regular_matrix(p), in_kernel)


def adjoint_field_algebra(n: int, L: LieAlgebra | None = None) -> FieldLieAlgebra:
    """Linear fields X -> ad(X) on P(sl_n) in sl_n coordinates."""
    from .liecore import sl

    L = L or sl(n)
    mats = [L.ad(L.basis_vector(i)) for i in range(L.dim)]
    return linear_fields_from_matrices(mats, names=list(L.names))


def random_regular_traceless(rng: np.random.Generator, n: int, bound: int = 20) -> QMatrix:
    while True:
        a = rng.integers(-bound, bound, size=(n, n), endpoint=True)
        rows = [[Fraction(int(x)) for x in r] for r in a]
        tr = sum(rows[i][i] for i in range(n))
        rows[n - 1][n - 1] -= tr
        p = QMatrix(rows, ncols=n)
        if not p.is_zero() and is_regular_matrix(p):
            return p


# ---------------------------------------------------------------------------
# quadrics
# ---------------------------------------------------------------------------

@dataclass
class QuadricModel:
    B: QMatrix

    def __post_init__(self):
        if self.B.nrows != self.B.ncols or self.B != self.B.T:
            raise GeometryError("quadric form must be symmetric")
        if self.B.det() == 0:
            raise GeometryError("quadric form must be nondegenerate")

    @property
    def n(self) -> int:
        return self.B.nrows - 1

    def q(self, u: Sequence, v: Sequence | None = None) -> Fraction:
        v = u if v is None else v
        return sum((ui * x for ui, x in zip(u, self.B.apply(v))), Fraction(0))

    def contains(self, p: Sequence) -> bool:
        return self.q(p) == 0

    def base_point(self) -> ProjPoint:
        n1 = self.B.nrows
        cands = [tuple(int(k == i) for k in range(n1)) for i in range(n1)]
        for i, j in combinations(range(n1), 2):
            for s in (1, -1):
                cands.append(tuple(1 if k == i else (s if k == j else 0) for k in range(n1)))
        for c in cands:
            if self.q(c) == 0:
                return ProjPoint(c)
        raise GeometryError("no rational isotropic base point among the search set")


def quadric_point(Q: QuadricModel, rng: np.random.Generator | int = 0, bound: int = COORD_BOUND) -> ProjPoint:
    """Second intersection of Q with a random line through a fixed rational point of Q."""
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    p0 = Q.base_point()
    while True:
        w = random_point(rng, Q.n, bound)
        qw = Q.q(w)
        bw = Q.q(p0, w)
        if qw == 0:
            return w
        if bw == 0:
            continue  # line tangent at p0 meets Q only there
        pt = tuple(qw * a - 2 * bw * b for a, b in zip(p0, w))
        if any(pt):
            return ProjPoint(pt)


def quadric_sampler(Q: QuadricModel) -> Callable[[np.random.Generator], ProjPoint]:
    return lambda rng: quadric_point(Q, rng)


def traceless_part(A: QMatrix) -> QMatrix:
    n = A.nrows
    return A - QMatrix.identity(n).scale(A.trace() / n)
