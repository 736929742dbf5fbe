"""Exact linear algebra over Q and over the rational function field Q(t).

Matrices over Q are :class:`QMatrix` instances holding :class:`fractions.Fraction`
entries.  Elimination works on sparse row dictionaries, which keeps the
Chevalley-Eilenberg differentials (mostly zeros) cheap to reduce.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "QMatrix",
    "UPoly",
    "RatFunc",
    "as_fraction",
    "rank",
    "rref",
    "kernel_basis",
    "rank_ratfunc",
    "solve_ratfunc",
    "SpanCoordinates",
]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use exact rationals")
    return Fraction(x)


class QMatrix:
    """Dense immutable matrix over Q."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(as_fraction(x) for x in r) for r in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != width:
                raise ValueError("column count mismatch")
        else:
            width = 0 if ncols is None else ncols
        self._rows = data
        self.nrows = len(data)
        self.ncols = width

    # -- constructors -------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "QMatrix":
        return cls(([ZERO] * ncols for _ in range(nrows)), ncols=ncols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(([ONE if i == j else ZERO for j in range(n)] for i in range(n)), ncols=n)

    @classmethod
    def from_sparse(cls, nrows: int, ncols: int, rows: Sequence[dict]) -> "QMatrix":
        out = []
        for i in range(nrows):
            r = [ZERO] * ncols
            for j, v in rows[i].items():
                r[j] = v
            out.append(r)
        return cls(out, ncols=ncols)

    @classmethod
    def vstack(cls, blocks: Sequence["QMatrix"], ncols: int | None = None) -> "QMatrix":
        rows = []
        for b in blocks:
            if ncols is None:
                ncols = b.ncols
            elif b.ncols != ncols:
                raise ValueError("column count mismatch in vstack")
            rows.extend(b._rows)
        return cls(rows, ncols=ncols or 0)

    # -- access -------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._rows)
        return f"QMatrix({self.nrows}x{self.ncols}: [{body}])"

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    def flat(self) -> tuple[Fraction, ...]:
        return tuple(x for r in self._rows for x in r)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def sparse_rows(self) -> list[dict]:
        return [{j: x for j, x in enumerate(r) if x} for r in self._rows]

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._check_same(other)
        return QMatrix(
            ([a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)), ncols=self.ncols
        )

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        self._check_same(other)
        return QMatrix(
            ([a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)), ncols=self.ncols
        )

    def __neg__(self) -> "QMatrix":
        return QMatrix(([-a for a in r] for r in self._rows), ncols=self.ncols)

    def scale(self, c) -> "QMatrix":
        c = as_fraction(c)
        return QMatrix(([c * a for a in r] for r in self._rows), ncols=self.ncols)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        orows = other._rows
        out = []
        for r in self._rows:
            acc = [ZERO] * other.ncols
            for k, a in enumerate(r):
                if a:
                    ok = orows[k]
                    for j, b in enumerate(ok):
                        if b:
                            acc[j] += a * b
            out.append(acc)
        return QMatrix(out, ncols=other.ncols)

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product ``self @ v``."""
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in self._rows)

    @property
    def T(self) -> "QMatrix":
        return QMatrix(zip(*self._rows), ncols=self.nrows) if self.nrows else QMatrix.zeros(self.ncols, 0)

    def trace(self) -> Fraction:
        if self.nrows != self.ncols:
            raise ValueError("trace of a non-square matrix")
        return sum((self._rows[i][i] for i in range(self.nrows)), ZERO)

    def det(self) -> Fraction:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self._rows]
        n = self.nrows
        d = ONE
        for c in range(n):
            p = next((r for r in range(c, n) if m[r][c]), None)
            if p is None:
                return ZERO
            if p != c:
                m[c], m[p] = m[p], m[c]
                d = -d
            piv = m[c][c]
            d *= piv
            for r in range(c + 1, n):
                f = m[r][c]
                if f:
                    f /= piv
                    mr, mc = m[r], m[c]
                    for k in range(c, n):
                        if mc[k]:
                            mr[k] -= f * mc[k]
        return d

    def commutator(self, other: "QMatrix") -> "QMatrix":
        return self @ other - other @ self

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")


# ---------------------------------------------------------------------------
# elimination over Q
# ---------------------------------------------------------------------------

def _to_sparse(m) -> tuple[list[dict], int]:
    if isinstance(m, QMatrix):
        return m.sparse_rows(), m.ncols
    rows = [list(r) for r in m]
    ncols = len(rows[0]) if rows else 0
    return [{j: as_fraction(x) for j, x in enumerate(r) if x} for r in rows], ncols


def _echelon(rows: list[dict], ncols: int, reduced: bool) -> tuple[list[dict], list[int]]:
    """Row echelon form of sparse rows; pivot rows are normalised to leading 1.

    Among candidate pivot rows the sparsest is chosen to limit fill-in.
    """
    pending = [r for r in rows if r]
    # bucket rows by leading column for quick pivot lookup
    pivots: list[int] = []
    prows: list[dict] = []
    for c in range(ncols):
        cands = [i for i, r in enumerate(pending) if c in r]
        if not cands:
            continue
        best = min(cands, key=lambda i: len(pending[i]))
        prow = pending.pop(best)
        inv = 1 / prow[c]
        prow = {j: v * inv for j, v in prow.items()}
        new_pending = []
        for r in pending:
            f = r.get(c)
            if f:
                for j, v in prow.items():
                    nv = r.get(j, ZERO) - f * v
                    if nv:
                        r[j] = nv
                    else:
                        r.pop(j, None)
            if r:
                new_pending.append(r)
        pending = new_pending
        pivots.append(c)
        prows.append(prow)
        if not pending:
            break
    if reduced:
        for k in range(len(prows) - 1, -1, -1):
            c = pivots[k]
            pk = prows[k]
            for i in range(k):
                r = prows[i]
                f = r.get(c)
                if f:
                    for j, v in pk.items():
                        nv = r.get(j, ZERO) - f * v
                        if nv:
                            r[j] = nv
                        else:
                            r.pop(j, None)
    return prows, pivots


def rank(m) -> int:
    """Rank over Q of a QMatrix (or nested sequence of rationals)."""
    rows, ncols = _to_sparse(m)
    return len(_echelon(rows, ncols, reduced=False)[1])


def rref(m) -> tuple[QMatrix, list[int]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    rows, ncols = _to_sparse(m)
    prows, pivots = _echelon(rows, ncols, reduced=True)
    return QMatrix.from_sparse(len(prows), ncols, prows), pivots


def kernel_basis(m) -> list[tuple[Fraction, ...]]:
    """Canonical basis of the right null space.

    One vector per free column ``f``: it has a 1 at ``f``, zeros at the other
    free columns, and is determined on the pivot columns.  Stacked as columns
    these vectors are in reduced column echelon form.
    """
    rows, ncols = _to_sparse(m)
    prows, pivots = _echelon(rows, ncols, reduced=True)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for pc, pr in zip(pivots, prows):
            x = pr.get(f)
            if x:
                v[pc] = -x
        basis.append(tuple(v))
    return basis


class SpanCoordinates:
    """Coordinates of vectors with respect to a fixed independent family.

    ``coords(v)`` returns ``c`` with ``sum(c[i] * basis[i]) == v`` or raises
    :class:`ValueError` when ``v`` is outside the span.
    """

    def __init__(self, basis: Sequence[Sequence]):
        self.basis = [tuple(as_fraction(x) for x in b) for b in basis]
        self.dim = len(self.basis)
        self.ambient = len(self.basis[0]) if self.basis else 0
        d, n = self.dim, self.ambient
        # row reduce [B | I]; the right block records the row operations
        aug = [
            {**{j: x for j, x in enumerate(b) if x}, n + i: ONE}
            for i, b in enumerate(self.basis)
        ]
        prows, pivots = _echelon(aug, n + d, reduced=True)
        if len(pivots) < d or any(p >= n for p in pivots):
            raise ValueError("basis vectors are linearly dependent")
        self._pivots = pivots
        self._reduced = [{j: v for j, v in r.items() if j < n} for r in prows]
        self._transform = [{j - n: v for j, v in r.items() if j >= n} for r in prows]

    def residual(self, v: Sequence) -> list[Fraction]:
        w = [as_fraction(v[p]) for p in self._pivots]
        res = [as_fraction(x) for x in v]
        for wk, rk in zip(w, self._reduced):
            if wk:
                for j, x in rk.items():
                    res[j] -= wk * x
        return res

    def contains(self, v: Sequence) -> bool:
        return not any(self.residual(v))

    def coords(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.ambient:
            raise ValueError("vector length mismatch")
        if any(self.residual(v)):
            raise ValueError("vector is not in the span")
        c = [ZERO] * self.dim
        for p, tk in zip(self._pivots, self._transform):
            w = as_fraction(v[p])
            if w:
                for i, x in tk.items():
                    c[i] += w * x
        return tuple(c)


# ---------------------------------------------------------------------------
# univariate polynomials and rational functions over Q
# ---------------------------------------------------------------------------

class UPoly:
    """Univariate polynomial over Q, coefficients stored low degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_fraction(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def t(cls) -> "UPoly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.c) - 1  # -1 for the zero polynomial

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UPoly((other,))
        return isinstance(other, UPoly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def lead(self) -> Fraction:
        return self.c[-1]

    def __add__(self, o: "UPoly") -> "UPoly":
        n = max(len(self.c), len(o.c))
        a = self.c + (ZERO,) * (n - len(self.c))
        b = o.c + (ZERO,) * (n - len(o.c))
        return UPoly(x + y for x, y in zip(a, b))

    def __neg__(self):
        return UPoly(-x for x in self.c)

    def __sub__(self, o: "UPoly") -> "UPoly":
        return self + (-o)

    def __mul__(self, o: "UPoly") -> "UPoly":
        if not self.c or not o.c:
            return UPoly()
        out = [ZERO] * (len(self.c) + len(o.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(o.c):
                    if y:
                        out[i + j] += x * y
        return UPoly(out)

    def scale(self, k) -> "UPoly":
        k = as_fraction(k)
        return UPoly(k * x for x in self.c)

    def divmod(self, o: "UPoly") -> tuple["UPoly", "UPoly"]:
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        q = [ZERO] * max(len(r) - len(o.c) + 1, 0)
        lo = o.lead()
        while len(r) >= len(o.c) and r:
            shift = len(r) - len(o.c)
            f = r[-1] / lo
            q[shift] = f
            for i, y in enumerate(o.c):
                r[shift + i] -= f * y
            r.pop()  # leading term cancelled
            while r and not r[-1]:
                r.pop()
        return UPoly(q), UPoly(r)

    def monic(self) -> "UPoly":
        return self.scale(1 / self.lead()) if self.c else self

    def gcd(self, o: "UPoly") -> "UPoly":
        a, b = self, o
        while b:
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def __call__(self, x) -> Fraction:
        x = as_fraction(x)
        acc = ZERO
        for y in reversed(self.c):
            acc = acc * x + y
        return acc

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for i, x in enumerate(self.c):
            if x:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                if mono and x == 1:
                    terms.append(mono)
                elif mono and x == -1:
                    terms.append("-" + mono)
                else:
                    terms.append(f"{x}*{mono}" if mono else str(x))
        return " + ".join(reversed(terms)).replace("+ -", "- ")


class RatFunc:
    """Element of Q(t): reduced quotient with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, UPoly) else UPoly((num,))
        den = UPoly((1,)) if den is None else (den if isinstance(den, UPoly) else UPoly((den,)))
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = UPoly(), UPoly((1,))
            return
        g = num.gcd(den)
        if g.degree > 0:
            num, den = num.divmod(g)[0], den.divmod(g)[0]
        lc = den.lead()
        self.num = num.scale(1 / lc)
        self.den = den.scale(1 / lc)

    @classmethod
    def t(cls) -> "RatFunc":
        return cls(UPoly.t())

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _coerce(self, o):
        return o if isinstance(o, RatFunc) else RatFunc(o)

    def __add__(self, o):
        o = self._coerce(o)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        o = self._coerce(o)
        if not self.num or not o.num:
            return RatFunc(0)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._coerce(o)
        if not o.num:
            raise ZeroDivisionError("division by zero in Q(t)")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, o):
        return self._coerce(o) / self

    def degree_key(self) -> tuple[int, int]:
        return self.num.degree, self.den.degree

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def __call__(self, t0) -> Fraction:
        d = self.den(t0)
        if not d:
            raise ZeroDivisionError(f"denominator vanishes at t = {t0}")
        return self.num(t0) / d

    def __repr__(self):
        if self.den.degree == 0:
            return repr(self.num)
        return f"({self.num})/({self.den})"


def _ratfunc_echelon(m: Sequence[Sequence[RatFunc]], ncols: int) -> tuple[list[list[RatFunc]], list[int]]:
    rows = [[x if isinstance(x, RatFunc) else RatFunc(x) for x in r] for r in m]
    pivots: list[int] = []
    r0 = 0
    for c in range(ncols):
        cands = [i for i in range(r0, len(rows)) if rows[i][c]]
        if not cands:
            continue
        best = min(cands, key=lambda i: rows[i][c].degree_key())
        rows[r0], rows[best] = rows[best], rows[r0]
        piv = rows[r0][c]
        rows[r0] = [x / piv for x in rows[r0]]
        for i in range(len(rows)):
            if i != r0 and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], rows[r0])]
        pivots.append(c)
        r0 += 1
        if r0 == len(rows):
            break
    return rows, pivots


def rank_ratfunc(m: Sequence[Sequence]) -> int:
    """Rank over Q(t), pivoting on lowest-degree entries."""
    if not m:
        return 0
    return len(_ratfunc_echelon(m, len(m[0]))[1])


def solve_ratfunc(a: Sequence[Sequence], b: Sequence) -> tuple[list[RatFunc] | None, list[RatFunc]]:
    """Solve ``a x = b`` over Q(t) for a matrix of full column rank.

    Returns ``(x, residual)``; ``x`` is None when the system is inconsistent,
    in which case ``residual`` is ``b`` minus its projection onto the
    eliminated rows.
    """
    ncols = len(a[0])
    aug = [list(r) + [bi] for r, bi in zip(a, b)]
    rows, pivots = _ratfunc_echelon(aug, ncols + 1)
    if ncols in pivots:
        k = pivots.index(ncols)
        return None, [r[ncols] for r in rows[k:]]
    if len(pivots) < ncols:
        raise ValueError("coefficient matrix is not of full column rank over Q(t)")
    return [rows[i][ncols] for i in range(ncols)], []


def lcm_denominators(vals: Iterable[Fraction]) -> int:
    out = 1
    for v in vals:
        d = v.denominator
        out = out * d // gcd(out, d)
    return out
