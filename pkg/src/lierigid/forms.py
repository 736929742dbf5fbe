"""Polynomial differential forms on C^(n+1) and codimension-one foliations on P^n."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .geom import GeometryError, PolyVectorField, ProjPoint, euler_field, tangent_rank
from .poly import MultiPoly, content_and_primitive
from .qlinalg import QMatrix

__all__ = [
    "DiffForm",
    "FormError",
    "DefiningForm",
    "defining_one_form",
    "exterior_derivative",
    "frobenius_check",
    "FrobeniusResult",
    "singular_ideal",
    "kupka_classify",
    "PointType",
]


class FormError(ValueError):
    pass


def _sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...] | None]:
    """Sign of the sorting permutation, or (0, None) if an index repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


class DiffForm:
    """sum over increasing index tuples I of coeffs[I] dx_I, in variables x0..xn."""

    def __init__(self, n: int, q: int, coeffs: Mapping[tuple[int, ...], MultiPoly]):
        self.n = n
        self.q = q
        out: dict[tuple[int, ...], MultiPoly] = {}
        for key, c in coeffs.items():
            key = tuple(key)
            if len(key) != q:
                raise FormError(f"index {key} does not have length {q}")
            if any(not 0 <= k <= n for k in key):
                raise FormError(f"index {key} out of range for P^{n}")
            sign, skey = _sort_sign(key)
            if not sign or not c:
                continue
            if c.nvars != n + 1:
                raise FormError("coefficient ring does not match the ambient dimension")
            acc = out.get(skey)
            val = c if sign > 0 else -c
            out[skey] = val if acc is None else acc + val
        self.coeffs = {k: v for k, v in out.items() if v}

    @classmethod
    def one_form(cls, comps: Sequence[MultiPoly]) -> "DiffForm":
        n = len(comps) - 1
        return cls(n, 1, {(i,): c for i, c in enumerate(comps)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, DiffForm) and (self.n, self.q, self.coeffs) == (other.n, other.q, other.coeffs)

    def __add__(self, other: "DiffForm") -> "DiffForm":
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return DiffForm(self.n, self.q, out)

    def __neg__(self):
        return DiffForm(self.n, self.q, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "DiffForm":
        return DiffForm(self.n, self.q, {k: v.scale(c) for k, v in self.coeffs.items()})

    def _check(self, other):
        if self.n != other.n or self.q != other.q:
            raise FormError("forms of different ambient dimension or degree")

    def coefficient(self, key: Sequence[int]) -> MultiPoly:
        sign, skey = _sort_sign(key)
        zero = MultiPoly.zero(self.n + 1)
        if not sign:
            return zero
        c = self.coeffs.get(skey, zero)
        return c if sign > 0 else -c

    def wedge(self, other: "DiffForm") -> "DiffForm":
        if self.n != other.n:
            raise FormError("ambient mismatch")
        out: dict[tuple[int, ...], MultiPoly] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                sign, key = _sort_sign(k1 + k2)
                if not sign:
                    continue
                prod = c1 * c2
                if sign < 0:
                    prod = -prod
                out[key] = out[key] + prod if key in out else prod
        return DiffForm(self.n, self.q + other.q, out)

    def contract(self, X: PolyVectorField) -> "DiffForm":
        """Interior product i_X, inserting X in the first slot."""
        if X.n != self.n:
            raise FormError("ambient mismatch")
        if self.q == 0:
            raise FormError("cannot contract a 0-form")
        out: dict[tuple[int, ...], MultiPoly] = {}
        for key, c in self.coeffs.items():
            for pos, i in enumerate(key):
                Xi = X.components[i]
                if not Xi:
                    continue
                rest = key[:pos] + key[pos + 1:]
                term = c * Xi
                if pos % 2:
                    term = -term
                out[rest] = out[rest] + term if rest in out else term
        return DiffForm(self.n, self.q - 1, out)

    def evaluate(self, p: Sequence) -> dict[tuple[int, ...], Fraction]:
        vals = {k: c(p) for k, c in self.coeffs.items()}
        return {k: v for k, v in vals.items() if v}

    def degree(self) -> int:
        """Common homogeneity degree of the coefficients (-1 for the zero form)."""
        degs = {c.degree() for c in self.coeffs.values()}
        if not degs:
            return -1
        if len(degs) > 1 or not all(c.is_homogeneous() for c in self.coeffs.values()):
            raise FormError("coefficients are not homogeneous of a common degree")
        return degs.pop()

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for key in sorted(self.coeffs):
            dx = "^".join(f"dx{i}" for i in key)
            parts.append(f"({self.coeffs[key]})*{dx}" if dx else f"({self.coeffs[key]})")
        return " + ".join(parts)

    def __repr__(self):
        return f"DiffForm(q={self.q}, {str(self)!r})"


def exterior_derivative(w: DiffForm) -> DiffForm:
    out: dict[tuple[int, ...], MultiPoly] = {}
    for key, c in w.coeffs.items():
        for j in range(w.n + 1):
            dc = c.partial(j)
            if not dc:
                continue
            sign, skey = _sort_sign((j,) + key)
            if not sign:
                continue
            term = dc if sign > 0 else -dc
            out[skey] = out[skey] + term if skey in out else term
    return DiffForm(w.n, w.q + 1, out)


@dataclass
class DefiningForm:
    form: DiffForm
    raw: DiffForm
    content: MultiPoly

    @property
    def degree(self) -> int:
        return self.form.degree()


def defining_one_form(fields: Sequence[PolyVectorField], check_point: Sequence | None = None) -> DefiningForm:
    """omega = i_{X_{n-1}} ... i_{X_1} i_E (dx_0 ^ ... ^ dx_n), divided by its content.

    Concretely omega(v) = det[E, X_1, ..., X_{n-1}, v] (columns), so the
    coefficient of dx_k is the signed cofactor of the last column.
    """
    if not fields:
        raise FormError("need n-1 fields")
    n = fields[0].n
    if any(X.n != n for X in fields):
        raise FormError("ambient mismatch among fields")
    if any(X.has_param for X in fields):
        raise FormError("specialise parameterised fields before building a form")
    if len(fields) != n - 1:
        raise FormError(f"a codimension-one foliation on P^{n} needs {n - 1} fields, got {len(fields)}")
    if check_point is not None and tangent_rank(fields, check_point) < n - 1:
        raise FormError("fields are dependent modulo the Euler field at the check point")
    E = euler_field(n)
    vol = DiffForm(n, n + 1, {tuple(range(n + 1)): MultiPoly.constant(1, n + 1)})
    w = vol.contract(E)
    for X in fields:
        w = w.contract(X)
    if w.is_zero():
        raise FormError("fields are everywhere dependent: the defining form vanishes")
    g, reduced = content_and_primitive([w.coefficient((k,)) for k in range(n + 1)])
    form = DiffForm(n, 1, {(k,): c for k, c in enumerate(reduced)})
    return DefiningForm(form, w, g)


@dataclass
class FrobeniusResult:
    integrable: bool
    residual: DiffForm
    plucker: str = "trivially satisfied for 1-forms"


def frobenius_check(w: DiffForm, q: int = 1) -> FrobeniusResult:
    if q != 1 or w.q != 1:
        raise FormError("only 1-forms are supported")
    r = w.wedge(exterior_derivative(w))
    return FrobeniusResult(r.is_zero(), r)


def singular_ideal(w: DiffForm) -> list[MultiPoly]:
    """Generators of the ideal of Z(omega): its coefficients."""
    return [w.coeffs[k] for k in sorted(w.coeffs)]


class PointType(str, Enum):
    REGULAR = "REGULAR"
    KUPKA = "KUPKA"
    NON_KUPKA_SINGULAR = "NON-KUPKA-SINGULAR"


def kupka_classify(w: DiffForm, points: Sequence[Sequence]) -> list[PointType]:
    dw = exterior_derivative(w)
    out = []
    for p in points:
        p = ProjPoint(p)
        if w.evaluate(p):
            out.append(PointType.REGULAR)
        elif dw.evaluate(p):
            out.append(PointType.KUPKA)
        else:
            out.append(PointType.NON_KUPKA_SINGULAR)
    return out


def form_values(w: DiffForm, X: PolyVectorField) -> MultiPoly:
    """omega(X) for a 1-form."""
    if w.q != 1:
        raise FormError("expected a 1-form")
    return w.contract(X).coefficient(())
