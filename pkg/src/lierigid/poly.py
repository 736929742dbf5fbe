"""Multivariate polynomials over Q in x0..x{n-1}, optionally with a parameter t.

The parameter, when present, is stored as the last exponent slot.  It carries
projective degree 0, so :meth:`MultiPoly.degree` and
:meth:`MultiPoly.is_homogeneous` only look at the x-exponents.

Terms print in graded lexicographic order with x0 > x1 > ... > t, and the
printed form parses back to the same polynomial.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .qlinalg import as_fraction

__all__ = [
    "MultiPoly",
    "PolyParseError",
    "parse_poly",
    "poly_gcd",
    "content_and_primitive",
]

MAX_EXPONENT = 1000

ZERO = Fraction(0)


class PolyParseError(ValueError):
    def __init__(self, message: str, position: int, source: str = ""):
        self.position = position
        self.source = source
        super().__init__(f"{message} at position {position}")


def _order_key(e: tuple[int, ...]):
    return (sum(e), e)


class MultiPoly:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero rationals."""

    __slots__ = ("nvars", "has_param", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping | Iterable = (), has_param: bool = False):
        self.nvars = nvars
        self.has_param = has_param
        width = nvars + (1 if has_param else 0)
        out: dict[tuple[int, ...], Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = tuple(e)
            if len(e) != width:
                raise ValueError(f"exponent vector {e} has length {len(e)}, expected {width}")
            c = as_fraction(c)
            if c:
                nc = out.get(e, ZERO) + c
                if nc:
                    out[e] = nc
                else:
                    del out[e]
        self.terms = out
        self._hash = None

    # -- constructors -------------------------------------------------
    @property
    def width(self) -> int:
        return self.nvars + (1 if self.has_param else 0)

    @classmethod
    def zero(cls, nvars: int, has_param: bool = False) -> "MultiPoly":
        return cls(nvars, {}, has_param)

    @classmethod
    def constant(cls, c, nvars: int, has_param: bool = False) -> "MultiPoly":
        return cls(nvars, {(0,) * (nvars + has_param): c}, has_param)

    @classmethod
    def var(cls, i: int, nvars: int, has_param: bool = False) -> "MultiPoly":
        """The variable x_i; ``i == nvars`` denotes t when ``has_param``."""
        width = nvars + has_param
        if not 0 <= i < width:
            raise IndexError(f"variable index {i} out of range")
        e = [0] * width
        e[i] = 1
        return cls(nvars, {tuple(e): 1}, has_param)

    @classmethod
    def param(cls, nvars: int) -> "MultiPoly":
        return cls.var(nvars, nvars, has_param=True)

    @classmethod
    def linear(cls, coeffs: Sequence, has_param: bool = False) -> "MultiPoly":
        n = len(coeffs)
        width = n + has_param
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * width
            e[i] = 1
            terms[tuple(e)] = c
        return cls(n, terms, has_param)

    def _like(self, terms) -> "MultiPoly":
        return MultiPoly(self.nvars, terms, self.has_param)

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars or other.has_param != self.has_param:
                raise ValueError(
                    f"variable-count mismatch: {self.nvars}{'+t' if self.has_param else ''}"
                    f" vs {other.nvars}{'+t' if other.has_param else ''}"
                )
            return other
        return MultiPoly.constant(other, self.nvars, self.has_param)

    # -- basic protocol -----------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other, self.nvars, self.has_param)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.nvars, self.has_param, self.terms) == (other.nvars, other.has_param, other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.has_param, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: _order_key(kv[0]), reverse=True)

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_order_key)
        return e, self.terms[e]

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, ZERO) + c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        other = self._coerce(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, ZERO) + c1 * c2
        return self._like(out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "MultiPoly":
        c = as_fraction(c)
        if not c:
            return self._like({})
        return self._like({e: c * v for e, v in self.terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = MultiPoly.constant(1, self.nvars, self.has_param)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def partial(self, var: int) -> "MultiPoly":
        """Partial derivative with respect to x_var (or t when var == nvars)."""
        if not 0 <= var < self.width:
            raise IndexError(f"variable index {var} out of range")
        out = {}
        for e, c in self.terms.items():
            k = e[var]
            if k:
                ne = list(e)
                ne[var] = k - 1
                out[tuple(ne)] = c * k
        return self._like(out)

    # -- degrees ------------------------------------------------------
    def degree(self) -> int:
        """Total degree in the x-variables (the parameter is ignored); -1 for zero."""
        if not self.terms:
            return -1
        return max(sum(e[: self.nvars]) for e in self.terms)

    def degree_in(self, var: int) -> int:
        if not self.terms:
            return -1
        return max(e[var] for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e[: self.nvars]) for e in self.terms}
        return len(degs) <= 1

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    # -- evaluation and substitution ----------------------------------
    def __call__(self, point: Sequence, t=None) -> Fraction:
        vals = [as_fraction(v) for v in point]
        if len(vals) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(vals)}")
        if self.has_param:
            if t is None:
                if any(e[-1] for e in self.terms):
                    raise ValueError("a value for t is required")
                t = 0
            vals.append(as_fraction(t))
        acc = ZERO
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term *= v**k
            acc += term
        return acc

    def specialize(self, t) -> "MultiPoly":
        """Substitute a rational value for the parameter and drop it."""
        if not self.has_param:
            return self
        t = as_fraction(t)
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            ne = e[:-1]
            out[ne] = out.get(ne, ZERO) + c * t ** e[-1]
        return MultiPoly(self.nvars, out, False)

    def with_param(self) -> "MultiPoly":
        if self.has_param:
            return self
        return MultiPoly(self.nvars, {e + (0,): c for e, c in self.terms.items()}, True)

    def drop_variable(self, var: int) -> "MultiPoly":
        """Set x_var = 0 and remove the variable from the ring."""
        if not 0 <= var < self.nvars:
            raise IndexError(f"variable index {var} out of range")
        out = {e[:var] + e[var + 1 :]: c for e, c in self.terms.items() if not e[var]}
        return MultiPoly(self.nvars - 1, out, self.has_param)

    def coefficient_in(self, var: int) -> dict[int, "MultiPoly"]:
        """View as a polynomial in one variable; returns power -> coefficient."""
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[var]
            ne = e[:var] + (0,) + e[var + 1 :]
            out.setdefault(k, {})[ne] = c
        return {k: self._like(v) for k, v in out.items()}

    def split_param(self) -> dict[tuple[int, ...], dict[int, Fraction]]:
        """Map each x-monomial to its coefficient as {t-power: rational}."""
        out: dict[tuple[int, ...], dict[int, Fraction]] = {}
        for e, c in self.terms.items():
            key = e[: self.nvars]
            k = e[-1] if self.has_param else 0
            out.setdefault(key, {})[k] = c
        return out

    # -- printing -----------------------------------------------------
    def _mono_str(self, e: tuple[int, ...]) -> str:
        parts = []
        for i, k in enumerate(e):
            if k:
                name = "t" if (self.has_param and i == self.nvars) else f"x{i}"
                parts.append(name if k == 1 else f"{name}^{k}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = self._mono_str(e)
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            out.append((sign, body))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"MultiPoly({str(self)!r}, nvars={self.nvars}{', param' if self.has_param else ''})"

    # -- division -----------------------------------------------------
    def divide_exact(self, other: "MultiPoly") -> "MultiPoly":
        """Quotient of an exact division; raises ValueError when not divisible."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        le, lc = other.leading_term()
        rem = dict(self.terms)
        quot: dict[tuple[int, ...], Fraction] = {}
        while rem:
            e = max(rem, key=_order_key)
            c = rem[e]
            diff = tuple(a - b for a, b in zip(e, le))
            if any(d < 0 for d in diff):
                raise ValueError("polynomial division is not exact")
            q = c / lc
            quot[diff] = quot.get(diff, ZERO) + q
            for oe, oc in other.terms.items():
                ne = tuple(a + b for a, b in zip(diff, oe))
                nv = rem.get(ne, ZERO) - q * oc
                if nv:
                    rem[ne] = nv
                else:
                    rem.pop(ne, None)
        return self._like(quot)

    def monic(self) -> "MultiPoly":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_term()[1])


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+|t)|(.))")


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1) is not None:
            toks.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("var", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^/()":
                if ch.isalpha():
                    ident = re.match(r"[A-Za-z_]\w*", src[m.start(3):]).group(0)
                    raise PolyParseError(f"unknown variable {ident!r}", m.start(3), src)
                raise PolyParseError(f"unexpected character {ch!r}", m.start(3), src)
            toks.append(("op", ch, m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str, nvars: int, has_param: bool):
        self.src = src
        self.nvars = nvars
        self.has_param = has_param
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect_op(self, ch):
        kind, val, pos = self.take()
        if kind != "op" or val != ch:
            raise PolyParseError(f"expected {ch!r}", pos, self.src)

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolyParseError(msg, tok[2], self.src)

    def parse(self) -> MultiPoly:
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            self.fail(f"unexpected {val!r}")
        return p

    def expr(self) -> MultiPoly:
        # a leading sign is accepted so that inputs like "-x0" parse
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term().scale(sign)
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> MultiPoly:
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> MultiPoly:
        base = self.base()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                self.fail("expected a non-negative integer exponent", tok)
            k = int(tok[1])
            if k > MAX_EXPONENT:
                raise PolyParseError(f"exponent {k} exceeds {MAX_EXPONENT}", tok[2], self.src)
            return base**k
        return base

    def base(self) -> MultiPoly:
        tok = self.take()
        kind, val, pos = tok
        if kind == "int":
            num = int(val)
            nk, nv, _ = self.peek()
            if nk == "op" and nv == "/":
                self.take()
                dt = self.take()
                if dt[0] != "int":
                    self.fail("expected an integer denominator", dt)
                den = int(dt[1])
                if den == 0:
                    raise PolyParseError("zero denominator", dt[2], self.src)
                return MultiPoly.constant(Fraction(num, den), self.nvars, self.has_param)
            return MultiPoly.constant(num, self.nvars, self.has_param)
        if kind == "var":
            if val == "t":
                if not self.has_param:
                    raise PolyParseError("unknown variable 't' (no parameter declared)", pos, self.src)
                return MultiPoly.param(self.nvars)
            idx = int(val[1:])
            if idx >= self.nvars:
                raise PolyParseError(
                    f"unknown variable {val!r} (ring has x0..x{self.nvars - 1})", pos, self.src
                )
            return MultiPoly.var(idx, self.nvars, self.has_param)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        if kind == "end":
            raise PolyParseError("unexpected end of input", pos, self.src)
        raise PolyParseError(f"unexpected {val!r}", pos, self.src)


def parse_poly(src: str, nvars: int, has_param: bool = False) -> MultiPoly:
    """Parse an expression in x0..x{nvars-1} (and t if ``has_param``).

    >>> str(parse_poly("(x0+x1)^2 - x0^2 - 2*x0*x1", 2))
    'x1^2'
    """
    return _Parser(src, nvars, has_param).parse()


# ---------------------------------------------------------------------------
# gcd by recursive primitive remainder sequences
# ---------------------------------------------------------------------------

def _univariate_view(p: MultiPoly, var: int) -> dict[int, MultiPoly]:
    return p.coefficient_in(var)


def _mono_power(p: MultiPoly, var: int, k: int) -> MultiPoly:
    e = [0] * p.width
    e[var] = k
    return MultiPoly(p.nvars, {tuple(e): 1}, p.has_param)


def _content(p: MultiPoly, var: int) -> MultiPoly:
    g = None
    for c in _univariate_view(p, var).values():
        g = c if g is None else poly_gcd(g, c)
        if g.is_constant():
            break
    return g


def _prem(a: MultiPoly, b: MultiPoly, var: int) -> MultiPoly:
    db = b.degree_in(var)
    lb = _univariate_view(b, var)[db]
    r = a
    while r and r.degree_in(var) >= db:
        dr = r.degree_in(var)
        lr = _univariate_view(r, var)[dr]
        r = r * lb - lr * _mono_power(r, var, dr - db) * b
    return r


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Monic greatest common divisor (leading coefficient 1 in grlex order)."""
    b = a._coerce(b)
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    vs = a.variables() | b.variables()
    if not vs or a.is_constant() or b.is_constant():
        return MultiPoly.constant(1, a.nvars, a.has_param)
    var = max(vs)
    da, db = a.degree_in(var), b.degree_in(var)
    if da == 0:
        return poly_gcd(a, _content(b, var))
    if db == 0:
        return poly_gcd(_content(a, var), b)
    ca, cb = _content(a, var), _content(b, var)
    c = poly_gcd(ca, cb)
    pa, pb = a.divide_exact(ca), b.divide_exact(cb)
    if da < db:
        pa, pb = pb, pa
    while pb and pb.degree_in(var) > 0:
        r = _prem(pa, pb, var)
        pa = pb
        pb = r.divide_exact(_content(r, var)) if r else r
    if pb:  # nonzero remainder free of var: primitive parts are coprime in var
        g = MultiPoly.constant(1, a.nvars, a.has_param)
    else:
        g = pa.divide_exact(_content(pa, var))
    return (c * g).monic()


def content_and_primitive(polys: Sequence[MultiPoly]) -> tuple[MultiPoly, list[MultiPoly]]:
    """Common divisor of all entries and the entries divided by it.

    The divisor is monic with respect to the graded lexicographic order, so
    ``gcd * reduced[i] == polys[i]`` exactly.
    """
    polys = list(polys)
    if not polys or all(not p for p in polys):
        raise ValueError("content of an all-zero list is undefined")
    g = None
    for p in polys:
        if p:
            g = p.monic() if g is None else poly_gcd(g, p)
    return g, [p.divide_exact(g) for p in polys]
