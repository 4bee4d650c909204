"""Exact rational scalars and dense univariate polynomials.

Rationals are :class:`fractions.Fraction` values, which already keep the
invariants we need (positive denominator, lowest terms, ``0 == 0/1``).  This
module adds the strict text format used in every JSON document and a small
dense polynomial type, :class:`Poly1`, whose coefficients may themselves be
``Poly1`` instances.  That nesting is how bivariate polynomials are handled
when one variable is eliminated by a resultant.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

from .errors import DivisionByZero, MalformedInput, PreconditionError

Rational = Fraction
Scalar = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"3"`` or ``"-7/2"``; anything else raises :class:`MalformedInput`."""
    if isinstance(text, bool):
        raise MalformedInput(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise MalformedInput(f"rationals are serialized as strings, got {type(text).__name__}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise MalformedInput(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise MalformedInput(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x: Scalar) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def to_rational(x) -> Fraction:
    """Coerce ints, Fractions and rational strings. Floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


_OPS = {"add": operator.add, "sub": operator.sub, "mul": operator.mul, "div": operator.truediv}


def rat_arith(lhs: Scalar, rhs: Scalar, kind: str) -> Fraction:
    """Exact field operation; ``kind`` is one of add, sub, mul, div."""
    try:
        op = _OPS[kind]
    except KeyError:
        raise ValueError(f"unknown operation {kind!r}") from None
    lhs, rhs = to_rational(lhs), to_rational(rhs)
    if kind == "div" and rhs == 0:
        raise DivisionByZero("rational division by zero")
    return op(lhs, rhs)


def _is_zero(c) -> bool:
    if isinstance(c, Poly1):
        return not c.coeffs
    return c == 0


def _coerce(c):
    if isinstance(c, (Poly1, Fraction)):
        return c
    return to_rational(c)


class Poly1:
    """Dense polynomial ``sum(coeffs[k] * x**k)``; immutable.

    The zero polynomial has an empty coefficient tuple and degree ``-1``.
    Coefficients are Fractions, or Poly1 values for the nested (bivariate)
    representation.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_coerce(c) for c in coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly1 is immutable")

    @classmethod
    def const(cls, c) -> "Poly1":
        return cls([c])

    @classmethod
    def x(cls) -> "Poly1":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> "Poly1":
        out = cls([1])
        for r in roots:
            out = out * cls([-to_rational(r), 1])
        return out

    # -- basic structure -------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self):
        if not self.coeffs:
            raise PreconditionError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self._zero_coeff()

    def _zero_coeff(self):
        if self.coeffs and isinstance(self.coeffs[0], Poly1):
            return Poly1()
        return Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    # -- arithmetic ------------------------------------------------------
    def _lift(self, other) -> "Poly1":
        if isinstance(other, Poly1) and not self._nested_mismatch(other):
            return other
        return Poly1([other])

    def _nested_mismatch(self, other: "Poly1") -> bool:
        # a Poly1 used as a scalar coefficient of a nested polynomial
        mine = bool(self.coeffs) and isinstance(self.coeffs[0], Poly1)
        theirs = bool(other.coeffs) and isinstance(other.coeffs[0], Poly1)
        return mine and not theirs and bool(other.coeffs)

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly1([self[k] + o[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly1([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly1) or self._nested_mismatch(other):
            c = other if isinstance(other, Poly1) else _coerce(other)
            return Poly1([a * c for a in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Poly1()
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                t = a * b
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        return Poly1(out)

    def __rmul__(self, other):
        c = other if isinstance(other, Poly1) else _coerce(other)
        return Poly1([c * a for a in self.coeffs])

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out, base = Poly1([1]), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, x):
        """Horner evaluation. ``x`` may be a rational or a polynomial."""
        if not self.coeffs:
            return Poly1() if isinstance(x, Poly1) else Fraction(0)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly1":
        return Poly1([k * c for k, c in enumerate(self.coeffs)][1:])

    def __divmod__(self, other: "Poly1"):
        if not isinstance(other, Poly1):
            other = Poly1([other])
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if _is_zero(c):
                continue
            f = c / lead
            quot[k - dq] = f
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] = rem[k - dq + j] - f * b
        return Poly1(quot), Poly1(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, c):
        if isinstance(c, Poly1):
            return self.exact_div(c)
        c = _coerce(c)
        if c == 0:
            raise DivisionByZero("polynomial divided by zero scalar")
        return Poly1([a / c for a in self.coeffs])

    def exact_div(self, other: "Poly1") -> "Poly1":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def monic(self) -> "Poly1":
        if self.is_zero():
            return self
        return self / self.lead

    # -- comparisons / display -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly1):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly1([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly1({list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if _is_zero(c):
                continue
            cs = f"({c})" if isinstance(c, Poly1) else format_rational(c)
            if k == 0:
                terms.append(cs)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                if cs == "1":
                    terms.append(mono)
                elif cs == "-1":
                    terms.append("-" + mono)
                else:
                    terms.append(f"{cs}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    def integer_primitive(self) -> list[int]:
        """Integer coefficients with content 1 and positive leading term."""
        if self.is_zero():
            return []
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        ints = [v // g for v in ints]
        if ints[-1] < 0:
            ints = [-v for v in ints]
        return ints


def poly(*coeffs) -> Poly1:
    """Shorthand: ``poly(a0, a1, a2)`` is ``a0 + a1*x + a2*x^2``."""
    return Poly1(coeffs)


# -- gcd and square-free machinery ----------------------------------------

def derivative(p: Poly1) -> Poly1:
    return p.derivative()


def int_content_free(c: list[int]) -> list[int]:
    """Divide an integer coefficient list by its (positive) content."""
    g = 0
    for v in c:
        g = gcd(g, v)
    return c if g <= 1 else [v // g for v in c]


def int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder ``lc(b)^(deg a - deg b + 1) * a mod b`` over the integers."""
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        r = [x * lb for x in r]
        for j, bj in enumerate(b):
            r[k - db + j] -= c * bj
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return r


def _is_plain(p: Poly1) -> bool:
    return not (p.coeffs and isinstance(p.coeffs[0], Poly1))


def poly_gcd(p: Poly1, q: Poly1) -> Poly1:
    """Monic gcd over Q. ``gcd(0, 0)`` is undefined and raises."""
    if p.is_zero() and q.is_zero():
        raise PreconditionError("gcd(0, 0) is undefined")
    if _is_plain(p) and _is_plain(q):
        # primitive remainder sequence keeps everything in the integers
        a, b = p.integer_primitive(), q.integer_primitive()
        if len(a) < len(b):
            a, b = b, a
        while b:
            a, b = b, int_content_free(int_prem(a, b))
        return Poly1(a).monic()
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: Poly1) -> Poly1:
    if p.is_zero():
        raise PreconditionError("square-free part of the zero polynomial")
    if p.degree == 0:
        return Poly1([1])
    return (p // poly_gcd(p, p.derivative())).monic()


def squarefree_decomposition(p: Poly1) -> list[Poly1]:
    """Yun's algorithm: monic ``[f1, f2, ...]`` with ``p ~ prod(fk**k)``.

    ``fk`` collects the roots of multiplicity exactly ``k``; entries may be 1.
    """
    if p.is_zero():
        raise PreconditionError("square-free decomposition of the zero polynomial")
    if p.degree == 0:
        return []
    dp = p.derivative()
    a0 = poly_gcd(p, dp)
    b = p // a0
    c = dp // a0
    d = c - b.derivative()
    out = []
    while b.degree > 0:
        a = poly_gcd(b, d)
        out.append(a)
        b = b // a
        c = d // a
        d = c - b.derivative()
    while out and out[-1].degree == 0:
        out.pop()
    return out


# -- resultants -------------------------------------------------------------

def _ring_unit(sample):
    if isinstance(sample, Poly1):
        return Poly1(), Poly1([1])
    return Fraction(0), Fraction(1)


def _ring_div(a, b):
    if isinstance(a, Poly1) or isinstance(b, Poly1):
        if not isinstance(b, Poly1):
            return a / b
        if not isinstance(a, Poly1):
            a = Poly1([a])
        return a.exact_div(b)
    return a / b


def bareiss_det(rows: Sequence[Sequence]):
    """Fraction-free determinant; entries from Q or from Q[x] (Poly1)."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    m = [list(r) for r in rows]
    zero, one = _ring_unit(m[0][0])
    sign = 1
    prev = one
    for k in range(n - 1):
        if _is_zero(m[k][k]):
            for i in range(k + 1, n):
                if not _is_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return zero
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = _ring_div(m[i][j] * pivot - m[i][k] * m[k][j], prev)
            m[i][k] = zero
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_matrix(f: Poly1, g: Poly1) -> list[list]:
    m, n = f.degree, g.degree
    zero, _ = _ring_unit(f.coeffs[0] if f.coeffs else Fraction(0))
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - n - 1 - i))
    return rows


def resultant(f: Poly1, g: Poly1):
    """Sylvester resultant ``res(f, g)`` with respect to the outer variable.

    For Fraction coefficients the result is a Fraction; for nested Poly1
    coefficients it is a Poly1 in the inner variable.
    """
    sample = next((c for c in f.coeffs + g.coeffs), Fraction(0))
    zero, one = _ring_unit(sample)
    if f.is_zero() or g.is_zero():
        return zero
    if f.degree == 0 and g.degree == 0:
        return one
    if f.degree == 0:
        return f.lead ** g.degree
    if g.degree == 0:
        return g.lead ** f.degree
    return bareiss_det(sylvester_matrix(f, g))


def discriminant(p: Poly1) -> Fraction:
    """``(-1)^(n(n-1)/2) * res(p, p') / lead(p)``."""
    n = p.degree
    if n < 1:
        raise PreconditionError("discriminant needs degree >= 1")
    r = resultant(p, p.derivative())
    s = -1 if (n * (n - 1) // 2) % 2 else 1
    return s * r / p.lead


@dataclass(frozen=True)
class PolyTools:
    derivative: Poly1
    gcd: Poly1
    squarefree_part: Poly1
    resultant: object


def poly_tools(p: Poly1, q: Poly1) -> PolyTools:
    """Bundle of derived polynomials for ``p`` and the pair ``(p, q)``."""
    return PolyTools(
        derivative=p.derivative(),
        gcd=poly_gcd(p, q),
        squarefree_part=squarefree_part(p),
        resultant=resultant(p, q),
    )


# -- rational intervals -----------------------------------------------------

@dataclass(frozen=True)
class Interval:
    """Closed rational interval; ``lo == hi`` marks an exactly known value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @classmethod
    def point(cls, x: Scalar) -> "Interval":
        x = to_rational(x)
        return cls(x, x)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __mul__(self, other: "Interval") -> "Interval":
        ps = [self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi]
        return Interval(min(ps), max(ps))

    def scale(self, c: Fraction) -> "Interval":
        a, b = self.lo * c, self.hi * c
        return Interval(min(a, b), max(a, b))

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise DivisionByZero("interval contains zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def to_json(self):
        if self.exact:
            return format_rational(self.lo)
        return [format_rational(self.lo), format_rational(self.hi)]


def interval_eval(p: Poly1, box: Interval) -> Interval:
    """Naive interval Horner enclosure of ``p`` over ``box``."""
    if p.is_zero():
        return Interval.point(0)
    acc = Interval.point(p.coeffs[-1])
    for c in reversed(p.coeffs[:-1]):
        acc = acc * box + Interval.point(c)
    return acc
