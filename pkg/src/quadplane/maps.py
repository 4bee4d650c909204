"""Quadratic maps of the plane and the affine changes of variables acting on them.

A :class:`QuadMap` stores twelve coefficients and evaluates as::

    p~ = a20 p^2 + 2 a11 p q + a02 q^2 + 2 a10 p + 2 a01 q + a00
    q~ = b20 p^2 + 2 b11 p q + b02 q^2 + 2 b10 p + 2 b01 q + b00

The factors of 2 belong to evaluation; the stored numbers are the bare
coefficients.  Coefficients are normally exact ``Fraction`` values, but floats
are accepted so that numeric reductions can reuse the same algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from fractions import Fraction
from typing import Union

from .errors import MalformedInput, PreconditionError
from .exactnum import format_rational, parse_rational

Number = Union[Fraction, float]

_KEYS = ("20", "11", "02", "10", "01", "00")


def _coerce(x) -> Number:
    if isinstance(x, float):
        return x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise MalformedInput(f"not a coefficient: {x!r}")


def _render(x: Number) -> str:
    if isinstance(x, float):
        return repr(x)
    return format_rational(x)


@dataclass(frozen=True)
class QuadMap:
    a20: Number = Fraction(0)
    a11: Number = Fraction(0)
    a02: Number = Fraction(0)
    a10: Number = Fraction(0)
    a01: Number = Fraction(0)
    a00: Number = Fraction(0)
    b20: Number = Fraction(0)
    b11: Number = Fraction(0)
    b02: Number = Fraction(0)
    b10: Number = Fraction(0)
    b01: Number = Fraction(0)
    b00: Number = Fraction(0)

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, _coerce(getattr(self, f.name)))

    @classmethod
    def from_rows(cls, a, b) -> "QuadMap":
        """Build from two 6-sequences ordered ``20, 11, 02, 10, 01, 00``."""
        if len(a) != 6 or len(b) != 6:
            raise MalformedInput("each row needs six coefficients")
        names = [f.name for f in fields(cls)]
        return cls(**dict(zip(names, list(a) + list(b))))

    @classmethod
    def from_json(cls, doc) -> "QuadMap":
        if not isinstance(doc, dict) or set(doc) - {"a", "b"}:
            raise MalformedInput('map document must be {"a": {...}, "b": {...}}')
        rows = []
        for row in ("a", "b"):
            part = doc.get(row, {})
            if not isinstance(part, dict) or set(part) - set(_KEYS):
                raise MalformedInput(f"row {row!r} must map keys {_KEYS} to rationals")
            vals = []
            for k in _KEYS:
                v = part.get(k, "0")
                if not isinstance(v, (str, int)) or isinstance(v, bool):
                    raise MalformedInput(f"coefficient {row}{k} must be a rational string")
                vals.append(parse_rational(v) if isinstance(v, str) else Fraction(v))
            rows.append(vals)
        return cls.from_rows(*rows)

    def to_json(self) -> dict:
        a, b = self.row_a, self.row_b
        return {
            "a": {k: _render(v) for k, v in zip(_KEYS, a)},
            "b": {k: _render(v) for k, v in zip(_KEYS, b)},
        }

    @property
    def row_a(self) -> tuple:
        return (self.a20, self.a11, self.a02, self.a10, self.a01, self.a00)

    @property
    def row_b(self) -> tuple:
        return (self.b20, self.b11, self.b02, self.b10, self.b01, self.b00)

    def coeffs(self) -> tuple:
        return self.row_a + self.row_b

    @property
    def is_exact(self) -> bool:
        return not any(isinstance(c, float) for c in self.coeffs())

    def is_affine(self) -> bool:
        return all(c == 0 for c in self.row_a[:3] + self.row_b[:3])

    def swap_rows(self) -> "QuadMap":
        return QuadMap.from_rows(self.row_b, self.row_a)

    def eval(self, p, q) -> tuple:
        return _eval_row(self.row_a, p, q), _eval_row(self.row_b, p, q)

    __call__ = eval

    def with_(self, **kw) -> "QuadMap":
        return replace(self, **kw)

    def __str__(self) -> str:
        return f"p~ = {_row_str(self.row_a)}, q~ = {_row_str(self.row_b)}"


def _eval_row(r, p, q):
    c20, c11, c02, c10, c01, c00 = r
    return c20 * p * p + 2 * c11 * p * q + c02 * q * q + 2 * c10 * p + 2 * c01 * q + c00


def _row_str(r) -> str:
    mons = ("p^2", "pq", "q^2", "p", "q", "")
    mult = (1, 2, 1, 2, 2, 1)
    out = ""
    for c, m, k in zip(r, mons, mult):
        c = c * k
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = _render(abs(c))
        term = m if (mag in ("1", "1.0") and m) else (f"{mag}*{m}" if m else mag)
        out += f" {sign} {term}" if out else (f"-{term}" if sign == "-" else term)
    return out or "0"


@dataclass(frozen=True)
class AffineMap2:
    """``(p, q) -> (m11 p + m12 q + s1, m21 p + m22 q + s2)`` with nonzero determinant."""

    m11: Number
    m12: Number
    m21: Number
    m22: Number
    s1: Number = Fraction(0)
    s2: Number = Fraction(0)

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, _coerce(getattr(self, f.name)))
        if self.det == 0:
            raise PreconditionError("affine map is singular")

    @classmethod
    def identity(cls) -> "AffineMap2":
        return cls(1, 0, 0, 1)

    @classmethod
    def swap(cls) -> "AffineMap2":
        return cls(0, 1, 1, 0)

    @classmethod
    def shift(cls, s1, s2) -> "AffineMap2":
        return cls(1, 0, 0, 1, s1, s2)

    @classmethod
    def diag(cls, d1, d2) -> "AffineMap2":
        return cls(d1, 0, 0, d2)

    @property
    def det(self) -> Number:
        return self.m11 * self.m22 - self.m12 * self.m21

    @property
    def is_exact(self) -> bool:
        return not any(isinstance(getattr(self, f.name), float) for f in fields(self))

    @property
    def is_linear(self) -> bool:
        return self.s1 == 0 and self.s2 == 0

    def __call__(self, p, q) -> tuple:
        return (self.m11 * p + self.m12 * q + self.s1, self.m21 * p + self.m22 * q + self.s2)

    def compose(self, inner: "AffineMap2") -> "AffineMap2":
        """``self o inner``."""
        s1, s2 = self(inner.s1, inner.s2)
        return AffineMap2(
            self.m11 * inner.m11 + self.m12 * inner.m21,
            self.m11 * inner.m12 + self.m12 * inner.m22,
            self.m21 * inner.m11 + self.m22 * inner.m21,
            self.m21 * inner.m12 + self.m22 * inner.m22,
            s1,
            s2,
        )

    def inverse(self) -> "AffineMap2":
        d = self.det
        n11, n12, n21, n22 = self.m22 / d, -self.m12 / d, -self.m21 / d, self.m11 / d
        return AffineMap2(n11, n12, n21, n22, -(n11 * self.s1 + n12 * self.s2), -(n21 * self.s1 + n22 * self.s2))

    def to_json(self) -> dict:
        return {
            "matrix": [[_render(self.m11), _render(self.m12)], [_render(self.m21), _render(self.m22)]],
            "shift": [_render(self.s1), _render(self.s2)],
        }

    @classmethod
    def from_json(cls, doc) -> "AffineMap2":
        try:
            (m11, m12), (m21, m22) = doc["matrix"]
            s1, s2 = doc.get("shift", ["0", "0"])
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput("affine map must be {matrix: [[..],[..]], shift: [..]}") from exc
        return cls(m11, m12, m21, m22, s1, s2)


def _pull_row(r, t: AffineMap2) -> tuple:
    A, B, C, D, E, F = r
    m11, m12, m21, m22, s1, s2 = t.m11, t.m12, t.m21, t.m22, t.s1, t.s2
    return (
        A * m11 * m11 + 2 * B * m11 * m21 + C * m21 * m21,
        A * m11 * m12 + B * (m11 * m22 + m12 * m21) + C * m21 * m22,
        A * m12 * m12 + 2 * B * m12 * m22 + C * m22 * m22,
        A * m11 * s1 + B * (m11 * s2 + m21 * s1) + C * m21 * s2 + D * m11 + E * m21,
        A * m12 * s1 + B * (m12 * s2 + m22 * s1) + C * m22 * s2 + D * m12 + E * m22,
        A * s1 * s1 + 2 * B * s1 * s2 + C * s2 * s2 + 2 * D * s1 + 2 * E * s2 + F,
    )


def compose_source(f: QuadMap, t: AffineMap2) -> QuadMap:
    """``f o t``: substitute ``(p, q) -> t(p, q)`` into both rows."""
    return QuadMap.from_rows(_pull_row(f.row_a, t), _pull_row(f.row_b, t))


def compose_target(t: AffineMap2, f: QuadMap) -> QuadMap:
    """``t o f``: recombine the rows of ``f`` and shift the result."""
    a, b = f.row_a, f.row_b
    na = [t.m11 * x + t.m12 * y for x, y in zip(a, b)]
    nb = [t.m21 * x + t.m22 * y for x, y in zip(a, b)]
    na[5] += t.s1
    nb[5] += t.s2
    return QuadMap.from_rows(na, nb)


# -- pre-canonical shapes -----------------------------------------------------

def shear_map() -> QuadMap:
    """``p~ = p + q^2, q~ = q``: the invertible representative."""
    return QuadMap(a02=1, a10=Fraction(1, 2), b01=Fraction(1, 2))


def indefinite_canonical() -> QuadMap:
    """``p~ = p^2 + q, q~ = q^2 + p``."""
    return QuadMap(a20=1, a01=Fraction(1, 2), b02=1, b10=Fraction(1, 2))


def semidefinite_canonical(a10=0) -> QuadMap:
    """``p~ = pq + 2 a10 p, q~ = q^2 + p``."""
    return QuadMap(a11=Fraction(1, 2), a10=a10, b02=1, b10=Fraction(1, 2))


def definite_canonical(a10=0, a01=0) -> QuadMap:
    """``p~ = p^2 - q^2 + 2 a10 p + 2 a01 q, q~ = pq``."""
    return QuadMap(a20=1, a02=-1, a10=a10, a01=a01, b11=Fraction(1, 2))
