"""The binary quadratic form attached to a quadratic map, and its classification.

For a map with quadratic rows ``(a20, a11, a02)`` and ``(b20, b11, b02)`` the
three 2x2 minors give ``2 alpha``, ``2 beta``, ``2 gamma`` and the form

    omega1(c) = 2 alpha c1^2 + 2 beta c1 c2 + 2 gamma c2^2

with matrix ``[[2 alpha, beta], [beta, 2 gamma]]``.  Under a linear change of
source variables ``A`` this matrix transforms as ``det(A) * A^T M A``, and under
a linear change of target variables ``D`` it is multiplied by ``det(D)``, so
the sign of its determinant is an invariant of the whole equivalence class.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .errors import CertificateDisagreement, PreconditionError
from .exactnum import Interval, Poly1, format_rational, to_rational
from .maps import QuadMap


@dataclass(frozen=True)
class FormTriple:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    @property
    def matrix(self) -> tuple:
        return ((2 * self.alpha, self.beta), (self.beta, 2 * self.gamma))

    @property
    def det(self):
        return 4 * self.alpha * self.gamma - self.beta**2

    def __call__(self, c1, c2):
        return 2 * self.alpha * c1 * c1 + 2 * self.beta * c1 * c2 + 2 * self.gamma * c2 * c2

    def is_zero(self) -> bool:
        return self.alpha == 0 and self.beta == 0 and self.gamma == 0

    def to_json(self) -> dict:
        return {k: _render(getattr(self, k)) for k in ("alpha", "beta", "gamma")}


def _render(x) -> str:
    return repr(x) if isinstance(x, float) else format_rational(x)


class FormTag(str, Enum):
    ZERO = "Zero"
    INDEFINITE = "Indefinite"
    SEMIDEFINITE = "SemiDefinite"
    DEFINITE = "Definite"


@dataclass(frozen=True)
class FormClass:
    tag: FormTag
    det_omega1: Fraction

    def to_json(self) -> dict:
        return {"tag": self.tag.value, "det_omega1": _render(self.det_omega1)}


def form_of(f: QuadMap) -> FormTriple:
    return FormTriple(
        (f.a20 * f.b11 - f.a11 * f.b20) / 2,
        (f.a20 * f.b02 - f.a02 * f.b20) / 2,
        (f.a11 * f.b02 - f.a02 * f.b11) / 2,
    )


def classify_form(t: FormTriple) -> FormClass:
    d = t.det
    if t.is_zero():
        tag = FormTag.ZERO
    elif d > 0:
        tag = FormTag.DEFINITE
    elif d < 0:
        tag = FormTag.INDEFINITE
    else:
        tag = FormTag.SEMIDEFINITE
    return FormClass(tag, d)


# -- light vectors ---------------------------------------------------------------

@dataclass(frozen=True)
class SurdDirection:
    """The direction ``(t, 1)`` where ``t`` is the root of ``poly`` inside ``interval``."""

    poly: Poly1
    interval: Interval

    def approx(self) -> tuple:
        t = float(self.interval.mid)
        return (t, 1.0)

    def to_json(self) -> dict:
        return {"direction": ["t", "1"], "t_root_of": self.poly.to_json(), "interval": self.interval.to_json()}


@dataclass(frozen=True)
class LightVectors:
    """Null directions of omega1: ``kind`` is ``all``, ``none`` or ``finite``."""

    kind: str
    vectors: tuple = ()

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "vectors": [
                v.to_json() if isinstance(v, SurdDirection) else [format_rational(x) for x in v] for v in self.vectors
            ],
        }


def _normalize(v) -> tuple:
    lead = v[0] if v[0] != 0 else v[1]
    return (v[0] / lead, v[1] / lead)


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    from math import isqrt

    if x < 0:
        return None
    n, d = isqrt(x.numerator), isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def light_vectors(t: FormTriple) -> LightVectors:
    """Directions ``c`` with ``omega1(c) = 0``.

    Rational directions are normalized so the first nonzero entry is 1.
    Irrational ones are returned as :class:`SurdDirection` descriptors.
    """
    a, b, g = map(to_rational, (t.alpha, t.beta, t.gamma))
    cls = classify_form(FormTriple(a, b, g)).tag
    if cls is FormTag.ZERO:
        return LightVectors("all")
    if cls is FormTag.DEFINITE:
        return LightVectors("none")
    if a == 0:
        # omega1 = 2 c2 (beta c1 + gamma c2)
        vs = [(Fraction(1), Fraction(0))]
        if cls is FormTag.INDEFINITE:
            vs.append(_normalize((-g, b)))
        return LightVectors("finite", tuple(vs))
    # c1/c2 = t solves 2a t^2 + 2b t + 2g = 0
    disc = b * b - 4 * a * g
    if disc == 0:
        return LightVectors("finite", (_normalize((-b / (2 * a), Fraction(1))),))
    r = _rational_sqrt(disc)
    if r is not None:
        roots = sorted([(-b - r) / (2 * a), (-b + r) / (2 * a)])
        return LightVectors("finite", tuple(_normalize((x, Fraction(1))) for x in roots))
    from .sturm import sturm_count

    quad = Poly1([2 * g, 2 * b, 2 * a])
    rc = sturm_count(quad)
    return LightVectors("finite", tuple(SurdDirection(quad, iv) for iv in rc.intervals))


# -- the four-variable forms -------------------------------------------------------

def omega2_omega3(t: FormTriple, c: Sequence) -> tuple:
    """``omega2 = c1 (alpha c3 + beta c4) + c2 (beta c3 + gamma c4)`` and ``omega3 = 2 (c1 c4 - c2 c3)``."""
    c1, c2, c3, c4 = c
    w2 = c1 * (t.alpha * c3 + t.beta * c4) + c2 * (t.beta * c3 + t.gamma * c4)
    w3 = 2 * (c1 * c4 - c2 * c3)
    return w2, w3


def definite_case_vector(t: FormTriple) -> tuple:
    """A vector with ``omega2 = 0`` and ``omega3 = -2 (alpha gamma + 3 beta^2) < 0``.

    Only defined for definite triples, where ``gamma`` cannot vanish.
    """
    if classify_form(t).tag is not FormTag.DEFINITE:
        raise PreconditionError("definite_case_vector needs a definite form")
    a, b, g = t.alpha, t.beta, t.gamma
    c = (g, -3 * b, -2 * b, (3 * b * b - a * g) / g)
    w2, w3 = omega2_omega3(t, c)
    if w2 != 0 or w3 != -2 * (a * g + 3 * b * b) or not w3 < 0:
        raise CertificateDisagreement(f"definite case vector fails its identities: {w2}, {w3}")
    return c
