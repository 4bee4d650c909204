"""Closed-form discriminants and real-root certificates for cubics and quartics.

Every formula here is written out term by term in the coefficients of a monic
polynomial and evaluated in exact rational arithmetic.  The quartic decision
procedure answers a single question: does ``x^4 + a1 x^3 + a2 x^2 + a3 x + a4``
have exactly one distinct real root?  It records every intermediate quantity so
the verdict can be re-audited by hand.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .exactnum import Interval, Poly1, format_rational, poly_gcd, to_rational


# -- cubics -------------------------------------------------------------------

def cubic_discriminant(alpha1, alpha2, alpha3) -> Fraction:
    """Discriminant of ``q^3 + alpha1 q^2 + alpha2 q + alpha3``."""
    a1, a2, a3 = map(to_rational, (alpha1, alpha2, alpha3))
    return (
        -27 * a3**2
        + 18 * a3 * a1 * a2
        + a1**2 * a2**2
        - 4 * a1**3 * a3
        - 4 * a2**3
    )


def cubic_disc_resolvent(a10, p_t, q_t) -> Fraction:
    """Discriminant of ``q^3 + 2 a10 q^2 - q_t q - 2 a10 q_t + p_t`` in closed form.

    This cubic arises when the normal form ``(pq + 2 a10 p, q^2 + p)`` is
    solved for ``q`` at the target ``(p_t, q_t)``.
    """
    a10, p, q = map(to_rational, (a10, p_t, q_t))
    return 4 * q**3 - 32 * a10**2 * q**2 + 8 * a10 * (9 * p + 8 * a10**3) * q - p * (32 * a10**3 + 27 * p)


class CubicVerdict(str, Enum):
    ONE_SIMPLE_REAL = "OneSimpleReal"
    THREE_DISTINCT_REAL = "ThreeDistinctReal"
    REPEATED_ROOT = "RepeatedRootCase"


@dataclass(frozen=True)
class CubicCert:
    alpha1: Fraction
    alpha2: Fraction
    alpha3: Fraction
    D3: Fraction
    verdict: CubicVerdict
    distinct_real_count: int
    # (locator, multiplicity); an exact locator is a point interval
    multiplicities: tuple = ()

    def to_json(self) -> dict:
        return {
            "alpha": [format_rational(self.alpha1), format_rational(self.alpha2), format_rational(self.alpha3)],
            "D3": format_rational(self.D3),
            "verdict": self.verdict.value,
            "distinct_real_count": self.distinct_real_count,
            "roots": [{"locator": loc.to_json(), "multiplicity": m} for loc, m in self.multiplicities],
        }


def cubic_classify(alpha1, alpha2, alpha3) -> CubicCert:
    """Classify the real roots of a monic cubic from the sign of its discriminant.

    When the discriminant vanishes the repeated root is rational and is read
    off exactly from ``gcd(P, P')``.
    """
    a1, a2, a3 = map(to_rational, (alpha1, alpha2, alpha3))
    d3 = cubic_discriminant(a1, a2, a3)
    p = Poly1([a3, a2, a1, 1])
    if d3 == 0:
        g = poly_gcd(p, p.derivative())
        if g.degree == 2:
            r = -a1 / 3
            mult = ((Interval.point(r), 3),)
            return CubicCert(a1, a2, a3, d3, CubicVerdict.REPEATED_ROOT, 1, mult)
        # g is monic linear: x - r
        r = -g[0]
        s = -a1 - 2 * r
        mult = tuple(sorted([(Interval.point(r), 2), (Interval.point(s), 1)], key=lambda t: t[0].lo))
        return CubicCert(a1, a2, a3, d3, CubicVerdict.REPEATED_ROOT, 2, mult)

    from .sturm import sturm_count  # display only; the verdict never consults it

    rc = sturm_count(p, refine=False)
    verdict = CubicVerdict.ONE_SIMPLE_REAL if d3 < 0 else CubicVerdict.THREE_DISTINCT_REAL
    count = 1 if d3 < 0 else 3
    return CubicCert(a1, a2, a3, d3, verdict, count, tuple((iv, 1) for iv in rc.intervals))


# -- quartics -----------------------------------------------------------------

def quartic_discriminant(a1, a2, a3, a4) -> Fraction:
    """Discriminant of the monic quartic ``x^4 + a1 x^3 + a2 x^2 + a3 x + a4``."""
    a1, a2, a3, a4 = map(to_rational, (a1, a2, a3, a4))
    return (
        18 * a1**3 * a3 * a2 * a4
        + 256 * a4**3
        - 6 * a1**2 * a3**2 * a4
        - 192 * a1 * a3 * a4**2
        + 18 * a1 * a3**3 * a2
        + 144 * a2 * a1**2 * a4**2
        + a2**2 * a1**2 * a3**2
        - 4 * a2**3 * a1**2 * a4
        + 144 * a4 * a3**2 * a2
        - 4 * a1**3 * a3**3
        - 27 * a3**4
        - 128 * a2**2 * a4**2
        + 16 * a2**4 * a4
        - 4 * a2**3 * a3**2
        - 27 * a1**4 * a4**2
        - 80 * a1 * a3 * a2**2 * a4
    )


def resolvent_disc_indefinite(p_t, q_t) -> Fraction:
    """Discriminant of ``q^4 - 2 q_t q^2 + q + q_t^2 - p_t`` in closed form."""
    p, q = to_rational(p_t), to_rational(q_t)
    return -256 * p**3 + 256 * q**2 * p**2 + 288 * q * p - 256 * q**3 - 27


def resolvent_disc_definite(a10, a01, p_t, q_t) -> Fraction:
    """Discriminant of ``q^4 + 2 a01 q^3 - p_t q^2 + 2 a10 q_t q + q_t^2``."""
    a10, a01, p, q = map(to_rational, (a10, a01, p_t, q_t))
    return (
        256 * q**6
        - 768 * a01 * a10 * q**5
        - (
            576 * p * a01**2
            + 576 * a10**2 * p
            + 432 * a01**4
            + 96 * a01**2 * a10**2
            + 128 * p**2
            + 432 * a10**4
        ) * q**4
        - (
            288 * a01**3 * a10 * p
            + 320 * a01 * a10 * p**2
            + 256 * a01**3 * a10**3
            + 288 * a01 * a10**3 * p
        ) * q**3
        + (
            16 * p**4
            + 16 * p**3 * a10**2
            + 16 * p**2 * a01**2 * a10**2
            + 16 * p**3 * a01**2
        ) * q**2
    )


def _A0(a1, a2, a3, a4):
    return (
        8 * a2**3 + 36 * a3**2 + 6 * a1**3 * a3 - 32 * a2 * a4
        - 2 * a1**2 * a2**2 + 12 * a1**2 * a4 - 28 * a1 * a2 * a3
    )


def _A1(a1, a2, a3, a4):
    return (
        -3 * a1 * a3**2 + 48 * a4 * a3 + 9 * a1**3 * a4 + 4 * a3 * a2**2
        - a3 * a2 * a1**2 - 32 * a1 * a4 * a2
    )


def _B2(a1, a2, a3, a4):
    # 37 terms; grouped exactly as they appear when the expression is written out
    return (
        552 * a2**2 * a1**4 * a3**2 - 30 * a1**6 * a4 * a2**2 - 64 * a2**7
        + 2208 * a1 * a3**3 * a2**2
        - 616 * a2**3 * a1**2 * a3**2 - 704 * a2**4 * a1**2 * a4
        + 264 * a2**3 * a1**4 * a4 + 1536 * a4 * a3**2 * a2**2
        - 336 * a1**3 * a2**4 * a3 + 480 * a1 * a2**5 * a3 + 78 * a1**5 * a2**3 * a3
        - 900 * a2 * a1**3 * a3**3
        + 144 * a2 * a1**4 * a4**2 - 126 * a2 * a1**6 * a3**2 + 900 * a1**4 * a4 * a3**2
        - 1152 * a1**3 * a4**2 * a3
        + 2304 * a1 * a3**3 * a4 - 1296 * a2 * a3**4 - 1024 * a2**3 * a4**2
        + 512 * a2**5 * a4
        - 608 * a2**4 * a3**2 - 12 * a1**4 * a2**5 + 48 * a1**2 * a2**6
        - 18 * a1**6 * a4**2 + 198 * a1**2 * a3**4
        - 4608 * a4**2 * a3**2 + 90 * a1**5 * a3**3 + a1**6 * a2**4 + 9 * a1**8 * a3**2
        + 2112 * a1**3 * a3 * a2**2 * a4
        - 1024 * a1 * a3 * a2**3 * a4 - 4032 * a2 * a1**2 * a3**2 * a4
        - 828 * a2 * a1**5 * a4 * a3
        + 4608 * a4**2 * a3 * a1 * a2 + 90 * a1**7 * a4 * a3 - 6 * a1**7 * a2**2 * a3
    )


@dataclass(frozen=True)
class QuarticAux:
    A0: Fraction
    A1: Fraction
    B2: Fraction
    D2_special: Fraction


def quartic_aux(a1, a2, a3, a4) -> QuarticAux:
    """Auxiliary quantities of the one-real-root test.

    ``A0 x + A1`` is the linear remainder that every double root must satisfy,
    ``B2`` is the numerator of the cofactor discriminant after substituting
    ``x0 = -A1/A0``, and ``D2_special`` is the cofactor discriminant when
    ``x0 = -a1/4``.
    """
    a1, a2, a3, a4 = map(to_rational, (a1, a2, a3, a4))
    return QuarticAux(
        A0=_A0(a1, a2, a3, a4),
        A1=_A1(a1, a2, a3, a4),
        B2=_B2(a1, a2, a3, a4),
        D2_special=Fraction(3, 2) * a1**2 - 4 * a2,
    )


@dataclass(frozen=True)
class QuadraticFactor:
    """Cofactor ``x^2 + b1 x + b2`` in ``P4 = (x - x0)^2 (x^2 + b1 x + b2)``."""

    b1: Fraction
    b2: Fraction
    D2: Fraction

    @classmethod
    def from_double_root(cls, a1, a2, x0) -> "QuadraticFactor":
        b1 = a1 + 2 * x0
        b2 = a2 - x0**2 + 2 * b1 * x0
        return cls(b1, b2, b1**2 - 4 * b2)

    def to_json(self) -> dict:
        return {"b1": format_rational(self.b1), "b2": format_rational(self.b2), "D2": format_rational(self.D2)}


class QuarticBranch(str, Enum):
    GENERIC = "GenericSimpleRoots"
    DOUBLE = "DoubleRootBranch"
    QUADRUPLE = "QuadrupleBranch"
    TWO_DOUBLE = "TwoDoubleRealBranch"


@dataclass(frozen=True)
class QuarticCert:
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    D4: Fraction
    A0: Fraction
    A1: Fraction
    B2: Fraction
    D2_special: Fraction
    exactly_one_real: bool
    branch: QuarticBranch
    x0: Optional[Fraction] = None
    factor: Optional[QuadraticFactor] = None

    @property
    def polynomial(self) -> Poly1:
        return Poly1([self.a4, self.a3, self.a2, self.a1, 1])

    def structure(self):
        """Root structure from the Sturm oracle; reported for ``D4 != 0``."""
        from .sturm import sturm_count

        return sturm_count(self.polynomial)

    def to_json(self) -> dict:
        out = {
            "a": [format_rational(c) for c in (self.a1, self.a2, self.a3, self.a4)],
            "D4": format_rational(self.D4),
            "A0": format_rational(self.A0),
            "A1": format_rational(self.A1),
            "B2": format_rational(self.B2),
            "D2_special": format_rational(self.D2_special),
            "exactly_one_real": self.exactly_one_real,
            "branch": self.branch.value,
            "x0": None if self.x0 is None else format_rational(self.x0),
            "factor": None if self.factor is None else self.factor.to_json(),
        }
        if self.branch is QuarticBranch.GENERIC:
            out["structure"] = self.structure().to_json()
        return out


def quartic_exactly_one_real(a1, a2, a3, a4) -> QuarticCert:
    """Decide whether a monic real quartic has exactly one distinct real root.

    The answer is yes iff the discriminant vanishes and either ``A0 != 0`` with
    ``B2 < 0`` (one real double root, complex pair elsewhere) or ``A0 == 0``
    with ``D2_special == 0`` (a quadruple root at ``-a1/4``).

    Branch labels record the decision path:

    * ``GenericSimpleRoots``: ``D4 != 0``, all roots simple.
    * ``DoubleRootBranch``: ``D4 == 0`` and ``A0 != 0``; the double root is
      ``x0 = -A1/A0`` and the verdict is ``B2 < 0``.
    * ``QuadrupleBranch``: ``D4 == 0`` and ``A0 == 0``; the candidate root is
      ``x0 = -a1/4`` and the verdict is ``D2_special == 0``.
    * ``TwoDoubleRealBranch``: ``D4 == 0``, ``A0 != 0``, ``B2 == 0``.  Since
      ``A0 = -2 D2 P2(x0)^2`` and ``4 B2 = A0^2 D2`` on this locus, the
      combination cannot occur; it is kept so the label set is total.
    """
    a1, a2, a3, a4 = map(to_rational, (a1, a2, a3, a4))
    d4 = quartic_discriminant(a1, a2, a3, a4)
    aux = quartic_aux(a1, a2, a3, a4)
    common = dict(a1=a1, a2=a2, a3=a3, a4=a4, D4=d4, A0=aux.A0, A1=aux.A1, B2=aux.B2, D2_special=aux.D2_special)

    if d4 != 0:
        return QuarticCert(**common, exactly_one_real=False, branch=QuarticBranch.GENERIC)

    if aux.A0 != 0:
        x0 = -aux.A1 / aux.A0
        factor = QuadraticFactor.from_double_root(a1, a2, x0)
        if aux.B2 == 0:
            return QuarticCert(**common, exactly_one_real=False, branch=QuarticBranch.TWO_DOUBLE, x0=x0, factor=factor)
        return QuarticCert(
            **common, exactly_one_real=aux.B2 < 0, branch=QuarticBranch.DOUBLE, x0=x0, factor=factor
        )

    # otherwise the quartic is a square of a quadratic centred at x0, which is then no root
    x0 = -a1 / 4
    quadruple = aux.D2_special == 0
    return QuarticCert(
        **common,
        exactly_one_real=quadruple,
        branch=QuarticBranch.QUADRUPLE,
        x0=x0,
        factor=QuadraticFactor.from_double_root(a1, a2, x0) if quadruple else None,
    )


@dataclass(frozen=True)
class EliminationLadder:
    Q3: Poly1
    Q2: Poly1
    R2: Poly1
    P1: Poly1


def elimination_ladder(a1, a2, a3, a4) -> EliminationLadder:
    """Successive polynomial combinations of ``P4`` and ``P4'`` down to a line.

    ``Q3 = 4 P4 - x P4'``, ``Q2 = 4 Q3 - a1 P4'``,
    ``R2 = (8 a2 - 3 a1^2) P4' - 4 x Q2`` and
    ``P1 = ((8 a2 - 3 a1^2) R2 - (32 a1 a2 - 48 a3 - 9 a1^3) Q2) / 16``.
    The closed forms below are the expanded results; any common root of
    ``P4`` and ``P4'`` is a root of each of them.
    """
    a1, a2, a3, a4 = map(to_rational, (a1, a2, a3, a4))
    q3 = Poly1([4 * a4, 3 * a3, 2 * a2, a1])
    q2 = Poly1([16 * a4 - a1 * a3, 12 * a3 - 2 * a1 * a2, 8 * a2 - 3 * a1**2])
    r2 = Poly1([
        8 * a3 * a2 - 3 * a1**2 * a3,
        4 * a1 * a3 - 64 * a4 - 6 * a2 * a1**2 + 16 * a2**2,
        32 * a1 * a2 - 48 * a3 - 9 * a1**3,
    ])
    p1 = Poly1([_A1(a1, a2, a3, a4), _A0(a1, a2, a3, a4)])
    return EliminationLadder(q3, q2, r2, p1)
