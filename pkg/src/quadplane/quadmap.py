"""Invertibility decisions, reductions to normal form, and inverses.

Every reduction keeps ``g = T o f o S`` where ``S`` collects the source
changes of variables and ``T`` the target ones.  Steps are recorded in a
:class:`ReductionTranscript` so that replaying them from the initial map
reproduces the final one.

Normal forms reached:

* zero form: ``p~ = p + q^2, q~ = q`` (the only invertible one);
* indefinite: ``p~ = p^2 + q, q~ = q^2 + p``;
* semi-definite: ``p~ = pq + 2 a10 p, q~ = q^2 + p``;
* definite: ``p~ = p^2 - q^2 + 2 a10 p + 2 a01 q, q~ = pq``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .errors import CertificateDisagreement, NotInvertibleError, PreconditionError
from .exactnum import Interval, format_rational, to_rational
from .maps import (
    AffineMap2,
    QuadMap,
    compose_source,
    compose_target,
    definite_canonical,
    indefinite_canonical,
    semidefinite_canonical,
    shear_map,
)
from .quadform import FormClass, FormTag, SurdDirection, classify_form, form_of, light_vectors
from .sturm import Witness, falsify

TOLERANCE = 1e-9


# -- transcripts -------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionStep:
    side: str  # "source" or "target"
    map: AffineMap2
    rule: str
    numeric: bool = False

    def apply(self, g: QuadMap) -> QuadMap:
        if self.side == "source":
            return compose_source(g, self.map)
        return compose_target(self.map, g)

    def to_json(self) -> dict:
        return {"side": self.side, "map": self.map.to_json(), "rule": self.rule, "numeric": self.numeric}


@dataclass(frozen=True)
class ReductionTranscript:
    initial: QuadMap
    steps: tuple
    final: QuadMap
    shape: str
    reached: bool
    note: str = ""

    @property
    def numeric(self) -> bool:
        return any(s.numeric for s in self.steps)

    def replay(self) -> QuadMap:
        g = self.initial
        for s in self.steps:
            g = s.apply(g)
        return g

    def replay_matches(self) -> bool:
        g = self.replay()
        if not self.numeric:
            return g == self.final
        return _close(g, self.final)

    def source_total(self) -> AffineMap2:
        s = AffineMap2.identity()
        for st in self.steps:
            if st.side == "source":
                s = s.compose(st.map)
        return s

    def target_total(self) -> AffineMap2:
        t = AffineMap2.identity()
        for st in self.steps:
            if st.side == "target":
                t = st.map.compose(t)
        return t

    def to_json(self) -> dict:
        return {
            "initial": self.initial.to_json(),
            "steps": [s.to_json() for s in self.steps],
            "final": self.final.to_json(),
            "shape": self.shape,
            "reached": self.reached,
            "numeric": self.numeric,
            "note": self.note,
        }


def _close(f: QuadMap, g: QuadMap, tol: float = TOLERANCE) -> bool:
    return all(abs(float(x) - float(y)) <= tol * max(1.0, abs(float(y))) for x, y in zip(f.coeffs(), g.coeffs()))


class _Builder:
    def __init__(self, f: QuadMap):
        self.initial = f
        self.g = f
        self.steps: list[ReductionStep] = []

    def source(self, t: AffineMap2, rule: str):
        self._push(ReductionStep("source", t, rule, not t.is_exact))

    def target(self, t: AffineMap2, rule: str):
        self._push(ReductionStep("target", t, rule, not t.is_exact))

    def _push(self, step: ReductionStep):
        if step.map == AffineMap2.identity():
            return
        self.steps.append(step)
        self.g = step.apply(self.g)

    def done(self, shape: str, reached: bool, note: str = "") -> ReductionTranscript:
        return ReductionTranscript(self.initial, tuple(self.steps), self.g, shape, reached, note)


# -- zero class ----------------------------------------------------------------

@dataclass(frozen=True)
class _ZeroOutcome:
    transcript: ReductionTranscript
    witness: Optional[Witness]


def _collision(f: QuadMap, pts) -> Witness:
    imgs = {f.eval(*pt) for pt in pts}
    if len(imgs) != 1 or len(set(pts)) != len(pts):
        raise CertificateDisagreement(f"obstruction points {pts} do not collide")
    target = imgs.pop()
    return Witness("Collision", target, tuple((Interval.point(p), Interval.point(q)) for p, q in pts))


def _reduce_zero(f: QuadMap) -> _ZeroOutcome:
    """Exact reduction of a zero-form map to the shear, or an exact collision."""
    b = _Builder(f)
    g = b.g
    if g.a20 == 0 and g.a11 == 0 and g.a02 == 0:
        b.target(AffineMap2.swap(), "target swap: move the quadratic row first")
        g = b.g
    # rows have proportional quadratic parts; cancel the second against the first
    i = next(k for k in range(3) if g.row_a[k] != 0)
    r = g.row_b[i] / g.row_a[i]
    if r != 0:
        b.target(AffineMap2(1, 0, -r, 1), "target shear: cancel the quadratic part of the second row")
        g = b.g

    if g.b10 == 0 and g.b01 == 0:
        # second component constant: the first one is quadratic along some line
        for v in ((1, 0), (0, 1), (1, 1)):
            qv = g.a20 * v[0] ** 2 + 2 * g.a11 * v[0] * v[1] + g.a02 * v[1] ** 2
            if qv != 0:
                break
        ts = -(g.a10 * v[0] + g.a01 * v[1]) / qv
        pts = [((ts + e) * v[0], (ts + e) * v[1]) for e in (-1, 1)]
        return _ZeroOutcome(b.done("obstruction", False, "second component is constant"), _collision(f, pts))

    if g.b01 == 0:
        b.source(AffineMap2.swap(), "source swap: second row depends on p only")
        g = b.g
    b.source(
        AffineMap2(1, 0, -g.b10 / g.b01, 1 / (2 * g.b01), 0, -g.b00 / (2 * g.b01)),
        "source step: make the second row equal to q",
    )
    g = b.g

    pts = None
    if g.a20 != 0:
        ps = -g.a10 / g.a20
        pts, why = [(ps - 1, Fraction(0)), (ps + 1, Fraction(0))], "p^2 term survives: symmetric about the vertex"
    elif g.a11 != 0:
        qs = -g.a10 / g.a11
        pts, why = [(Fraction(0), qs), (Fraction(1), qs)], "pq term survives: first row is constant along q = q*"
    elif g.a10 == 0:
        pts, why = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(0))], "first row does not depend on p"
    if pts is not None:
        tr = b.done("obstruction", False, why)
        s = tr.source_total()
        return _ZeroOutcome(tr, _collision(f, [s(*pt) for pt in pts]))

    b.source(
        AffineMap2(1 / (2 * g.a10), -g.a01 / g.a10, 0, 1, -g.a00 / (2 * g.a10), 0),
        "source step: absorb the linear part of the first row into p",
    )
    g = b.g
    a02 = g.a02
    b.target(AffineMap2(1 / a02, 0, 0, 1), "target scaling: unit q^2 coefficient")
    b.source(AffineMap2(a02, 0, 0, 1), "source scaling: unit p coefficient")
    tr = b.done("shear", True)
    if tr.final != shear_map():
        raise CertificateDisagreement(f"zero-form reduction ended at {tr.final}")
    return _ZeroOutcome(tr, None)


_SHEAR_INVERSE = QuadMap(a02=-1, a10=Fraction(1, 2), b01=Fraction(1, 2))


def _inverse_from_transcript(tr: ReductionTranscript) -> QuadMap:
    # f = T^-1 o shear o S^-1, hence f^-1 = S o shear^-1 o T
    return compose_target(tr.source_total(), compose_source(_SHEAR_INVERSE, tr.target_total()))


# -- verdicts ----------------------------------------------------------------------

class Status(str, Enum):
    INVERTIBLE_QUADRATIC = "InvertibleQuadratic"
    INVERTIBLE_AFFINE = "InvertibleAffine"
    NOT_INVERTIBLE = "NotInvertible"
    DEGENERATE_CONSTANT = "DegenerateConstant"


@dataclass(frozen=True)
class InvertibilityVerdict:
    map: QuadMap
    status: Status
    form_class: FormClass
    transcript: Optional[ReductionTranscript] = None
    inverse: Optional[QuadMap] = None
    witness: Optional[Witness] = None
    reason: str = ""

    @property
    def invertible(self) -> bool:
        return self.status in (Status.INVERTIBLE_QUADRATIC, Status.INVERTIBLE_AFFINE)

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "class": self.form_class.to_json(),
            "reason": self.reason,
            "transcript": None if self.transcript is None else self.transcript.to_json(),
            "inverse": None
            if self.inverse is None
            else {"map": self.inverse.to_json(), "formula": str(self.inverse)},
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def _affine_verdict(f: QuadMap, fc: FormClass) -> InvertibilityVerdict:
    a10, a01, b10, b01 = f.a10, f.a01, f.b10, f.b01
    det = a10 * b01 - a01 * b10
    if det != 0:
        lin = AffineMap2(2 * a10, 2 * a01, 2 * b10, 2 * b01, f.a00, f.b00)
        inv = lin.inverse()
        inv_map = QuadMap(
            a10=inv.m11 / 2, a01=inv.m12 / 2, a00=inv.s1, b10=inv.m21 / 2, b01=inv.m22 / 2, b00=inv.s2
        )
        return InvertibilityVerdict(f, Status.INVERTIBLE_AFFINE, fc, inverse=inv_map, reason="affine, nonzero determinant")
    if a10 == a01 == b10 == b01 == 0:
        return InvertibilityVerdict(f, Status.DEGENERATE_CONSTANT, fc, reason="constant map")
    null = (-a01, a10) if (a10, a01) != (0, 0) else (-b01, b10)
    wit = _collision(f, [(Fraction(0), Fraction(0)), null])
    return InvertibilityVerdict(f, Status.NOT_INVERTIBLE, fc, witness=wit, reason="affine, singular linear part")


_CLASS_REASON = {
    FormTag.INDEFINITE: "indefinite associated form: no invertible map in this class",
    FormTag.SEMIDEFINITE: "semi-definite associated form: no invertible map in this class",
    FormTag.DEFINITE: "definite associated form: no invertible map in this class",
}


def decide_invertibility(f: QuadMap, falsifier_bound: int = 2) -> InvertibilityVerdict:
    """Exact invertibility verdict for a rational quadratic map.

    Affine maps are decided by their linear determinant.  Zero-form maps are
    reduced exactly, ending either at the shear (with the inverse) or at an
    explicit collision.  For the other three classes the verdict follows from
    the class alone; a grid search supplies a concrete witness when it finds
    one within ``falsifier_bound``.
    """
    if not f.is_exact:
        raise PreconditionError("decide_invertibility needs exact coefficients")
    fc = classify_form(form_of(f))
    if f.is_affine():
        return _affine_verdict(f, fc)
    if fc.tag is FormTag.ZERO:
        out = _reduce_zero(f)
        if out.witness is not None:
            return InvertibilityVerdict(
                f, Status.NOT_INVERTIBLE, fc, out.transcript, witness=out.witness, reason=out.transcript.note
            )
        inv = _inverse_from_transcript(out.transcript)
        return InvertibilityVerdict(
            f, Status.INVERTIBLE_QUADRATIC, fc, out.transcript, inverse=inv, reason="reduces to the shear"
        )
    wit = falsify(f, falsifier_bound) if falsifier_bound > 0 else None
    return InvertibilityVerdict(f, Status.NOT_INVERTIBLE, fc, witness=wit, reason=_CLASS_REASON[fc.tag])


def invert(verdict: InvertibilityVerdict, p_t, q_t) -> tuple:
    """Exact preimage of ``(p_t, q_t)`` under an invertible map."""
    if not verdict.invertible or verdict.inverse is None:
        raise NotInvertibleError(f"map is {verdict.status.value}")
    pt, qt = to_rational(p_t), to_rational(q_t)
    p, q = verdict.inverse.eval(pt, qt)
    if verdict.map.eval(p, q) != (pt, qt):
        raise CertificateDisagreement("inverse does not round-trip")
    return p, q


# -- pre-canonical forms ------------------------------------------------------------

def _exact_root(x, n: int) -> Optional[Fraction]:
    """Rational n-th root of a rational, when there is one (odd ``n`` keeps the sign)."""
    if isinstance(x, float):
        return None
    if x < 0:
        if n % 2 == 0:
            return None
        r = _exact_root(-x, n)
        return None if r is None else -r

    def iroot(k: int) -> Optional[int]:
        r = round(k ** (1.0 / n))
        for c in (r - 1, r, r + 1):
            if c >= 0 and c**n == k:
                return c
        # large values: fall back to integer Newton iteration
        lo, hi = 0, 1 << (k.bit_length() // n + 1)
        while lo < hi:
            mid = (lo + hi) // 2
            if mid**n < k:
                lo = mid + 1
            else:
                hi = mid
        return lo if lo**n == k else None

    num, den = iroot(x.numerator), iroot(x.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _root(x, n: int):
    r = _exact_root(x, n)
    if r is not None:
        return r
    xf = float(x)
    return math.copysign(abs(xf) ** (1.0 / n), xf)


def _shape_of(tag: FormTag, g: QuadMap) -> QuadMap:
    if tag is FormTag.INDEFINITE:
        return indefinite_canonical()
    if tag is FormTag.SEMIDEFINITE:
        return semidefinite_canonical(_snap(g.a10))
    return definite_canonical(_snap(g.a10), _snap(g.a01))


def _snap(x):
    return x if not isinstance(x, float) else Fraction(x)


def precanonicalize(f: QuadMap) -> ReductionTranscript:
    """Reduce ``f`` to the normal form of its class.

    Zero-form maps use the exact reduction.  The other classes stay exact
    while the required square and cube roots are rational; otherwise the
    affected steps use binary64 and are flagged ``numeric``, and the final
    map is compared to the normal form with a relative tolerance of 1e-9.
    ``reached`` is false when the map lies on a degenerate sub-locus that
    cannot be brought to the normal form.
    """
    if f.is_affine():
        raise PreconditionError("quadratic part is identically zero")
    tag = classify_form(form_of(f)).tag
    if tag is FormTag.ZERO:
        return _reduce_zero(f).transcript
    b = _Builder(f)
    if tag is FormTag.INDEFINITE:
        ok = _indefinite(b)
        name = "indefinite"
    elif tag is FormTag.SEMIDEFINITE:
        ok = _semidefinite(b)
        name = "semidefinite"
    else:
        ok = _definite(b)
        name = "definite"
    if not ok:
        return b.done(name, False, "degenerate linear part: normal form not reachable")
    g = b.g
    target = _shape_of(tag, g)
    reached = g == target if g.is_exact else _close(g, target)
    return b.done(name, reached)


def _clear_constants(b: _Builder):
    g = b.g
    if g.a00 != 0 or g.b00 != 0:
        b.target(AffineMap2.shift(-g.a00, -g.b00), "target shift: remove constant terms")


def _indefinite(b: _Builder) -> bool:
    lv = light_vectors(form_of(b.g))
    cols = [v.approx() if isinstance(v, SurdDirection) else v for v in lv.vectors]
    (c11, c21), (c12, c22) = cols
    b.source(AffineMap2(c11, c12, c21, c22), "source frame: light vectors as columns")
    g = b.g
    d = AffineMap2(g.a20, g.a02, g.b20, g.b02).inverse()
    b.target(d, "target frame: reduce the quadratic parts to p^2 and q^2")
    g = b.g
    if g.a10 != 0 or g.b01 != 0:
        b.source(AffineMap2.shift(-g.a10, -g.b01), "source shift: complete the squares")
    _clear_constants(b)
    g = b.g
    if g.a01 == 0 or g.b10 == 0:
        return False
    lam = 2 * _root(g.a01**2 * g.b10, 3)
    mu = 2 * _root(g.a01 * g.b10**2, 3)
    b.source(AffineMap2.diag(lam, mu), "source scaling by cube roots")
    b.target(AffineMap2.diag(1 / lam**2, 1 / mu**2), "target scaling: unit squares")
    return True


def _semidefinite(b: _Builder) -> bool:
    (v,) = light_vectors(form_of(b.g)).vectors
    w = (Fraction(0), Fraction(1)) if v[0] != 0 else (Fraction(1), Fraction(0))
    b.source(AffineMap2(v[0], w[0], v[1], w[1]), "source frame: light vector first")
    g = b.g
    b.target(AffineMap2(2 * g.a11, g.a02, 2 * g.b11, g.b02).inverse(), "target frame: quadratic parts pq and q^2")
    g = b.g
    if g.b01 != 0:
        b.source(AffineMap2.shift(0, -g.b01), "source shift in q: remove the linear q term of the second row")
        g = b.g
    if g.a01 != 0:
        b.source(AffineMap2.shift(-2 * g.a01, 0), "source shift in p: remove the linear q term of the first row")
    _clear_constants(b)
    g = b.g
    if g.b10 == 0:
        return False
    b.source(AffineMap2.diag(1 / (2 * g.b10), 1), "source scaling: unit p coefficient in the second row")
    b.target(AffineMap2.diag(2 * g.b10, 1), "target scaling: unit pq coefficient")
    return True


def _definite(b: _Builder) -> bool:
    t = form_of(b.g)
    b.source(AffineMap2(1, -t.beta / (2 * t.alpha), 0, 1), "source frame: omega1-orthogonal basis")
    g = b.g
    if g.a20 == 0:
        b.target(AffineMap2.swap(), "target swap: p^2 in the first row")
        g = b.g
    b.target(AffineMap2(1, 0, -g.b20, g.a20), "target shear: second row loses p^2 and q^2")
    g = b.g
    if g.a11 != 0:
        b.target(AffineMap2(1, -g.a11 / g.b11, 0, 1), "target shear: first row loses pq")
        g = b.g
    s = _root(-g.a20 / g.a02, 2)
    b.source(AffineMap2.diag(1, s), "source scaling of q: opposite unit squares")
    g = b.g
    b.target(AffineMap2.diag(1 / g.a20, 1 / (2 * g.b11)), "target scaling: unit p^2 and pq")
    g = b.g
    if g.b10 != 0 or g.b01 != 0:
        b.source(AffineMap2.shift(-2 * g.b01, -2 * g.b10), "source shift: second row becomes a product")
    _clear_constants(b)
    return True


# -- equivalence and lattices ---------------------------------------------------------

def check_equivalence(f1: QuadMap, f2: QuadMap, phi1: AffineMap2, phi2: AffineMap2) -> bool:
    """Whether ``phi1 o f1 == f2 o phi2`` coefficient by coefficient."""
    if not (phi1.is_linear and phi2.is_linear):
        raise PreconditionError("equivalence uses linear maps without shifts")
    return compose_target(phi1, f1) == compose_source(f2, phi2)


@dataclass(frozen=True)
class LatticeReport:
    bijective_on_lattice: bool
    reason: str

    def to_json(self) -> dict:
        return {"bijective_on_lattice": self.bijective_on_lattice, "reason": self.reason}


def _integral(f: QuadMap) -> Optional[str]:
    for row, name in ((f.row_a, "a"), (f.row_b, "b")):
        for key, c, k in zip(("20", "11", "02", "10", "01", "00"), row, (1, 2, 1, 2, 2, 1)):
            if (c * k).denominator != 1:
                return f"{name}{key}: {format_rational(c * k)} is not an integer"
    return None


def lattice_check(f: QuadMap) -> LatticeReport:
    """Whether ``f`` maps the integer lattice bijectively onto itself.

    The test is sufficient: the map must be invertible and both it and its
    inverse must have integral coefficients in evaluation form.
    """
    v = decide_invertibility(f, falsifier_bound=0)
    if not v.invertible:
        return LatticeReport(False, f"map is {v.status.value}")
    bad = _integral(f)
    if bad:
        return LatticeReport(False, "forward map not integral: " + bad)
    bad = _integral(v.inverse)
    if bad:
        return LatticeReport(False, "inverse not integral: " + bad)
    return LatticeReport(True, "map and inverse are integral")
