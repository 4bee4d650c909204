"""Sturm-sequence root counting and the preimage search built on it.

Nothing in this module consults the closed-form discriminants; it is the
independent oracle those formulas are checked against.

Interval conventions: a root locator is an :class:`Interval` that is either a
single exact point or an open interval ``(lo, hi)`` holding exactly one root.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import DegenerateFiber, PreconditionError, QuadPlaneError
from .exactnum import (
    int_content_free,
    int_prem,
    Interval,
    Poly1,
    format_rational,
    interval_eval,
    poly_gcd,
    resultant,
    squarefree_decomposition,
    squarefree_part,
    to_rational,
)
from .maps import QuadMap

REFINE_WIDTH = Fraction(1, 2**32)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sturm_sequence(p: Poly1) -> list[Poly1]:
    """``p, p', -rem(p, p'), ...`` down to a constant."""
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()
    return seq


def _int_sturm(c: list[int]) -> list[list[int]]:
    # same signs as sturm_sequence: each remainder is rescaled by a positive factor only
    seq = [c, int_content_free([k * v for k, v in enumerate(c)][1:])]
    while True:
        a, b = seq[-2], seq[-1]
        r = int_prem(a, b)
        if not r:
            return seq
        if b[-1] < 0 and (len(a) - len(b) + 1) % 2:
            r = [-v for v in r]
        seq.append(int_content_free([-v for v in r]))


def _int_sign_at(c: list[int], x: Fraction) -> int:
    # sign of d^deg * c(n/d) with d > 0
    n, d = x.numerator, x.denominator
    acc, dp = 0, 1
    for v in reversed(c):
        acc = acc * n + v * dp
        dp *= d
    return _sign(acc)


def _variations(signs) -> int:
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def cauchy_bound(p: Poly1) -> Fraction:
    """Every real root satisfies ``|x| < 1 + max |a_i / lead|``."""
    lead = p.lead
    return 1 + max((abs(c / lead) for c in p.coeffs[:-1]), default=Fraction(0))


class _Counter:
    """Root counting for a fixed square-free polynomial, in integer arithmetic."""

    def __init__(self, s: Poly1):
        self.s = s
        self.ints = s.integer_primitive()
        self.seq = _int_sturm(self.ints)
        self.dints = self.seq[1]

    def sign(self, x: Fraction) -> int:
        return _int_sign_at(self.ints, x)

    def _var(self, x: Fraction) -> int:
        return _variations([_int_sign_at(c, x) for c in self.seq])

    def count_open(self, a: Fraction, b: Fraction) -> int:
        # V(a) - V(b) counts roots in (a, b]
        return self._var(a) - self._var(b) - (self.sign(b) == 0)

    def isolate(self, a: Fraction, b: Fraction) -> list[Interval]:
        out = []
        stack = [(a, b, self.count_open(a, b))]
        while stack:
            lo, hi, n = stack.pop()
            if n == 0:
                continue
            if n == 1:
                out.append(Interval(lo, hi))
                continue
            m = (lo + hi) / 2
            at_m = self.sign(m) == 0
            if at_m:
                out.append(Interval.point(m))
            left = self.count_open(lo, m)
            stack.append((lo, m, left))
            stack.append((m, hi, n - left - at_m))
        out.sort(key=lambda iv: iv.lo)
        return out

    def refine(self, iv: Interval, width: Fraction) -> Interval:
        """Bisect an isolating interval until narrower than ``width``."""
        if iv.exact:
            return iv
        a, b = iv.lo, iv.hi
        # sign just right of a; a root at a itself is simple, so s' decides
        sa = self.sign(a) or _int_sign_at(self.dints, a)
        while b - a >= width:
            m = (a + b) / 2
            fm = self.sign(m)
            if fm == 0:
                return Interval.point(m)
            if fm == sa:
                a = m
            else:
                b = m
        return Interval(a, b)

    def rational_root(self, iv: Interval) -> Optional[Fraction]:
        """The root in ``iv`` if it is rational, else ``None``.

        A rational root of an integer polynomial has denominator dividing the
        leading coefficient ``c``; two such rationals are at least ``1/c^2``
        apart, so the candidate closest to a narrow enclosure is the only one.
        """
        if iv.exact:
            return iv.lo
        c = self.ints[-1]
        box = self.refine(iv, Fraction(1, 2 * c * c))
        if box.exact:
            return box.lo
        cand = box.mid.limit_denominator(c)
        if box.lo <= cand <= box.hi and self.sign(cand) == 0:
            return cand
        return None


@dataclass(frozen=True)
class RootCount:
    distinct_real: int
    intervals: tuple = ()
    multiplicities: tuple = ()

    def to_json(self) -> dict:
        return {
            "distinct_real": self.distinct_real,
            "intervals": [iv.to_json() for iv in self.intervals],
            "multiplicities": list(self.multiplicities),
        }


def sturm_count(p: Poly1, lo=None, hi=None, refine: bool = True) -> RootCount:
    """Count and isolate the distinct real roots of ``p`` in ``[lo, hi]``.

    Missing bounds stand for the corresponding infinity.  With ``refine`` the
    isolating intervals are narrowed below ``2**-32`` and rational roots are
    reported exactly; counting never depends on it.
    """
    if p.is_zero():
        raise PreconditionError("sturm_count of the zero polynomial")
    lo = None if lo is None else to_rational(lo)
    hi = None if hi is None else to_rational(hi)
    if lo is not None and hi is not None and lo >= hi:
        raise PreconditionError("need lo < hi")
    if p.degree == 0:
        return RootCount(0)

    s = squarefree_part(p)
    ctr = _Counter(s)
    bound = cauchy_bound(s)
    a = max(lo, -bound) if lo is not None else -bound
    b = min(hi, bound) if hi is not None else bound
    if a >= b:
        ivs = [Interval.point(a)] if a == b and s(a) == 0 else []
    else:
        ivs = ctr.isolate(a, b)
        for end in (a, b):
            if s(end) == 0:
                ivs.append(Interval.point(end))
        ivs.sort(key=lambda iv: iv.lo)
    if refine:
        ivs = [_settle(ctr, iv) for iv in ivs]

    return RootCount(len(ivs), tuple(ivs), _multiplicities(p, s, ivs))


def _settle(ctr: _Counter, iv: Interval) -> Interval:
    r = ctr.rational_root(iv)
    return Interval.point(r) if r is not None else ctr.refine(iv, REFINE_WIDTH)


def _multiplicities(p: Poly1, s: Poly1, ivs: list[Interval]) -> tuple:
    if not ivs:
        return ()
    if p.degree == s.degree:
        return (1,) * len(ivs)
    factors = [(k, f, _Counter(f)) for k, f in enumerate(squarefree_decomposition(p), 1) if f.degree > 0]
    out = []
    for iv in ivs:
        for k, f, ctr in factors:
            hit = ctr.sign(iv.lo) == 0 if iv.exact else ctr.count_open(iv.lo, iv.hi) > 0
            if hit:
                out.append(k)
                break
        else:
            raise QuadPlaneError("root locator matches no square-free factor")
    return tuple(out)


# -- preimages -----------------------------------------------------------------

MAX_SHIFT = 8


def _shift_order():
    yield 0
    for k in range(1, MAX_SHIFT + 1):
        yield k
        yield -k


def _row_in_u(row, k: int, t: Fraction) -> Poly1:
    """The row minus ``t`` after ``p = u, q = v + k u``, as a polynomial in u over Q[v]."""
    c20, c11, c02, c10, c01, c00 = row
    c2 = Poly1([c20 + 2 * c11 * k + c02 * k * k])
    c1 = Poly1([2 * c10 + 2 * c01 * k, 2 * c11 + 2 * c02 * k])
    c0 = Poly1([c00 - t, 2 * c01, c02])
    return Poly1([c0, c1, c2])


def _row_is_constant(row) -> bool:
    return all(c == 0 for c in row[:5])


@dataclass(frozen=True)
class Fiber:
    """Real solutions of ``f(p, q) = target``."""

    target: tuple
    count: int
    points: tuple
    resolvent: Poly1
    shift: int
    roots: RootCount = field(default_factory=lambda: RootCount(0))

    def exact_points(self) -> list[tuple]:
        return [(p.lo, q.lo) for p, q in self.points if p.exact and q.exact]


def preimage_count(f: QuadMap, target_p, target_q) -> Fiber:
    """Solve ``f(p, q) = (target_p, target_q)`` over the reals.

    The variables are first sheared (``q = v + k u``) until both rows have a
    constant leading coefficient in ``u`` and a linear combination of the rows
    determines ``u`` uniquely at every real root of the resultant ``R(v)``.
    Each distinct real root of ``R`` then carries exactly one real solution.
    Rational solutions are returned exactly, the rest as rational boxes.
    """
    if not f.is_exact:
        raise PreconditionError("preimage_count needs exact coefficients")
    tp, tq = to_rational(target_p), to_rational(target_q)
    ra, rb = f.row_a, f.row_b
    ca, cb = _row_is_constant(ra), _row_is_constant(rb)
    if ca and cb:
        raise PreconditionError("both components are constant")
    for row, t, const in ((ra, tp, ca), (rb, tq, cb)):
        if const:
            if row[5] == t:
                raise DegenerateFiber("a constant component equals its target")
            return Fiber((tp, tq), 0, (), Poly1([row[5] - t]), 0)

    for k in _shift_order():
        fiber = _try_shift(ra, rb, tp, tq, k)
        if fiber is not None:
            return fiber
    raise QuadPlaneError("no shear in the search range puts the system in generic position")


def _try_shift(ra, rb, tp, tq, k) -> Optional[Fiber]:
    g1, g2 = _row_in_u(ra, k, tp), _row_in_u(rb, k, tq)
    if g1.degree < g2.degree:
        g1, g2 = g2, g1
    m, n = g1.degree, g2.degree
    if m == 0 or (m == 2 and n == 0):
        return None
    if m == 1 and g1.lead.degree > 0:
        return None
    if n == 1 and g2.lead.degree > 0:
        return None

    R = resultant(g1, g2)
    if R.is_zero():
        raise DegenerateFiber(f"resultant vanishes identically at target ({tp}, {tq})")
    if R.degree == 0:
        return Fiber((tp, tq), 0, (), R, k, RootCount(0))

    if n == 0 or n == 1:
        lin = g1 if n == 0 else g2
    else:
        lin = g1 * g2.lead - g2 * g1.lead
    c1, c0 = lin[1], lin[0]
    if c1.is_zero():
        return None

    rc = sturm_count(R, refine=False)
    s = squarefree_part(R)
    ctr = _Counter(s)
    bad = poly_gcd(s, c1) if c1.degree > 0 else Poly1([1])
    bctr = _Counter(bad) if bad.degree > 0 else None

    points = []
    for iv in rc.intervals:
        if bctr is not None and (bad(iv.lo) == 0 if iv.exact else bctr.count_open(iv.lo, iv.hi) > 0):
            # the linear combination degenerates here; only a rational root can be handled exactly
            v = ctr.rational_root(iv)
            if v is None:
                return None
            points.extend(_points_on_line(g1, g2, v, k))
            continue
        v = ctr.rational_root(iv)
        if v is not None:
            u = -c0(v) / c1(v)
            points.append((Interval.point(u), Interval.point(v + k * u)))
            continue
        box = ctr.refine(iv, REFINE_WIDTH)
        den = interval_eval(c1, box)
        while den.lo <= 0 <= den.hi:
            box = ctr.refine(box, box.width / 16)
            den = interval_eval(c1, box)
        ubox = interval_eval(-c0, box) * den.reciprocal()
        points.append((ubox, box + ubox.scale(Fraction(k))))
    return Fiber((tp, tq), len(points), tuple(points), R, k, rc)


def _points_on_line(g1: Poly1, g2: Poly1, v: Fraction, k: int) -> list[tuple]:
    """Common real roots in ``u`` of both rows at a fixed rational ``v``."""
    h1 = Poly1([c(v) for c in g1.coeffs])
    h2 = Poly1([c(v) for c in g2.coeffs])
    if h1.is_zero() and h2.is_zero():
        raise DegenerateFiber("both rows vanish along a line")
    g = poly_gcd(h1, h2)
    if g.degree < 1:
        return []
    uctr = _Counter(squarefree_part(g))
    out = []
    for iv in sturm_count(g, refine=False).intervals:
        u = uctr.rational_root(iv)
        if u is not None:
            out.append((Interval.point(u), Interval.point(v + k * u)))
        else:
            ubox = uctr.refine(iv, REFINE_WIDTH)
            out.append((ubox, ubox.scale(Fraction(k)) + Interval.point(v)))
    return out


# -- witnesses -----------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    """Evidence of non-invertibility: a doubly hit or a missed target value."""

    kind: str  # "Collision" or "MissingValue"
    target: tuple
    preimages: tuple = ()

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "target": [format_rational(x) for x in self.target],
            "preimages": [[_locator_json(c) for c in pt] for pt in self.preimages],
        }

    @classmethod
    def from_fiber(cls, fb: Fiber) -> "Witness":
        kind = "MissingValue" if fb.count == 0 else "Collision"
        return cls(kind, fb.target, fb.points)


def _locator_json(c):
    if isinstance(c, Interval):
        return c.to_json()
    return format_rational(c)


def spiral(search_bound: int):
    """Grid indices ``(i, j)``, ``|i|, |j| <= 2 * search_bound``.

    Ordered by ``max(|i|, |j|)`` and then lexicographically; the target for
    ``(i, j)`` is ``(i/2, j/2)``.
    """
    n = 2 * search_bound
    cells = [(i, j) for i in range(-n, n + 1) for j in range(-n, n + 1)]
    cells.sort(key=lambda ij: (max(abs(ij[0]), abs(ij[1])), ij[0], ij[1]))
    return cells


def falsify(f: QuadMap, search_bound: int) -> Optional[Witness]:
    """First grid target whose real preimage count differs from one.

    Returns ``None`` when every target in the grid has exactly one preimage.
    Targets with a positive-dimensional fiber are skipped.
    """
    for i, j in spiral(search_bound):
        try:
            fb = preimage_count(f, Fraction(i, 2), Fraction(j, 2))
        except DegenerateFiber:
            continue
        if fb.count != 1:
            return Witness.from_fiber(fb)
    return None
