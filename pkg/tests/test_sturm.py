import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rand_affine, rand_rational, small_rationals
from quadplane.errors import DegenerateFiber, PreconditionError
from quadplane.exactnum import Interval, Poly1
from quadplane.maps import (
    QuadMap,
    compose_source,
    compose_target,
    indefinite_canonical,
    semidefinite_canonical,
    shear_map,
    definite_canonical,
)
from quadplane.sturm import cauchy_bound, falsify, preimage_count, spiral, sturm_count

X = Poly1.x()


def box_contains_solution(f, target, box):
    # interval evaluation of each row over the box must be able to hit the target
    pb, qb = box
    for row, t in ((f.row_a, target[0]), (f.row_b, target[1])):
        c20, c11, c02, c10, c01, c00 = row
        val = (
            (pb * pb).scale(c20)
            + (pb * qb).scale(2 * c11)
            + (qb * qb).scale(c02)
            + pb.scale(2 * c10)
            + qb.scale(2 * c01)
            + Interval.point(c00)
        )
        if t not in val:
            return False
    return True


class TestSturmCount:
    def test_examples(self):
        assert sturm_count(X * X - 2).distinct_real == 2
        rc = sturm_count((X - 1) ** 2 * (X * X + 1))
        assert rc.distinct_real == 1 and rc.multiplicities == (2,)
        assert rc.intervals[0].lo <= 1 <= rc.intervals[0].hi
        assert sturm_count(Poly1([4, 1, 4, 0, 1])).distinct_real == 0

    def test_zero_polynomial(self):
        with pytest.raises(PreconditionError):
            sturm_count(Poly1([0]))

    def test_constant(self):
        assert sturm_count(Poly1([3])).distinct_real == 0

    def test_bounds(self):
        p = (X - 1) * (X - 2) * (X + 3)
        assert sturm_count(p, 0, 5).distinct_real == 2
        assert sturm_count(p, 1, 2).distinct_real == 2  # closed interval
        assert sturm_count(p, F(3, 2), 2).distinct_real == 1
        assert sturm_count(p, -10, 0).distinct_real == 1
        with pytest.raises(PreconditionError):
            sturm_count(p, 2, 1)

    def test_rational_roots_are_exact(self):
        rc = sturm_count((3 * X - 1) * (X + 2) * (X * X - 2))
        exact = [iv.lo for iv in rc.intervals if iv.exact]
        assert exact == [-2, F(1, 3)]
        for iv in rc.intervals:
            assert iv.exact or iv.hi - iv.lo < F(1, 2**32)

    def test_intervals_disjoint_and_isolating(self):
        p = (X * X - 2) * (X * X - 3) * (X - F(7, 5))
        rc = sturm_count(p, refine=False)
        assert rc.distinct_real == 5
        for a, b in zip(rc.intervals, rc.intervals[1:]):
            assert a.hi < b.lo or (a.hi <= b.lo and not (a.exact and b.exact and a.lo == b.lo))
        for iv in rc.intervals:
            assert sturm_count(p, iv.lo, iv.hi).distinct_real == 1

    def test_cauchy_bound(self):
        p = Poly1([-6, 1, 1])
        assert cauchy_bound(p) == 7

    @settings(max_examples=80)
    @given(st.lists(small_rationals, min_size=1, max_size=4), st.lists(small_rationals, min_size=1, max_size=4))
    def test_product_of_coprime(self, r1, r2):
        # distinct root sets give coprime factors
        r2 = [r for r in r2 if r not in r1]
        p = Poly1.from_roots(r1) * (X * X + 1)
        q = Poly1.from_roots(r2) if r2 else Poly1([5])
        assert sturm_count(p * q).distinct_real == sturm_count(p).distinct_real + sturm_count(q).distinct_real

    @given(st.lists(st.tuples(small_rationals, st.integers(1, 3)), min_size=1, max_size=3, unique_by=lambda t: t[0]))
    def test_multiplicities(self, roots):
        p = Poly1([1])
        for r, m in roots:
            p = p * (X - r) ** m
        rc = sturm_count(p)
        expect = sorted(roots)
        assert [iv.lo for iv in rc.intervals] == [r for r, _ in expect]
        assert list(rc.multiplicities) == [m for _, m in expect]


class TestPreimageCount:
    def test_collision_example(self):
        f = indefinite_canonical()
        fb = preimage_count(f, 2, 2)
        exact = fb.exact_points()
        assert (F(1), F(1)) in exact and (F(-2), F(-2)) in exact
        for pt in exact:
            assert f(*pt) == (2, 2)
        # two further real preimages come from q^2 + q - 1
        assert fb.count == 4
        for box in fb.points:
            assert box_contains_solution(f, (2, 2), box)

    def test_missing_value_example(self):
        fb = preimage_count(indefinite_canonical(), 0, -2)
        assert fb.count == 0 and fb.points == ()

    @given(small_rationals, small_rationals)
    def test_shear(self, tp, tq):
        fb = preimage_count(shear_map(), tp, tq)
        assert fb.count == 1 and fb.exact_points() == [(tp - tq * tq, tq)]

    def test_shear_conjugates(self):
        rng = random.Random(11)
        for _ in range(20):
            f = compose_target(rand_affine(rng), compose_source(shear_map(), rand_affine(rng)))
            for _ in range(5):
                tp, tq = rand_rational(rng), rand_rational(rng)
                fb = preimage_count(f, tp, tq)
                assert fb.count == 1
                assert f(*fb.exact_points()[0]) == (tp, tq)

    @settings(max_examples=60, deadline=None)
    @given(small_rationals, small_rationals, small_rationals, small_rationals)
    def test_points_solve_the_system(self, p0, q0, p1, q1):
        f = indefinite_canonical()
        tp, tq = f(p0, q0)
        fb = preimage_count(f, tp, tq)
        assert (p0, q0) in fb.exact_points()
        for pt in fb.exact_points():
            assert f(*pt) == (tp, tq)
        for box in fb.points:
            assert box_contains_solution(f, (tp, tq), box)

    def test_constant_rows(self):
        f = QuadMap(a10=F(1, 2), b00=3)
        assert preimage_count(f, 1, 5).count == 0
        with pytest.raises(DegenerateFiber):
            preimage_count(f, 1, 3)
        with pytest.raises(PreconditionError):
            preimage_count(QuadMap(a00=1, b00=2), 0, 0)

    def test_shared_component_is_degenerate(self):
        # both rows are multiples of p^2 + q, so every target on the diagonal has a curve of preimages
        f = QuadMap(a20=1, a01=F(1, 2), b20=2, b01=1)
        with pytest.raises(DegenerateFiber):
            preimage_count(f, 1, 2)
        assert preimage_count(f, 1, 3).count == 0

    def test_float_rejected(self):
        with pytest.raises(PreconditionError):
            preimage_count(QuadMap(a20=0.5, b01=1), 0, 0)


class TestFalsify:
    def test_spiral_order(self):
        cells = spiral(1)
        assert cells[0] == (0, 0)
        assert cells[1:9] == [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)]
        assert len(cells) == 25
        assert [max(abs(i), abs(j)) for i, j in cells] == sorted(max(abs(i), abs(j)) for i, j in cells)

    def test_indefinite_frozen(self):
        w = falsify(indefinite_canonical(), 4)
        assert w.kind == "Collision" and w.target == (0, 0)
        assert sorted((p.lo, q.lo) for p, q in w.preimages) == [(-1, -1), (0, 0)]

    def test_semidefinite_frozen(self):
        f = semidefinite_canonical()
        w = falsify(f, 4)
        assert w.kind == "Collision" and w.target == (0, F(1, 2))
        assert len(w.preimages) == 3

    def test_definite_frozen(self):
        w = falsify(definite_canonical(), 4)
        assert w.kind == "Collision" and w.target == (F(-1, 2), F(-1, 2))
        assert len(w.preimages) == 2
        w = falsify(definite_canonical(1, 2), 4)
        assert w.target == (0, 0)
        assert sorted((p.lo, q.lo) for p, q in w.preimages) == [(-2, 0), (0, 0), (0, 4)]

    def test_shear_not_found(self):
        assert falsify(shear_map(), 2) is None

    def test_witness_json(self):
        doc = falsify(indefinite_canonical(), 4).to_json()
        assert doc["kind"] == "Collision" and doc["target"] == ["0", "0"]
        assert all(isinstance(c, (str, dict, list)) for pt in doc["preimages"] for c in pt)

    def test_missing_value_certified(self):
        f = indefinite_canonical()
        fb = preimage_count(f, 0, -2)
        assert sturm_count(fb.resolvent).distinct_real == 0
