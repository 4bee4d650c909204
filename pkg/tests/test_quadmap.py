import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, given, settings

from conftest import affine_maps, quad_maps, rand_affine, rand_rational, small_rationals
from quadplane.errors import MalformedInput, NotInvertibleError, PreconditionError
from quadplane.maps import (
    AffineMap2,
    QuadMap,
    compose_source,
    compose_target,
    definite_canonical,
    indefinite_canonical,
    semidefinite_canonical,
    shear_map,
)
from quadplane.quadform import FormTag
from quadplane.quadmap import (
    TOLERANCE,
    Status,
    check_equivalence,
    decide_invertibility,
    invert,
    lattice_check,
    precanonicalize,
)
from quadplane.sturm import preimage_count

half = F(1, 2)


def rand_map(rng):
    return QuadMap.from_rows([rand_rational(rng) for _ in range(6)], [rand_rational(rng) for _ in range(6)])


class TestValueTypes:
    def test_eval_examples(self):
        assert shear_map()(2, 3) == (11, 3)
        assert indefinite_canonical()(1, 1) == (2, 2)
        assert QuadMap()(F(3, 7), -5) == (0, 0)

    def test_factor_two_in_evaluation(self):
        f = QuadMap(a11=1, a10=1, a01=1, b11=half)
        assert f(1, 1) == (6, 1)

    def test_json_round_trip(self):
        f = QuadMap(a20=F(-3, 4), b01=7, b00=F(1, 9))
        doc = json.loads(json.dumps(f.to_json()))
        assert QuadMap.from_json(doc) == f
        assert doc["a"]["20"] == "-3/4"

    @pytest.mark.parametrize(
        "doc",
        [
            {"a": {"20": "1"}, "c": {}},
            {"a": {"21": "1"}},
            {"a": {"20": 1.5}},
            {"a": {"20": "x"}},
            {"a": {"20": True}},
            [],
        ],
    )
    def test_json_rejects(self, doc):
        with pytest.raises(MalformedInput):
            QuadMap.from_json(doc)

    def test_str(self):
        assert str(shear_map()) == "p~ = q^2 + p, q~ = q"
        assert str(QuadMap()) == "p~ = 0, q~ = 0"

    def test_singular_affine(self):
        with pytest.raises(PreconditionError):
            AffineMap2(1, 2, 2, 4)

    @given(affine_maps(), affine_maps(), small_rationals, small_rationals)
    def test_affine_algebra(self, s, t, p, q):
        assert s.compose(t)(p, q) == s(*t(p, q))
        assert s.inverse()(*s(p, q)) == (p, q)


class TestComposition:
    def test_identity(self):
        f = indefinite_canonical()
        assert compose_source(f, AffineMap2.identity()) == f
        assert compose_target(AffineMap2.identity(), f) == f

    def test_swap_source(self):
        g = compose_source(shear_map(), AffineMap2.swap())
        assert g == QuadMap(a20=1, a01=half, b10=half)

    def test_b11_elimination(self):
        f = QuadMap(a20=2, a11=3, a02=1, b20=1, b11=5, b02=-2, b10=1)
        t = AffineMap2(1, 0, -f.b11 / f.a11, 1)
        assert compose_target(t, f).b11 == 0

    def test_proportional_b20_b02_elimination(self):
        # b02 / b20 == a02 / a20
        f = QuadMap(a20=2, a11=1, a02=6, b20=3, b11=4, b02=9, b01=1)
        t = AffineMap2(1, 0, -f.b20 / f.a20, 1)
        g = compose_target(t, f)
        assert g.b20 == 0 and g.b02 == 0

    @settings(max_examples=100, suppress_health_check=[HealthCheck.large_base_example])
    @given(quad_maps(), affine_maps(), small_rationals, small_rationals)
    def test_pointwise(self, f, t, p, q):
        assert compose_source(f, t)(p, q) == f(*t(p, q))
        assert compose_target(t, f)(p, q) == t(*f(p, q))


class TestDecide:
    def test_shear(self):
        v = decide_invertibility(shear_map())
        assert v.status is Status.INVERTIBLE_QUADRATIC and v.form_class.tag is FormTag.ZERO
        assert v.inverse == QuadMap(a02=-1, a10=half, b01=half)
        assert v.transcript.steps == ()

    def test_indefinite(self):
        f = indefinite_canonical()
        v = decide_invertibility(f, 4)
        assert v.status is Status.NOT_INVERTIBLE and v.form_class.tag is FormTag.INDEFINITE
        w = v.witness
        assert w.kind == "Collision"
        pts = [(p.lo, q.lo) for p, q in w.preimages]
        assert len(set(pts)) >= 2 and all(f(*pt) == w.target for pt in pts)

    def test_parabola_obstruction(self):
        v = decide_invertibility(QuadMap(a20=1, b01=half))
        assert v.status is Status.NOT_INVERTIBLE
        assert v.witness.target == (1, 0)
        assert sorted((p.lo, q.lo) for p, q in v.witness.preimages) == [(-1, 0), (1, 0)]

    def test_affine(self):
        f = QuadMap(a10=1, a00=1, b01=half)
        v = decide_invertibility(f)
        assert v.status is Status.INVERTIBLE_AFFINE
        assert invert(v, 1, 5) == (0, 5)

    def test_affine_degenerate(self):
        assert decide_invertibility(QuadMap(a00=1)).status is Status.DEGENERATE_CONSTANT
        v = decide_invertibility(QuadMap(a10=1, b10=2))
        assert v.status is Status.NOT_INVERTIBLE
        a, b = v.witness.preimages
        assert QuadMap(a10=1, b10=2)(a[0].lo, a[1].lo) == QuadMap(a10=1, b10=2)(b[0].lo, b[1].lo)

    @pytest.mark.parametrize(
        "f,tag",
        [
            (shear_map(), FormTag.ZERO),
            (indefinite_canonical(), FormTag.INDEFINITE),
            (semidefinite_canonical(0), FormTag.SEMIDEFINITE),
            (semidefinite_canonical(1), FormTag.SEMIDEFINITE),
            (definite_canonical(), FormTag.DEFINITE),
        ],
    )
    def test_canonical_forms(self, f, tag):
        v = decide_invertibility(f, 0)
        assert v.form_class.tag is tag
        assert v.invertible == (tag is FormTag.ZERO)

    def test_invert_refuses(self):
        with pytest.raises(NotInvertibleError):
            invert(decide_invertibility(indefinite_canonical(), 0), 0, 0)

    def test_zero_class_obstructions_have_true_collisions(self):
        rng = random.Random(5)
        for f in (
            QuadMap(a11=1, b01=half),
            QuadMap(a20=1, a11=1, a02=1, b20=2, b11=2, b02=2, b10=1),
            QuadMap(a02=1, b01=1),
            QuadMap(a02=1, b02=3, b00=1),
        ):
            for _ in range(3):
                g = compose_target(rand_affine(rng), compose_source(f, rand_affine(rng)))
                v = decide_invertibility(g, 0)
                assert v.status is Status.NOT_INVERTIBLE
                w = v.witness
                pts = {(p.lo, q.lo) for p, q in w.preimages}
                assert len(pts) >= 2 and all(g(*pt) == w.target for pt in pts)

    def test_shear_conjugates_round_trip(self):
        rng = random.Random(17)
        for _ in range(10):
            f = compose_target(rand_affine(rng), compose_source(shear_map(), rand_affine(rng)))
            v = decide_invertibility(f)
            assert v.status is Status.INVERTIBLE_QUADRATIC
            assert v.transcript.replay_matches()
            for _ in range(20):
                tp, tq = rand_rational(rng), rand_rational(rng)
                p, q = invert(v, tp, tq)
                assert f(p, q) == (tp, tq)
                assert invert(v, *f(tp, tq)) == (tp, tq)
                assert preimage_count(f, tp, tq).exact_points() == [(p, q)]

    def test_status_invariance(self):
        rng = random.Random(23)
        for _ in range(40):
            f = rand_map(rng)
            if rng.random() < 0.3:
                f = compose_target(rand_affine(rng), compose_source(shear_map(), rand_affine(rng)))
            v = decide_invertibility(f, 0)
            g = compose_target(rand_affine(rng), compose_source(f, rand_affine(rng)))
            w = decide_invertibility(g, 0)
            assert v.status is w.status and v.form_class.tag is w.form_class.tag


class TestPrecanonicalize:
    @pytest.mark.parametrize(
        "f",
        [shear_map(), indefinite_canonical(), semidefinite_canonical(0), semidefinite_canonical(3), definite_canonical(), definite_canonical(1, -2)],
    )
    def test_canonical_is_fixed(self, f):
        tr = precanonicalize(f)
        assert tr.steps == () and tr.final == f and tr.reached

    def test_numeric_indefinite(self):
        tr = precanonicalize(QuadMap(a20=4, a01=half, b02=1, b10=half))
        assert tr.reached and tr.numeric
        target = indefinite_canonical()
        for x, y in zip(tr.final.coeffs(), target.coeffs()):
            assert abs(x - y) <= TOLERANCE * max(1, abs(y))
        assert tr.replay_matches()

    def test_shear_source_change(self):
        f = compose_source(shear_map(), AffineMap2(2, 1, -1, 3))
        tr = precanonicalize(f)
        assert not tr.numeric and tr.final == shear_map() and len(tr.steps) <= 6
        assert tr.replay() == tr.final

    def test_zero_quadratic_part(self):
        with pytest.raises(PreconditionError):
            precanonicalize(QuadMap(a10=1, b01=1))

    def test_random_maps_reach_their_shape(self):
        rng = random.Random(29)
        shapes = {"indefinite": 0, "semidefinite": 0, "definite": 0}
        for _ in range(60):
            f = rand_map(rng)
            tr = precanonicalize(f)
            assert tr.replay_matches()
            if tr.shape in shapes and tr.reached:
                shapes[tr.shape] += 1
            # total changes reproduce the final map
            g = compose_target(tr.target_total(), compose_source(f, tr.source_total()))
            for x, y in zip(g.coeffs(), tr.final.coeffs()):
                assert abs(x - y) <= 1e-6 * max(1, abs(y))
        assert shapes["indefinite"] > 0 and shapes["definite"] > 0

    def test_semidefinite_from_conjugate(self):
        rng = random.Random(31)
        f = compose_target(rand_affine(rng, linear=True), compose_source(semidefinite_canonical(1), rand_affine(rng)))
        tr = precanonicalize(f)
        assert tr.shape == "semidefinite" and tr.reached
        g = tr.final
        for name in ("a20", "a02", "a01", "a00", "b20", "b11", "b01", "b00"):
            assert abs(getattr(g, name)) < 1e-9
        assert abs(g.a11 - half) < 1e-9 and abs(g.b02 - 1) < 1e-9 and abs(g.b10 - half) < 1e-9

    def test_json(self):
        tr = precanonicalize(compose_source(shear_map(), AffineMap2.swap()))
        doc = json.loads(json.dumps(tr.to_json()))
        assert doc["steps"] and all(s["side"] in ("source", "target") for s in doc["steps"])


class TestEquivalence:
    def test_identity(self):
        i = AffineMap2.identity()
        assert check_equivalence(shear_map(), shear_map(), i, i)

    def test_swapped(self):
        s = AffineMap2.swap()
        f2 = compose_source(shear_map(), s)
        # swap o shear is p~ = q, q~ = p + q^2, while f2 o swap is the shear itself
        assert not check_equivalence(shear_map(), f2, s, s)
        assert check_equivalence(shear_map(), shear_map(), AffineMap2.identity(), AffineMap2.identity())
        assert check_equivalence(shear_map(), compose_target(s, shear_map()), s, AffineMap2.identity())

    def test_different_classes(self):
        rng = random.Random(2)
        for _ in range(20):
            assert not check_equivalence(
                shear_map(), indefinite_canonical(), rand_affine(rng, True), rand_affine(rng, True)
            )

    def test_shifts_rejected(self):
        with pytest.raises(PreconditionError):
            check_equivalence(shear_map(), shear_map(), AffineMap2.shift(1, 0), AffineMap2.identity())


class TestLattice:
    def test_shear(self):
        assert lattice_check(shear_map()).bijective_on_lattice

    def test_half(self):
        f = QuadMap(a02=half, a10=half, b01=half)
        assert f(1, 1) == (F(3, 2), 1)
        assert not lattice_check(f).bijective_on_lattice

    def test_involution(self):
        f = QuadMap(a02=3, a10=-half, b01=half)
        assert lattice_check(f).bijective_on_lattice
        for p in range(-5, 6):
            for q in range(-5, 6):
                assert f(*f(p, q)) == (p, q)

    def test_non_invertible(self):
        assert not lattice_check(indefinite_canonical()).bijective_on_lattice
