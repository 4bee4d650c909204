import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from quadplane.maps import AffineMap2, QuadMap

small_rationals = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 6))
nonzero_rationals = small_rationals.filter(lambda x: x != 0)


@st.composite
def quad_maps(draw):
    return QuadMap.from_rows([draw(small_rationals) for _ in range(6)], [draw(small_rationals) for _ in range(6)])


@st.composite
def affine_maps(draw, linear=False):
    m = draw(st.lists(small_rationals, min_size=4, max_size=4).filter(lambda m: m[0] * m[3] != m[1] * m[2]))
    s = [Fraction(0), Fraction(0)] if linear else [draw(small_rationals), draw(small_rationals)]
    return AffineMap2(*m, *s)


def rand_rational(rng: random.Random, num: int = 9, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_affine(rng: random.Random, linear: bool = False) -> AffineMap2:
    while True:
        m = [rand_rational(rng, 5, 3) for _ in range(4)]
        if m[0] * m[3] != m[1] * m[2]:
            s = (0, 0) if linear else (rand_rational(rng), rand_rational(rng))
            return AffineMap2(*m, *s)


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    # lets fixtures see the outcome of the test body
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep
