import random
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from kuranishi.poly import Poly, PolyRing
from kuranishi.srings import SectionData, kuranishi_model

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

BASE_NAMES = ("x", "y", "z")


def random_poly(rng: random.Random, ring: PolyRing, max_degree=3, max_terms=4, coeffs=range(-2, 3)):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = [0] * ring.nvars
        for _ in range(rng.randint(0, max_degree)):
            if ring.nvars:
                mono[rng.randrange(ring.nvars)] += 1
        c = rng.choice(list(coeffs))
        terms[tuple(mono)] = terms.get(tuple(mono), 0) + Fraction(c)
    return Poly(ring, terms)


def random_section(rng: random.Random, max_n=3, max_m=3, max_degree=3) -> SectionData:
    n = rng.randint(0, max_n)
    m = rng.randint(0, max_m)
    base = BASE_NAMES[:n]
    ring = PolyRing(base)
    return SectionData(base, tuple(random_poly(rng, ring, max_degree) for _ in range(m)))


@st.composite
def polys(draw, ring, max_degree=3, max_terms=5):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        mono = tuple(draw(st.lists(st.integers(0, max_degree), min_size=ring.nvars, max_size=ring.nvars)))
        terms[mono] = terms.get(mono, 0) + Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 3)))
    return Poly(ring, terms)


@pytest.fixture(scope="session")
def Y():
    return kuranishi_model(SectionData.from_strings(["x", "y"], ["x^2", "y^2", "x*y"]))


@pytest.fixture(scope="session")
def X():
    return kuranishi_model(SectionData.from_strings([], ["0"]))


@pytest.fixture(scope="session")
def K1():
    return kuranishi_model(SectionData.from_strings(["x"], ["x^2"]))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(LINES):
            terminalreporter.write_line(LINES[n])
