from fractions import Fraction

import pytest
from hypothesis import strategies as st

from leibniz.parsing import parse_poly, parse_scalar
from leibniz.poly import FactoredPoly, Poly
from leibniz.scalars import MvPoly, ScalarElem

G = ScalarElem.gaussian


def P(text: str) -> Poly:
    return parse_poly(text)


def S(text: str) -> ScalarElem:
    return parse_scalar(text)


small_fraction = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 5))

gaussian = st.builds(G, small_fraction, small_fraction | st.just(Fraction(0)))

monomial_exp = st.tuples(st.integers(0, 2), st.integers(0, 1))

mvpoly = st.dictionaries(monomial_exp, gaussian.map(lambda s: s.c), min_size=1, max_size=3).map(MvPoly)


@st.composite
def scalars(draw, allow_fraction: bool = True):
    """Elements of Q(i)(t1, t2) of small degree."""
    num = draw(mvpoly)
    if allow_fraction and draw(st.booleans()):
        den = draw(mvpoly.filter(lambda m: not m.is_zero()))
        return ScalarElem(num, den)
    return ScalarElem(num)


nonzero_scalars = scalars().filter(lambda x: not x.is_zero())

root_pool = st.sampled_from([G(0), G(1), G(-1), G(2), G(0, 1), G(1, 1), G(Fraction(1, 2)), G(-3)])


@st.composite
def factored(draw, max_degree: int = 4, roots=root_pool):
    lead = draw(gaussian.filter(lambda s: not s.is_zero()))
    return FactoredPoly(lead, tuple(draw(st.lists(roots, max_size=max_degree))))


@st.composite
def polys(draw, max_degree: int = 4, coeffs=None):
    coeffs = coeffs or scalars(allow_fraction=False)
    return Poly(draw(st.lists(coeffs, max_size=max_degree + 1)))


@pytest.fixture
def op_dir(tmp_path):
    return tmp_path


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "VERDICTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
