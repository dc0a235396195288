from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from etalab.errors import ParseError, UnknownVariable
from etalab.linalg import FieldSpec, RATIONALS
from etalab.polynomial import Polynomial, monomial_basis, parse_polynomial

NAMES = ["x", "y", "z"]


def P(text, field=RATIONALS):
    return parse_polynomial(text, NAMES, field)


def test_monomial_basis_grlex():
    assert monomial_basis(2, 2) == ((2, 0), (1, 1), (0, 2))
    assert len(monomial_basis(3, 4)) == 15
    assert monomial_basis(3, -1) == ()


def test_parse_and_format():
    f = P("x*y + 3/2*z^2 - y**2")
    assert f.coefficient((1, 1, 0)) == 1
    assert Fraction(f.coefficient((0, 0, 2))) == Fraction(3, 2)
    assert f.format(NAMES) == "x*y - y^2 + 3/2*z^2"
    assert P(f.format(NAMES)) == f
    assert P("(x + y)^2") == P("x^2 + 2*x*y + y^2")
    assert P("-(x - y)") == P("y - x")
    assert P("0").is_zero()


def test_parse_errors_carry_columns():
    with pytest.raises(UnknownVariable) as err:
        P("x + w")
    assert err.value.column == 5
    with pytest.raises(ParseError):
        P("x +* y")
    with pytest.raises(ParseError):
        P("x^y")
    with pytest.raises(ParseError):
        P("(x + y")


def test_prime_field_parse():
    F = FieldSpec(7)
    assert P("1/2*x", F) == P("4*x", F)
    assert P("7*x", F).is_zero()


def test_degree_homogeneity():
    assert P("x^2 + y*z").is_homogeneous()
    assert not P("x^2 + y").is_homogeneous()
    assert P("x^2 + y").degree == 2
    assert Polynomial.zero(3).degree is None


polys = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)),
    st.integers(-3, 3), max_size=4).map(lambda d: Polynomial.from_dict(d, 3))


@given(polys, polys, st.integers(0, 2))
def test_derivative_product_rule(f, g, i):
    assert (f * g).derivative(i) == f.derivative(i) * g + f * g.derivative(i)


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f - f).is_zero()
    assert f * g == g * f
