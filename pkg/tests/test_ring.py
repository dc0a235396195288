import pytest
from hypothesis import given, strategies as st

from etalab.errors import HomogeneityError
from etalab.linalg import FieldSpec
from etalab.polynomial import Polynomial, monomial_basis
from etalab.ring import RingDescriptor, mult_map, quotient_piece
from oracles import quotient_dims

CASES = [
    ("x y z u", ["x*y", "z*u"]),
    ("x y u v", ["x*u + y*v"]),
    ("x y z", ["x^2 + y^2 + z^2", "x*y"]),
    ("a b c d", ["a^2 - b*c", "d^2 - a*b + c^2"]),
    ("x y", ["x^2", "y^3"]),
]


@pytest.mark.parametrize("vs,rels", CASES)
def test_quotient_dims_match_groebner_oracle(vs, rels):
    R = RingDescriptor.from_strings(vs.split(), rels)
    ours = [quotient_piece(R, d).dim for d in range(8)]
    assert ours == quotient_dims(rels, vs.split(), 7)


def test_ring_descriptor_validation():
    with pytest.raises(HomogeneityError):
        RingDescriptor.from_strings(["x", "y"], ["x^2 + y"])
    with pytest.raises(HomogeneityError):
        RingDescriptor.from_strings(["x"], ["1"])
    with pytest.raises(ValueError):
        RingDescriptor.from_strings(["x", "x"], [])
    R = RingDescriptor.from_strings(["x", "y", "u", "v"], ["x*u + y*v"])
    assert (R.v, R.c, R.n, R.degrees, R.degree) == (4, 1, 3, (2,), 2)


def test_reduction_is_a_projection():
    R = RingDescriptor.from_strings(["x", "y"], ["x^2 + y^2"])
    pc = quotient_piece(R, 3)
    assert pc.dim == 2
    f = R.poly("x^3")
    g = R.poly("-x*y^2")
    assert pc.reduce(f) == pc.reduce(g)
    assert pc.reduce(pc.to_polynomial(pc.reduce(f))) == pc.reduce(f)
    M = pc.reduction_matrix()
    assert (M.nrows, M.ncols) == (2, 4)


RINGS = [RingDescriptor.from_strings(vs.split(), rels) for vs, rels in CASES[:3]]


def homogeneous(ring, deg):
    mons = monomial_basis(ring.v, deg)
    return st.lists(st.integers(-2, 2), min_size=len(mons), max_size=len(mons)).map(
        lambda cs: Polynomial.from_dict(dict(zip(mons, cs)), ring.v, ring.field))


@st.composite
def mult_case(draw):
    ring = draw(st.sampled_from(RINGS))
    a, b, d = draw(st.integers(0, 2)), draw(st.integers(0, 2)), draw(st.integers(0, 3))
    return ring, draw(homogeneous(ring, a)), draw(homogeneous(ring, b)), a, b, d


@given(mult_case())
def test_mult_map_composition_law(case):
    ring, g, h, a, b, d = case
    if g.is_zero() or h.is_zero():
        return
    gh = g * h
    lhs = mult_map(ring, g, d + b) @ mult_map(ring, h, d)
    if gh.is_zero():
        assert lhs.is_zero()
    else:
        assert lhs == mult_map(ring, gh, d)


def test_prime_field_ring():
    R = RingDescriptor.from_strings(["x", "y"], ["x*y"], FieldSpec(7))
    assert [quotient_piece(R, d).dim for d in range(4)] == [1, 2, 2, 2]
