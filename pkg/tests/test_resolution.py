import pytest

from etalab.errors import DegreeBoundExceeded
from etalab.modules import free_presentation, presentation, quotient_module, residue_field
from etalab.resolution import betti_table, compose_to_zero, default_bounds, resolve, resolve_over_ambient
from etalab.ring import RingDescriptor


def test_residue_field_over_dual_numbers():
    R = RingDescriptor.from_strings(["x"], ["x^2"])
    res = resolve(residue_field(R), R, 6, 8)
    assert [F.twists for F in res.modules] == [(j,) for j in range(7)]
    assert compose_to_zero(res, R)


def test_residue_field_over_two_dual_numbers():
    R = RingDescriptor.from_strings(["x", "y"], ["x^2", "y^2"])
    res = resolve(residue_field(R), R, 7, 9)
    assert res.betti() == [j + 1 for j in range(8)]
    bt = betti_table(res)
    assert all(bt[(j, j)] == j + 1 for j in range(8))


def test_hochster_module_is_periodic():
    R = RingDescriptor.from_strings(["x", "y", "u", "v"], ["x*u + y*v"])
    M = quotient_module(R, [R.poly("x"), R.poly("y")])
    res = resolve(M, R, 8, 12)
    assert [F.twists for F in res.modules[1:]] == [(j, j) for j in range(1, 9)]
    assert compose_to_zero(res, R)


def test_non_rigid_pair_module_betti_numbers():
    R = RingDescriptor.from_strings(["x", "y", "z", "u"], ["x*y", "z*u"])
    N = presentation(R, [0, 0, 0], [["0", "-z", "y"], ["u", "x", "0"]], "N")
    res = resolve(N, R, 8, 12)
    assert res.betti()[:3] == [3, 2, 1]
    assert compose_to_zero(res, R)


def test_free_module_resolution_stops():
    R = RingDescriptor.from_strings(["x", "y"], ["x*y"])
    res = resolve(free_presentation(R, (0, 1)), R, 4, 8)
    assert res.betti() == [2, 0, 0, 0, 0]


def test_ambient_koszul_complex():
    R = RingDescriptor.from_strings(["x", "y", "z", "u"], ["x*y", "z*u"])
    res = resolve_over_ambient(residue_field(R), R, 8)
    assert res.betti() == [1, 4, 6, 4, 1, 0]


def test_degree_bound_floor():
    R = RingDescriptor.from_strings(["x"], ["x^2"])
    with pytest.raises(DegreeBoundExceeded) as err:
        resolve(residue_field(R, 2), R, 6, 7)
    assert err.value.suggested_D == 8


def test_default_bounds():
    R = RingDescriptor.from_strings(["x", "y", "z", "u"], ["x*y", "z*u"])
    assert default_bounds(R, residue_field(R, 1)) == (14, 14 + 4 + 1)
