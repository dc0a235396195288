from fractions import Fraction

import pytest

from etalab.errors import InsufficientWindow, NotPolynomialWithinBound, NotStabilized
from etalab.invariants import (ab_identity_check, choose_E, eta, eta_consistency, finite_difference, fit_even_odd,
                               frac_str, gen_fun, hilbert_series, interpolate, koszul_residual,
                               multiplicity_polynomial, rational_form, root_multiplicity_at_one, series_div,
                               series_mul)
from etalab.modules import free_presentation, presentation, quotient_module, residue_field
from etalab.ring import RingDescriptor
from etalab.tor import tor_table

HOCH = RingDescriptor.from_strings(["x", "y", "u", "v"], ["x*u + y*v"])
CJ = RingDescriptor.from_strings(["x", "y", "z", "u"], ["x*y", "z*u"])
DUAL = RingDescriptor.from_strings(["x"], ["x^2"])


def cj_pair():
    M = quotient_module(CJ, [CJ.poly("y"), CJ.poly("u")], "M")
    N = presentation(CJ, [0, 0, 0], [["0", "-z", "y"], ["u", "x", "0"]], "N")
    return M, N


def test_series_helpers():
    assert series_mul([1, 1], [1, -1], 4) == [1, 0, -1, 0, 0]
    assert series_div([1], [1, -1], 4) == [1, 1, 1, 1, 1]
    assert root_multiplicity_at_one([1, -2, 1]) == 2
    assert root_multiplicity_at_one([0, 1]) == 0
    assert root_multiplicity_at_one([]) is None


def test_interpolation_and_differences():
    P = interpolate([(0, 1), (1, 3), (2, 7)])
    assert P == [1, 1, 1]
    assert finite_difference([0, 0, 1], 1) == [-1, 2]
    assert finite_difference([0, 0, 1], 2) == [2]
    assert frac_str(Fraction(-1, 8)) == "-1/8" and frac_str(Fraction(3)) == "3"


def test_hilbert_series_of_rings():
    R = RingDescriptor.from_strings(["x", "y"], [])
    hs = hilbert_series(free_presentation(R), R, 8)
    assert hs.numerator == (1,) and hs.pole_order == 2
    hs = hilbert_series(free_presentation(HOCH), HOCH, 10)
    assert hs.numerator == (1, 1) and hs.pole_order == 3
    assert hs.expand(10) == list(hs.coeffs)
    k = residue_field(DUAL, 2)
    hs = hilbert_series(k, DUAL, 6)
    assert hs.numerator == (0, 0, 1) and hs.pole_order == 0


def test_rational_form_errors():
    with pytest.raises(NotPolynomialWithinBound):
        rational_form([1, 2, 3], 2, 3)
    with pytest.raises(NotPolynomialWithinBound):
        rational_form([2 ** i for i in range(12)], 2, 3)


def test_multiplicity_polynomials():
    assert multiplicity_polynomial(HOCH) == [1, 1]
    assert multiplicity_polynomial(CJ) == [1, 2, 1]
    R = RingDescriptor.from_strings(["x", "y", "z"], ["x^2", "y^3"])
    assert multiplicity_polynomial(R) == [1, 2, 2, 1]


def test_eta_hochster():
    M = quotient_module(HOCH, [HOCH.poly("x"), HOCH.poly("y")])
    cases = [("u", "v", Fraction(1, 2)), ("x", "y", Fraction(1, 2)), ("x", "v", Fraction(-1, 2))]
    for a, b, expected in cases:
        N = quotient_module(HOCH, [HOCH.poly(a), HOCH.poly(b)], "N")
        rep = eta(tor_table(M, N, HOCH, 12, 16))
        assert rep.eta == expected and rep.theta == 2 * expected


def test_eta_codimension_two():
    t = tor_table(*cj_pair(), CJ)
    rep = eta(t)
    assert rep.eta == Fraction(-1, 8) and rep.theta is None
    assert rep.fit.P_ev == () and rep.fit.P_odd == (0, 1)
    assert rep.to_json()["eta"] == "-1/8"


def test_eta_artinian_residue_field():
    R = RingDescriptor.from_strings(["x", "y"], ["x^2", "y^2"])
    k = residue_field(R)
    rep = eta(tor_table(k, k, R, 14))
    assert rep.fit.P_ev == (1, 2) and rep.fit.P_odd == (2, 2)
    assert rep.eta == 0


def test_koszul_residual_onset():
    M = quotient_module(HOCH, [HOCH.poly("x"), HOCH.poly("y")])
    # Tor_0 = M has infinite length, which spoils the residuals at j = 2, 3
    res = koszul_residual(tor_table(M, M, HOCH, 10, 14), HOCH)
    assert res.onset == 4 and res.to_json()["nonzero_at"] == [2, 3]
    with pytest.raises(ValueError):
        koszul_residual(tor_table(M, M, HOCH, 10, 14), CJ)


def test_gen_fun_dual_numbers():
    k = residue_field(DUAL)
    t = tor_table(k, k, DUAL, 12)
    for E in (2, 4):
        g = gen_fun(t, E)
        assert g.bF == (tuple([0] * E + [1]),)
        assert g.etaE_poly == tuple([0] * E + [1, -1])
        assert g.value_at_one == 0 and g.vanishing_order == 1
    with pytest.raises(ValueError):
        gen_fun(t, 3)


def test_gen_fun_matches_eta():
    t = tor_table(*cj_pair(), CJ)
    rep = eta(t)
    E = choose_E(t)
    for F in (E, E + 2):
        g = gen_fun(t, F)
        assert g.value_at_one == 8 * rep.eta == -1
        assert eta_consistency(rep, g)
    M = quotient_module(HOCH, [HOCH.poly("x"), HOCH.poly("y")])
    N = quotient_module(HOCH, [HOCH.poly("x"), HOCH.poly("v")], "N")
    t = tor_table(M, N, HOCH, 12, 16)
    assert gen_fun(t, choose_E(t)).value_at_one == -1


def test_ab_identity():
    M, N = cj_pair()
    t = tor_table(M, N, CJ)
    rep = ab_identity_check(M, N, CJ, t)
    assert rep.max_deviation == 0 and rep.valid_through == min(t.D, t.J - 1)
    k = residue_field(DUAL)
    assert ab_identity_check(k, k, DUAL, tor_table(k, k, DUAL, 8, 10)).max_deviation == 0


def test_bound_errors_suggest_bounds():
    M, N = cj_pair()
    with pytest.raises(NotStabilized) as info:
        eta(tor_table(M, N, CJ, 6, 10))
    assert info.value.suggested_J > 6 and "try J >=" in str(info.value)
    k = residue_field(DUAL)
    t = tor_table(k, k, DUAL, 4, 8)
    with pytest.raises(InsufficientWindow) as info:
        gen_fun(t, 2)
    assert info.value.suggested_J == 5
    with pytest.raises((InsufficientWindow, NotStabilized)):
        fit_even_odd(tor_table(k, k, DUAL, 3, 7))
