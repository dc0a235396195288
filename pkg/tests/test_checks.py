from etalab.checks import (certify, complete_intersection_hilbert, determinant, isolated_singularity_check,
                           jacobian_minors, regular_sequence_check)
from etalab.linalg import FieldSpec
from etalab.ring import RingDescriptor
from oracles import quotient_dims


def test_ci_hilbert_function():
    assert complete_intersection_hilbert((2,), 4, 4) == [1, 4, 9, 16, 25]
    assert complete_intersection_hilbert((2, 2), 2, 4) == [1, 2, 1, 0, 0]


def test_regular_sequence():
    R = RingDescriptor.from_strings(["x", "y", "u", "v"], ["x*u + y*v"])
    assert regular_sequence_check(R, 6).verified
    bad = RingDescriptor.from_strings(["x", "y"], ["x", "x*y"])
    verdict = regular_sequence_check(bad, 6)
    assert not verdict.verified and verdict.degree == 2
    assert (verdict.computed, verdict.expected) == (1, 0)


def test_determinant_and_minors():
    R = RingDescriptor.from_strings(["a", "b", "c", "d"], [])
    p = R.poly
    assert determinant([[p("a"), p("b")], [p("c"), p("d")]]) == p("a*d - b*c")
    S = RingDescriptor.from_strings(["x", "y", "z"], ["x*y", "z^2"])
    assert sorted(map(S.format, jacobian_minors(S))) == sorted(["2*x*z", "2*y*z"])
    assert jacobian_minors(RingDescriptor.from_strings(["x"], [])) == [RingDescriptor.from_strings(["x"], []).one()]


def test_isolated_singularity_examples():
    hoch = RingDescriptor.from_strings(["x", "y", "u", "v"], ["x*u + y*v"])
    v = isolated_singularity_check(hoch, 6)
    assert v.yes and v.vanishes_from == 1
    cj = RingDescriptor.from_strings(["x", "y", "z", "u"], ["x*y", "z*u"])
    v = isolated_singularity_check(cj, 8)
    assert v.status == "no-within-bound" and v.vanishes_from is None
    # the Jacobian quotient dims agree with an independent Groebner computation
    minors = [cj.format(m) for m in jacobian_minors(cj)]
    names = list(cj.variables)
    assert list(v.dims) == quotient_dims([cj.format(f) for f in cj.relations] + minors, names, 8)


def test_smooth_verdict_is_stable_under_larger_bound():
    R = RingDescriptor.from_strings(["a", "b", "c", "d"], ["a^2 - b*c", "d^2 - a*b + c^2"])
    small, big = isolated_singularity_check(R, 4), isolated_singularity_check(R, 9)
    assert small.yes and big.yes and small.vanishes_from == big.vanishes_from == 3


def test_certificate_and_warnings():
    R = RingDescriptor.from_strings(["x", "y", "u", "v"], ["x*u + y*v"], FieldSpec.prime(3))
    cert = certify(R, 5)
    assert cert.ok and cert.degree == 2 and (cert.n, cert.c, cert.v) == (3, 1, 4)
    assert cert.isolated_singularity.warnings
    R2 = RingDescriptor.from_strings(["x", "y"], ["x^3"], FieldSpec.prime(3))
    assert "divides" in certify(R2, 4).isolated_singularity.warnings[0]
    bad = certify(RingDescriptor.from_strings(["x", "y"], ["x", "x*y"]), 4)
    assert not bad.ok and bad.isolated_singularity.status == "skipped"
    assert bad.to_json()["regular_sequence"]["failed_at_degree"] == 2
