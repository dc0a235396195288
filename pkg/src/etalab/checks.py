"""Checks of the standing hypotheses on a ring: the relations form a regular
sequence, and Proj R is smooth (the Jacobian criterion, degreewise)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .polynomial import Polynomial
from .resolution import default_bounds
from .ring import QuotientRing, RingDescriptor, realization


@dataclass(frozen=True)
class RegularSequenceVerdict:
    """verified through ``degree``, or failed at ``degree`` with both counts."""

    verified: bool
    degree: int
    computed: int | None = None
    expected: int | None = None

    def to_json(self) -> dict:
        if self.verified:
            return {"status": "verified", "verified_to_degree": self.degree}
        return {"status": "failed", "failed_at_degree": self.degree,
                "dim_R": self.computed, "expected": self.expected}


@dataclass(frozen=True)
class SingularityVerdict:
    """``status`` is "yes", "no-within-bound" or "skipped"."""

    status: str
    vanishes_from: int | None
    bound: int
    dims: tuple[int, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def yes(self) -> bool:
        return self.status == "yes"

    def to_json(self) -> dict:
        return {"status": self.status, "vanishes_from_degree": self.vanishes_from,
                "checked_to_degree": self.bound, "jacobian_quotient_dims": list(self.dims),
                "warnings": list(self.warnings)}


@dataclass(frozen=True)
class RingCertificate:
    regular_sequence: RegularSequenceVerdict
    isolated_singularity: SingularityVerdict
    degree: int
    n: int
    c: int
    v: int

    @property
    def ok(self) -> bool:
        return self.regular_sequence.verified

    def to_json(self) -> dict:
        return {"regular_sequence": self.regular_sequence.to_json(),
                "isolated_singularity": self.isolated_singularity.to_json(),
                "degree": self.degree, "n": self.n, "c": self.c, "v": self.v}


def complete_intersection_hilbert(degrees, v: int, D: int) -> list[int]:
    """Coefficients of prod_l (1 - t^{d_l}) / (1 - t)^v through degree D."""
    num = [1] + [0] * D
    for d in degrees:
        num = [num[i] - (num[i - d] if i >= d else 0) for i in range(D + 1)]
    inv = [comb(v - 1 + i, i) for i in range(D + 1)]
    return [sum(num[k] * inv[i - k] for k in range(i + 1)) for i in range(D + 1)]


def regular_sequence_check(ring: RingDescriptor, D: int | None = None) -> RegularSequenceVerdict:
    """Compare dim R_e with the complete-intersection Hilbert function for e <= D."""
    D = default_bounds(ring)[1] if D is None else D
    expected = complete_intersection_hilbert(ring.degrees, ring.v, D)
    qr = realization(ring)
    for e in range(D + 1):
        got = qr.dim(e)
        if got != expected[e]:
            return RegularSequenceVerdict(False, e, got, expected[e])
    return RegularSequenceVerdict(True, D)


def determinant(rows) -> Polynomial:
    """Cofactor expansion along the first row (tiny symbolic matrices)."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return rows[0][0]
    acc = None
    for j, a in enumerate(rows[0]):
        if a.is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * determinant(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc if acc is not None else rows[0][0] * 0


def jacobian(ring: RingDescriptor) -> list[list[Polynomial]]:
    return [[f.derivative(i) for i in range(ring.v)] for f in ring.relations]


def jacobian_minors(ring: RingDescriptor) -> list[Polynomial]:
    """All nonzero c x c minors of the Jacobian matrix (the constant 1 when c = 0)."""
    c = ring.c
    if c == 0:
        return [ring.one()]
    jac = jacobian(ring)
    out = []
    for cols in combinations(range(ring.v), c):
        m = determinant([[row[i] for i in cols] for row in jac])
        if not m.is_zero():
            out.append(m)
    return out


def _field_warnings(ring: RingDescriptor) -> tuple[str, ...]:
    p = ring.field.p
    if not p:
        return ()
    out = []
    if any(d % p == 0 for d in ring.degrees):
        out.append(f"characteristic {p} divides a relation degree; the Jacobian criterion may misreport")
    elif p < 100:
        out.append(f"small characteristic {p}; the Jacobian criterion may misreport")
    return tuple(out)


def isolated_singularity_check(ring: RingDescriptor, D: int | None = None) -> SingularityVerdict:
    """Does (Q/(f, c x c Jacobian minors))_e vanish for some e <= D?

    A standard graded quotient that is zero in degree e is zero above e; the
    next degree is checked as well rather than assumed.
    """
    D = default_bounds(ring)[1] if D is None else D
    gens = list(ring.relations) + jacobian_minors(ring)
    qr = QuotientRing(ring.field, ring.v, gens)
    dims = []
    for e in range(D + 1):
        dims.append(qr.dim(e))
        if dims[-1] == 0:
            if qr.dim(e + 1) != 0:
                raise AssertionError("standard graded quotient revived after a zero degree")
            return SingularityVerdict("yes", e, D, tuple(dims), _field_warnings(ring))
    return SingularityVerdict("no-within-bound", None, D, tuple(dims), _field_warnings(ring))


def certify(ring: RingDescriptor, D: int | None = None) -> RingCertificate:
    reg = regular_sequence_check(ring, D)
    if reg.verified:
        sing = isolated_singularity_check(ring, D)
    else:
        sing = SingularityVerdict("skipped", None, reg.degree)
    return RingCertificate(reg, sing, ring.degree, ring.n, ring.c, ring.v)
