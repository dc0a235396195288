"""Invariants read off a Tor table: Hilbert series and their rational forms,
the even/odd length polynomials, eta_c and theta, the generating functions
b_F(x, t) and eta_{c,E}(t), and two global consistency checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import HypothesisViolation, InsufficientWindow, NotPolynomialWithinBound, NotStabilized, XDegreeDefect
from .modules import GradedPresentation, free_presentation, module_piece_dim
from .ring import RingDescriptor
from .tor import TorTable, koszul_residuals, symmetric_functions


# univariate helpers: coefficient lists, lowest degree first ------------------

def trim(p) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def padd(p, q) -> list:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def pscale(p, a) -> list:
    return trim([a * x for x in p])


def pmul(p, q) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def peval(p, x):
    acc = 0
    for a in reversed(p):
        acc = acc * x + a
    return acc


def series_mul(p, q, n: int) -> list:
    """Product of power series truncated to degrees 0..n."""
    out = [0] * (n + 1)
    for i, a in enumerate(p[:n + 1]):
        if a:
            for j, b in enumerate(q[:n + 1 - i]):
                out[i + j] += a * b
    return out


def series_div(p, q, n: int) -> list:
    """p / q as a power series through degree n; needs q(0) != 0."""
    if not q or q[0] == 0:
        raise ZeroDivisionError("series division needs a unit constant term")
    q0 = q[0]
    out = []
    for i in range(n + 1):
        acc = p[i] if i < len(p) else 0
        for k in range(1, min(i, len(q) - 1) + 1):
            acc -= q[k] * out[i - k]
        out.append(acc if q0 == 1 else Fraction(acc) / q0)
    return out


def one_minus_t_power(k: int, n: int) -> list:
    """(1 - t)^k through degree n, for any integer k."""
    if k >= 0:
        return [(-1) ** i * comb(k, i) for i in range(min(k, n) + 1)]
    return [comb(-k + i - 1, i) for i in range(n + 1)]


def root_multiplicity_at_one(p) -> int | None:
    """Largest m with (1 - t)^m dividing p; None for the zero polynomial."""
    p = trim(p)
    if not p:
        return None
    m = 0
    while peval(p, 1) == 0:
        # synthetic division by (t - 1)
        q = [0] * (len(p) - 1)
        acc = 0
        for i in range(len(p) - 1, 0, -1):
            acc = acc + p[i]
            q[i - 1] = acc
        p = trim(q)
        m += 1
    return m


def interpolate(points) -> list[Fraction]:
    """Coefficients of the unique polynomial of degree < len(points) through them."""
    out: list = []
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j != i:
                basis = pmul(basis, [Fraction(-xj), Fraction(1)])
                denom *= xi - xj
        out = padd(out, pscale(basis, Fraction(yi) / denom))
    return trim(out)


def finite_difference(q, order: int = 1) -> list[Fraction]:
    """order-fold iterate of q(j) - q(j - 1)."""
    if order < 0:
        raise ValueError("order must be non-negative")
    q = trim([Fraction(a) for a in q])
    for _ in range(order):
        shifted = []  # q(j - 1) by Horner
        for a in reversed(q):
            shifted = padd(pmul(shifted, [Fraction(-1), Fraction(1)]), [a])
        q = padd(q, pscale(shifted, -1))
    return q


def frac_str(x) -> str:
    return str(Fraction(x))


def poly_json(p) -> list[str]:
    return [frac_str(a) for a in p]


# Hilbert series ----------------------------------------------------------------

@dataclass(frozen=True)
class HilbertSeries:
    """coeffs[d] = dim T_d for d <= D, and H_T = numerator / (1 - t)^pole_order."""

    coeffs: tuple[int, ...]
    numerator: tuple[int, ...]
    pole_order: int

    @property
    def D(self) -> int:
        return len(self.coeffs) - 1

    def expand(self, n: int) -> list[int]:
        return series_mul(list(self.numerator), one_minus_t_power(-self.pole_order, n), n)

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs), "numerator": list(self.numerator),
                "pole_order": self.pole_order}


def rational_form(coeffs, max_pole: int, margin: int) -> tuple[list[int], int]:
    """Find (e, k) with sum coeffs_d t^d = e(t) / (1 - t)^k, k <= max_pole,
    deg e <= D - margin, by multiplying through by (1 - t)."""
    a = list(coeffs)
    D = len(a) - 1
    cut = D - margin + 1
    if cut < 1:
        raise NotPolynomialWithinBound(f"degree bound D={D} too small to recover a rational form",
                                       suggested_D=margin + 1)
    for k in range(max_pole + 1):
        if not any(a[cut:]):
            e = trim(a[:cut])
            if e and peval(e, 1) == 0:
                raise NotPolynomialWithinBound("numerator vanishes at t = 1; D too small",
                                               suggested_D=D + margin)
            return e, k
        a = [a[0]] + [a[i] - a[i - 1] for i in range(1, D + 1)]
    raise NotPolynomialWithinBound(
        f"no rational form with pole order <= {max_pole} emerges by degree D={D}",
        suggested_D=2 * D)


def hilbert_series(p: GradedPresentation, ring: RingDescriptor, D: int) -> HilbertSeries:
    coeffs = [module_piece_dim(p, ring, d) for d in range(D + 1)]
    num, k = rational_form(coeffs, ring.v, ring.v + 1)
    return HilbertSeries(tuple(coeffs), tuple(num), k)


def multiplicity_polynomial(ring: RingDescriptor) -> list[int]:
    """e_R(t) = prod_l (1 + t + ... + t^{d_l - 1})."""
    e = [1]
    for d in ring.degrees:
        e = pmul(e, [1] * d)
    return e


# even/odd fitting and eta -------------------------------------------------------

@dataclass(frozen=True)
class FittedPolynomialPair:
    """length Tor_{2j} = P_ev(j), length Tor_{2j+1} = P_odd(j) on the window."""

    P_ev: tuple[Fraction, ...]
    P_odd: tuple[Fraction, ...]
    window: tuple[int, int]
    verified_points: int

    def to_json(self) -> dict:
        return {"P_ev": poly_json(self.P_ev), "P_odd": poly_json(self.P_odd),
                "window": list(self.window), "verified_points": self.verified_points}


def stable_start(t: TorTable, c: int) -> int:
    """First index of the stable range.

    The residual at j ties H_j, H_{j-2}, ..., H_{j-2c} together, so once it
    vanishes for every j >= j0 (and for at least c + 1 steps inside the
    frontier) each parity of beta is polynomial from j0 - 2c on.  Every Tor
    used must also be flagged finite.
    """
    onset = t.stabilization
    if onset is None or t.J - onset < c + 1:
        J = t.J + 4 if onset is None else max(onset + c + 1, max(onset - 2 * c, 0) + 4 * c)
        raise NotStabilized(
            f"Koszul residual does not vanish on {c + 1} consecutive steps inside the frontier "
            f"(J={t.J}, D={t.D}); try J >= {J}", suggested_J=J, suggested_D=t.D + J - t.J)
    if t.finite_length_from is None:
        if any(t.finite):
            # earlier Tor are finite; the last ones are cut off by the degree bound
            D = t.D + t.J // 2 + t.window
            raise NotStabilized(f"the last Tor modules reach the degree bound (J={t.J}, D={t.D}); "
                                f"try D >= {D}", suggested_J=t.J, suggested_D=D)
        raise NotStabilized(f"no finite-length tail of Tor inside the frontier (J={t.J}, D={t.D}); "
                            f"try J >= {t.J + 4}", suggested_J=t.J + 4, suggested_D=t.D + 4)
    return max(onset - 2 * c, t.finite_length_from)


def fit_even_odd(t: TorTable, c: int | None = None, start: int | None = None) -> FittedPolynomialPair:
    c = t.ring.c if c is None else c
    if c < 1:
        raise HypothesisViolation("even/odd fitting needs codimension c >= 1")
    lo = stable_start(t, c) if start is None else start
    idx = list(range(lo, t.J))
    ev = [(j // 2, t.beta(j)) for j in idx if j % 2 == 0]
    od = [((j - 1) // 2, t.beta(j)) for j in idx if j % 2 == 1]
    if min(len(ev), len(od)) < 2 * c:
        need = lo + 4 * c
        raise InsufficientWindow(
            f"stable window [{lo}, {t.J - 1}] has fewer than {2 * c} points per parity; "
            f"try J >= {need}", suggested_J=need, suggested_D=t.D + (need - t.J))
    polys = []
    for pts in (ev, od):
        P = interpolate(pts[:c])
        for x, y in pts[c:]:
            if peval(P, Fraction(x)) != y:
                raise NotStabilized(
                    f"length polynomial fitted on j in [{lo}, ...] fails at j = {2 * x + (pts is od)}; "
                    f"try J >= {t.J + 4}",
                    suggested_J=t.J + 4, suggested_D=t.D + 4)
        polys.append(tuple(P))
    extra = len(ev) - c + len(od) - c
    return FittedPolynomialPair(polys[0], polys[1], (lo, t.J - 1), extra)


@dataclass(frozen=True)
class EtaReport:
    c: int
    eta: Fraction
    theta: Fraction | None
    limit_estimates: tuple[tuple[int, Fraction], ...]
    fit: FittedPolynomialPair
    frontier: tuple[int, int]

    def to_json(self) -> dict:
        return {
            "c": self.c,
            "eta": frac_str(self.eta),
            "theta": None if self.theta is None else frac_str(self.theta),
            "limit_estimates": [{"n": n, "value": frac_str(x)} for n, x in self.limit_estimates],
            "fit": self.fit.to_json(),
            "frontier": {"J": self.frontier[0], "D": self.frontier[1]},
        }


def limit_estimates(t: TorTable, c: int, count: int = 3) -> list[tuple[int, Fraction]]:
    """sum_{j <= n} (-1)^j beta_j / n^c at the last few n (advisory only)."""
    out = []
    partial = 0
    sums = []
    for j in range(t.J):
        partial += (-1) ** j * t.beta(j)
        sums.append(partial)
    for n in range(max(1, t.J - count), t.J):
        out.append((n, Fraction(sums[n], n ** c)))
    return out


def eta(t: TorTable, c: int | None = None) -> EtaReport:
    c = t.ring.c if c is None else c
    fit = fit_even_odd(t, c)
    diff = finite_difference(padd(list(fit.P_ev), pscale(list(fit.P_odd), -1)), c - 1)
    if len(diff) > 1:
        raise NotStabilized("difference of the fitted polynomials has degree above c - 1")
    lead = diff[0] if diff else Fraction(0)
    value = Fraction(lead) / (2 ** c * factorial(c))
    theta = 2 * value if c == 1 else None
    return EtaReport(c, value, theta, tuple(limit_estimates(t, c)), fit, t.frontier)


# generating functions ------------------------------------------------------------

@dataclass(frozen=True)
class GenFunReport:
    F: int
    E: int
    bF: tuple[tuple[int, ...], ...]
    bF_next: tuple[tuple[int, ...], ...]
    etaE_poly: tuple[int, ...]
    value_at_one: int
    vanishing_order: int | None
    symmetric_s: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "F": self.F,
            "E": self.E,
            "bF": [list(b) for b in self.bF],
            "bF_next": [list(b) for b in self.bF_next],
            "etaE_poly": list(self.etaE_poly),
            "value_at_one": str(self.value_at_one),
            "vanishing_order": self.vanishing_order,
            "symmetric_s": [list(s) for s in self.symmetric_s],
        }


def b_coefficients(t: TorTable, F: int, c: int, s) -> list[list[int]]:
    """x-coefficients b_{m,F}(t), m < c, of prod_l (1 - t^{d_l} x) * G_F(x, t),
    after checking that every higher x-coefficient inside the frontier vanishes."""
    if t.finite_length_from is None or F < t.finite_length_from:
        raise NotStabilized(f"Tor_j is not known to have finite length for all j >= {F}; try J >= {t.J + 4}",
                            suggested_J=t.J + 4, suggested_D=t.D + 4)
    if F + 2 * c >= t.J:
        raise InsufficientWindow(
            f"no x-degree {c} coefficient of b_{F} is inside the frontier J={t.J}; try J >= {F + 2 * c + 1}",
            suggested_J=F + 2 * c + 1, suggested_D=t.D + (F + 2 * c + 1 - t.J))

    def coeff(m):
        out: list = []
        for k in range(min(m, c) + 1):
            out = padd(out, pscale(pmul(s[k], t.hilbert(F + 2 * (m - k))), (-1) ** k))
        return out

    for m in range(c, (t.J - 1 - F) // 2 + 1):
        if coeff(m):
            raise XDegreeDefect(
                f"b_{F}(x, t) has a nonzero x^{m} coefficient (expected x-degree <= {c - 1}); "
                f"try J >= {t.J + 4}",
                suggested_J=t.J + 4, suggested_D=t.D + 4)
    return [coeff(m) for m in range(c)]


def gen_fun(t: TorTable, F: int, c: int | None = None, degrees=None) -> GenFunReport:
    """b_F and b_{F+1}, and eta_{c,F}(t) = b_F(1, t) - b_{F+1}(1, t) for even F."""
    c = t.ring.c if c is None else c
    degrees = t.ring.degrees if degrees is None else tuple(degrees)
    if F % 2:
        raise ValueError("the generating-function start index must be even")
    s = symmetric_functions(degrees)
    b0 = b_coefficients(t, F, c, s)
    b1 = b_coefficients(t, F + 1, c, s)
    at_one = []
    for b in (b0, b1):
        acc: list = []
        for m in b:
            acc = padd(acc, m)
        at_one.append(acc)
    poly = padd(at_one[0], pscale(at_one[1], -1))
    return GenFunReport(F, F, tuple(tuple(b) for b in b0), tuple(tuple(b) for b in b1),
                        tuple(poly), peval(poly, 1), root_multiplicity_at_one(poly),
                        tuple(tuple(x) for x in s))


def choose_E(t: TorTable, c: int | None = None) -> int:
    c = t.ring.c if c is None else c
    lo = stable_start(t, c)
    return lo + (lo % 2)


# consistency checks ---------------------------------------------------------------

@dataclass(frozen=True)
class ResidualReport:
    residuals: dict
    onset: int | None

    def to_json(self) -> dict:
        return {"onset": self.onset,
                "nonzero_at": [j for j, r in sorted(self.residuals.items()) if any(r)]}


def koszul_residual(t: TorTable, ring: RingDescriptor | None = None) -> ResidualReport:
    """Residual vectors s_0 H_j - s_1 H_{j-2} + ... and their vanishing onset."""
    if ring is not None and ring.degrees != t.ring.degrees:
        raise ValueError("table was computed over a different ring")
    res, onset = koszul_residuals(t)
    return ResidualReport(res, onset)


@dataclass(frozen=True)
class ABReport:
    max_deviation: int
    location: int | None
    valid_through: int
    lhs: tuple
    rhs: tuple

    def to_json(self) -> dict:
        return {"max_deviation": str(self.max_deviation), "location": self.location,
                "valid_through": self.valid_through}


def ab_identity_check(M: GradedPresentation, N: GradedPresentation, ring: RingDescriptor,
                      t: TorTable) -> ABReport:
    """Compare H_M H_N / H_R with sum_j (-1)^j H_j coefficientwise.

    Tor_j lives in internal degrees >= j + (lowest generator degrees of M and
    N), so the truncated sum is exact through degree J - 1 + that offset.
    """
    D = t.D
    hM, hN, hR = (hilbert_series(p, ring, D) for p in (M, N, free_presentation(ring, (0,), "R")))
    k = hR.pole_order - hM.pole_order - hN.pole_order
    num = pmul(pmul(list(hM.numerator), list(hN.numerator)), one_minus_t_power(k, D))
    lhs = series_div(num, list(hR.numerator), D)
    rhs = [sum((-1) ** j * t.dims[j][i] for j in range(t.J)) for i in range(D + 1)]
    top = min(D, t.J - 1 + t.low_degree)
    worst, where = 0, None
    for i in range(top + 1):
        dev = abs(lhs[i] - rhs[i])
        if dev > worst:
            worst, where = dev, i
    return ABReport(worst, where, top, tuple(lhs), tuple(rhs))


def eta_consistency(report: EtaReport, gen: GenFunReport) -> bool:
    return gen.value_at_one == 2 ** report.c * factorial(report.c) * report.eta
