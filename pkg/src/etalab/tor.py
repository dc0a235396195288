"""Graded Tor tables: dim_k Tor_j^R(M, N)_i from a minimal resolution of one
argument tensored with the other, plus finite-length and rigidity analysis."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .errors import HypothesisViolation
from .linalg import Echelon
from .modules import (GradedPresentation, minimize_presentation, module_realization, residue_twist)
from .resolution import Resolution, default_bounds, resolve, resolve_over_ambient
from .ring import RingDescriptor


def symmetric_functions(degrees) -> list[list[int]]:
    """s_0..s_c: elementary symmetric functions in t^{d_l}, as coefficient lists in t."""
    s = [[1]]
    for d in degrees:
        nxt = [list(p) for p in s] + [[0]]
        for k in range(len(s), 0, -1):
            shifted = [0] * d + s[k - 1]
            cur = nxt[k]
            if len(cur) < len(shifted):
                cur.extend([0] * (len(shifted) - len(cur)))
            for i, a in enumerate(shifted):
                cur[i] += a
        s = nxt
    return s


@dataclass
class TorTable:
    """dims[j][i] = dim_k Tor_j(M, N)_i for 0 <= j < J and 0 <= i <= D."""

    ring: RingDescriptor
    M: str
    N: str
    J: int
    D: int
    dims: tuple[tuple[int, ...], ...]
    window: int
    low_degree: int
    finite: tuple[bool, ...] = ()
    lengths: tuple[int | None, ...] = ()
    finite_length_from: int | None = None
    stabilization: int | None = None
    residuals: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.finite:
            self._analyse()

    @property
    def frontier(self) -> tuple[int, int]:
        return (self.J, self.D)

    def dim(self, j: int, i: int) -> int:
        if not (0 <= j < self.J and 0 <= i <= self.D):
            raise IndexError(f"({j}, {i}) outside the valid region j < {self.J}, i <= {self.D}")
        return self.dims[j][i]

    def hilbert(self, j: int) -> list[int]:
        """Coefficients of H_j(t) through degree D."""
        return list(self.dims[j])

    def beta(self, j: int) -> int:
        """length Tor_j when flagged finite, else 0."""
        n = self.lengths[j]
        return n if n is not None else 0

    def is_zero(self, j: int) -> bool:
        return self.finite[j] and not any(self.dims[j])

    def _analyse(self):
        w, D = self.window, self.D
        fin = []
        for j, row in enumerate(self.dims):
            start = D - w + 1
            room = start > j + self.low_degree
            fin.append(room and start >= 0 and not any(row[max(start, 0):]))
        self.finite = tuple(fin)
        self.lengths = tuple(sum(row) if f else None for row, f in zip(self.dims, fin))
        frm = None
        for j in range(self.J - 1, -1, -1):
            if fin[j]:
                frm = j
            else:
                break
        self.finite_length_from = frm
        self.residuals, self.stabilization = koszul_residuals(self)

    def to_rows(self) -> list[list[int]]:
        return [list(r) for r in self.dims]

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["j\\i"] + list(range(self.D + 1)))
        for j, row in enumerate(self.dims):
            wr.writerow([j] + list(row))
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "M": self.M,
            "N": self.N,
            "frontier": {"J": self.J, "D": self.D},
            "window": self.window,
            "dims": self.to_rows(),
            "finite": list(self.finite),
            "lengths": list(self.lengths),
            "finite_length_from": self.finite_length_from,
            "stabilization": self.stabilization,
        }


def koszul_residuals(t: TorTable) -> tuple[dict[int, list[int]], int | None]:
    """Residuals s_0 H_j - s_1 H_{j-2} + ... + (-1)^c s_c H_{j-2c} through
    degree D for 2c <= j < J, and the onset after which all of them vanish."""
    s = symmetric_functions(t.ring.degrees)
    c = t.ring.c
    out: dict[int, list[int]] = {}
    for j in range(2 * c, t.J):
        res = [0] * (t.D + 1)
        for k, sk in enumerate(s):
            sign = -1 if k % 2 else 1
            H = t.dims[j - 2 * k]
            for deg, a in enumerate(sk):
                if not a:
                    continue
                for i in range(deg, t.D + 1):
                    res[i] += sign * a * H[i - deg]
        out[j] = res
    onset = None
    for j in range(t.J - 1, 2 * c - 1, -1):
        if any(out[j]):
            break
        onset = j
    return out, onset


def _tensor_ranks(res: Resolution, NR, ring: RingDescriptor, jmax: int, D: int) -> list[list[int]]:
    """rank of (d_j (x) N)_i : (F_j (x) N)_i -> (F_{j-1} (x) N)_i for 1 <= j <= jmax."""
    field_ = ring.field
    ranks = [[0] * (D + 1)]
    for j in range(1, jmax + 1):
        dmap = res.maps[j - 1]
        row = []
        for i in range(D + 1):
            offs, off = [], 0
            for a in dmap.target.twists:
                offs.append(off)
                off += NR.dim(i - a)
            ech = Echelon(field_)
            for g, b in enumerate(dmap.source.twists):
                e = i - b
                n = NR.dim(e)
                if n == 0:
                    continue
                blocks = []
                for h, a in enumerate(dmap.target.twists):
                    p = dmap.entries[h][g]
                    if p.is_zero() or NR.dim(i - a) == 0:
                        continue
                    blocks.append((offs[h], NR.mult(p, e)))
                if not blocks:
                    continue
                for k in range(n):
                    vec = {}
                    for o, m in blocks:
                        for q, x in m[k].items():
                            vec[o + q] = x
                    if vec:
                        ech.add(vec)
            row.append(ech.rank)
        ranks.append(row)
    return ranks


def _homology(res: Resolution, N: GradedPresentation, ring: RingDescriptor, J: int, D: int):
    NR = module_realization(N, ring)
    jmax = min(J, len(res.modules) - 1)
    ranks = _tensor_ranks(res, NR, ring, jmax, D)
    dims = []
    for j in range(J):
        F = res.modules[j] if j < len(res.modules) else None
        row = []
        for i in range(D + 1):
            if F is None:
                row.append(0)
                continue
            total = sum(NR.dim(i - a) for a in F.twists)
            out = ranks[j][i] if j <= jmax else 0
            inc = ranks[j + 1][i] if j + 1 <= jmax else 0
            row.append(total - out - inc)
        dims.append(tuple(row))
    return tuple(dims)


def _betti_dims(res: Resolution, shift: int, J: int, D: int):
    dims = []
    for j in range(J):
        row = [0] * (D + 1)
        for a in res.modules[j].twists:
            if 0 <= a + shift <= D:
                row[a + shift] += 1
        dims.append(tuple(row))
    return tuple(dims)


def _min_twist(p: GradedPresentation, ring: RingDescriptor) -> int:
    q = minimize_presentation(p, ring)
    return min(q.generators.twists, default=0)


def tor_table(M: GradedPresentation, N: GradedPresentation, ring: RingDescriptor,
              J: int | None = None, D: int | None = None, window: int | None = None,
              method: str = "auto", require_finite_tail: bool = False) -> TorTable:
    """Graded Tor table over the valid region j < J, i <= D.

    ``method`` is ``"auto"`` (use the residue-field shortcut when M or N is
    k(-a), else resolve M), ``"resolve_M"`` or ``"resolve_N"``.
    """
    dJ, dD = default_bounds(ring, M)
    J = dJ if J is None else J
    D = dD if D is None else D
    w = max(ring.degrees, default=1) + 2 if window is None else window
    if method not in ("auto", "resolve_M", "resolve_N"):
        raise ValueError(f"unknown method {method!r}")
    dims = None
    if method == "auto":
        a = residue_twist(N, ring)
        if a is not None:
            dims = _betti_dims(resolve(M, ring, J, D - a), a, J, D)
        else:
            a = residue_twist(M, ring)
            if a is not None:
                dims = _betti_dims(resolve(N, ring, J, D - a), a, J, D)
    if dims is None:
        first, second = (N, M) if method == "resolve_N" else (M, N)
        dims = _homology(resolve(first, ring, J, D), second, ring, J, D)
    low = _min_twist(M, ring) + _min_twist(N, ring)
    table = TorTable(ring, M.label, N.label, J, D, dims, w, low)
    if require_finite_tail and table.finite_length_from is None:
        raise HypothesisViolation(
            f"Tor_j({M.label},{N.label}) never shows a vanishing window of width {w} "
            f"inside the frontier (J={J}, D={D})")
    return table


@dataclass(frozen=True)
class SymmetryReport:
    agree: bool
    max_deviation: int
    location: tuple[int, int] | None


def tor_symmetric_check(M: GradedPresentation, N: GradedPresentation, ring: RingDescriptor,
                        J: int | None = None, D: int | None = None) -> SymmetryReport:
    """Compare the table from resolving M with the one from resolving N."""
    a = tor_table(M, N, ring, J, D, method="resolve_M")
    b = tor_table(M, N, ring, J, D, method="resolve_N")
    worst, where = 0, None
    for j in range(min(a.J, b.J)):
        for i in range(min(a.D, b.D) + 1):
            dev = abs(a.dims[j][i] - b.dims[j][i])
            if dev > worst:
                worst, where = dev, (j, i)
    return SymmetryReport(worst == 0, worst, where)


@dataclass(frozen=True)
class AmbientCertificate:
    largest_nonzero: int | None
    resolution_length: int
    v: int
    D: int

    @property
    def holds(self) -> bool:
        return self.largest_nonzero is None or self.largest_nonzero <= self.v

    def to_json(self) -> dict:
        return {"largest_nonzero_j": self.largest_nonzero, "resolution_length": self.resolution_length,
                "v": self.v, "D": self.D, "holds": self.holds}


def ambient_tor_vanishing(M: GradedPresentation, N: GradedPresentation, ring: RingDescriptor,
                          D: int | None = None) -> AmbientCertificate:
    """Largest j with Tor_j^Q(M, N) nonzero (within degree D), Q the polynomial ring."""
    if D is None:
        D = default_bounds(ring, M)[1]
    res = resolve_over_ambient(M, ring, D)
    dims = _homology(res, N, ring, len(res.modules), D)
    nz = [j for j, row in enumerate(dims) if any(row)]
    return AmbientCertificate(nz[-1] if nz else None, res.length, ring.v, D)


@dataclass(frozen=True)
class RigidityFinding:
    start: int
    end: int
    violation_at: int | None

    @property
    def consistent(self) -> bool:
        return self.violation_at is None

    def to_json(self) -> dict:
        return {"window": [self.start, self.end], "violation_at": self.violation_at,
                "consistent_with_rigidity": self.consistent}


def rigidity_scan(t: TorTable, c: int) -> list[RigidityFinding]:
    """Every run of c consecutive vanishing Tor_j, with the first later
    nonvanishing Tor (a rigidity violation witness) if there is one."""
    if c < 1:
        raise ValueError("window length must be positive")
    zero = [t.is_zero(j) for j in range(t.J)]
    out = []
    for s in range(0, t.J - c + 1):
        if all(zero[s:s + c]):
            later = [j for j in range(s + c, t.J) if not zero[j]]
            out.append(RigidityFinding(s, s + c - 1, later[0] if later else None))
    return out
