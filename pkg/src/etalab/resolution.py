"""Truncated minimal graded free resolutions over R and finite ones over Q."""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass

from .errors import DegreeBoundExceeded
from .modules import (FreeModule, GradedPresentation, ModuleMap, kernel_step, minimal_image,
                      minimize_presentation)
from .polynomial import Polynomial
from .ring import RingDescriptor


@dataclass(frozen=True)
class Resolution:
    """F_0 <- F_1 <- ... <- F_J, exact and minimal in internal degrees <= D.

    ``maps[j]`` is the differential F_{j+1} -> F_j.
    """

    modules: tuple[FreeModule, ...]
    maps: tuple[ModuleMap, ...]
    over: str
    J: int
    D: int
    minimal: bool = True

    @property
    def length(self) -> int:
        """Index of the last nonzero F_j (as computed)."""
        nz = [j for j, F in enumerate(self.modules) if F.rank]
        return nz[-1] if nz else 0

    def betti(self) -> list[int]:
        return [F.rank for F in self.modules]


@dataclass(frozen=True)
class BettiTable:
    graded: dict  # (j, i) -> beta_{j,i}
    totals: tuple[int, ...]

    def __getitem__(self, key) -> int:
        return self.graded.get(key, 0)


def default_bounds(ring: RingDescriptor, M: GradedPresentation | None = None) -> tuple[int, int]:
    """J = 2c + 10, D = J + 2 * max relation degree + max generator degree."""
    J = 2 * ring.c + 10
    maxd = max(ring.degrees, default=1)
    maxg = max(M.generators.twists, default=0) if M is not None else 0
    return J, J + 2 * maxd + maxg


_CACHE: dict = {}
_CACHE_LOCK = threading.Lock()


def _resolve(M: GradedPresentation, ring: RingDescriptor, J: int, D: int, over: str) -> Resolution:
    key = (M, ring, J, D, over)
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    P = minimize_presentation(M, ring)
    F0 = P.generators
    if F0.rank:
        floor = J + max(F0.twists)
        if D < floor:
            step = max(0, D - max(F0.twists) + 1)
            raise DegreeBoundExceeded(
                f"internal degree bound D={D} leaves step {step} outside the valid region "
                f"(need D >= J + max generator degree = {floor})", step=step, suggested_D=floor)
    modules = [F0]
    maps: list[ModuleMap] = []
    if J >= 1:
        d1 = minimal_image(P.relations, ring, D)
        maps.append(d1)
        modules.append(d1.source)
    for j in range(2, J + 1):
        prev = maps[-1]
        if prev.source.rank == 0:
            nxt = ModuleMap(FreeModule(()), prev.source, ())
        else:
            try:
                nxt = kernel_step(prev, ring, D)
            except DegreeBoundExceeded as exc:
                exc.step = j
                raise
        maps.append(nxt)
        modules.append(nxt.source)
    res = Resolution(tuple(modules), tuple(maps), over, J, D, True)
    with _CACHE_LOCK:
        res = _CACHE.setdefault(key, res)
    return res


def resolve(M: GradedPresentation, ring: RingDescriptor, J: int, D: int) -> Resolution:
    """Minimal resolution of M over R, correct through homological degree J
    and internal degree D."""
    if J < 0:
        raise ValueError("J must be non-negative")
    return _resolve(M, ring, J, D, "R")


def ambient_presentation(M: GradedPresentation, ring: RingDescriptor) -> GradedPresentation:
    """M viewed as a module over the polynomial ring: add f_l * e_i columns."""
    Q = ring.ambient()
    gens = M.generators.twists
    zero = Q.zero()
    cols = [tuple(c) for c in M.relations.columns()]
    twists = list(M.relations.source.twists)
    for f in ring.relations:
        for i, a in enumerate(gens):
            col = [zero] * len(gens)
            col[i] = f
            cols.append(tuple(col))
            twists.append(a + f.degree)
    return GradedPresentation(M.generators, ModuleMap.from_columns(FreeModule(tuple(twists)), M.generators, cols, Q),
                              M.label)


def resolve_over_ambient(M: GradedPresentation, ring: RingDescriptor, D: int) -> Resolution:
    """Finite minimal resolution of M as a module over Q = k[x_0..x_{v-1}]."""
    Q = ring.ambient()
    P = ambient_presentation(M, ring)
    res = _resolve(P, Q, Q.v + 1, D, "Q")
    if res.modules[-1].rank:
        raise AssertionError("resolution over the polynomial ring longer than the number of variables")
    return res


def betti_table(res: Resolution) -> BettiTable:
    graded: Counter = Counter()
    for j, F in enumerate(res.modules):
        for a in F.twists:
            graded[(j, a)] += 1
    return BettiTable(dict(graded), tuple(F.rank for F in res.modules))


def compose_to_zero(res: Resolution, ring: RingDescriptor) -> bool:
    """d_j o d_{j+1} reduces to zero as a matrix of polynomials in R."""
    from .ring import realization

    qr = realization(ring)
    for a, b in zip(res.maps, res.maps[1:]):
        for i in range(a.target.rank):
            for k in range(b.source.rank):
                acc = Polynomial.zero(ring.v, ring.field)
                for j in range(a.source.rank):
                    acc = acc + a.entries[i][j] * b.entries[j][k]
                if not acc.is_zero() and qr.piece(acc.degree).reduce(acc):
                    return False
    return True
