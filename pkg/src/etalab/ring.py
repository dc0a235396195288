"""Graded rings Q/I with Q = k[x_0..x_{v-1}] realized one degree at a time.

``R_d`` is represented by the standard monomials of degree d: the monomials
that are not pivots of the reduced echelon form of the Macaulay matrix
``{m * f : deg m = d - deg f}``.  Every degree-d polynomial reduces to exact
coordinates in that basis.  No Groebner bases are involved.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import cached_property

from .errors import HomogeneityError
from .linalg import RATIONALS, Echelon, FieldSpec, Matrix, SparseVec
from .polynomial import Monomial, Polynomial, monomial_basis, monomial_index, parse_polynomial


@dataclass(frozen=True)
class RingDescriptor:
    """R = Q/(f_1..f_c) with Q standard graded over ``field``."""

    field: FieldSpec
    variables: tuple[str, ...]
    relations: tuple[Polynomial, ...] = ()

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")
        if not self.variables:
            raise ValueError("at least one variable is required")
        for k, f in enumerate(self.relations):
            if f.nvars != len(self.variables) or f.field != self.field:
                raise ValueError(f"relation {k + 1} lives in a different ring")
            if f.is_zero() or not f.is_homogeneous():
                raise HomogeneityError(f"relation {k + 1} must be a nonzero homogeneous polynomial")
            if f.degree < 1:
                raise HomogeneityError(f"relation {k + 1} must lie in the maximal ideal (degree >= 1)")

    @classmethod
    def from_strings(cls, variables, relations=(), field: FieldSpec = RATIONALS) -> "RingDescriptor":
        names = tuple(variables)
        return cls(field, names, tuple(parse_polynomial(r, names, field) for r in relations))

    @property
    def v(self) -> int:
        return len(self.variables)

    @property
    def c(self) -> int:
        return len(self.relations)

    @property
    def n(self) -> int:
        return self.v - self.c

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(f.degree for f in self.relations)

    @property
    def degree(self) -> int:
        """Product of the relation degrees (the degree of Proj R when regular)."""
        out = 1
        for d in self.degrees:
            out *= d
        return out

    def ambient(self) -> "RingDescriptor":
        return RingDescriptor(self.field, self.variables, ())

    def with_field(self, field: FieldSpec) -> "RingDescriptor":
        if field == self.field:
            return self
        return RingDescriptor(field, self.variables,
                              tuple(f.change_field(field) for f in self.relations))

    def poly(self, text: str) -> Polynomial:
        return parse_polynomial(text, self.variables, self.field)

    def var(self, name: str) -> Polynomial:
        return Polynomial.variable(self.variables.index(name), self.v, self.field)

    def one(self) -> Polynomial:
        return Polynomial.one(self.v, self.field)

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.v, self.field)

    def format(self, f: Polynomial) -> str:
        return f.format(self.variables)

    @cached_property
    def _hash(self) -> int:
        return hash((self.field, self.variables, self.relations))

    def __hash__(self) -> int:
        return self._hash


@dataclass
class QuotientPiece:
    """k-basis of (Q/I)_d by standard monomials, with the reduction map."""

    degree: int
    basis_monomials: tuple[Monomial, ...]
    index: dict[Monomial, int]
    normal_forms: dict[Monomial, SparseVec]
    field: FieldSpec
    nvars: int

    @property
    def dim(self) -> int:
        return len(self.basis_monomials)

    def reduce_terms(self, terms: dict) -> SparseVec:
        """Coordinates of a degree-d polynomial (given by its terms)."""
        p = self.field.p
        out: SparseVec = {}
        index, nfs = self.index, self.normal_forms
        for m, a in terms.items():
            k = index.get(m)
            if k is not None:
                x = out.get(k, 0) + a
                if p:
                    x %= p
                if x:
                    out[k] = x
                else:
                    out.pop(k, None)
                continue
            for k, b in nfs[m].items():
                x = out.get(k, 0) + a * b
                if p:
                    x %= p
                if x:
                    out[k] = x
                else:
                    out.pop(k, None)
        return out

    def reduce(self, f: Polynomial) -> SparseVec:
        if not f.is_zero() and f.degree != self.degree:
            raise ValueError(f"polynomial of degree {f.degree} reduced in degree {self.degree}")
        return self.reduce_terms(f.terms)

    def reduction_matrix(self) -> Matrix:
        """Matrix of Q_d -> R_d in the monomial basis of Q_d (grlex order)."""
        mons = monomial_basis(self.nvars, self.degree)
        cols = [self.reduce_terms({m: self.field.one}) for m in mons]
        return Matrix.from_sparse_columns(cols, self.dim, self.field)

    def to_polynomial(self, coords: SparseVec) -> Polynomial:
        return Polynomial({self.basis_monomials[k]: a for k, a in coords.items() if a},
                          self.nvars, self.field)


class QuotientRing:
    """Degreewise realization of k[x]/(gens) for homogeneous ``gens``.

    Pieces and multiplication matrices are memoized; concurrent readers may
    compute a piece twice but always store identical results.
    """

    def __init__(self, field: FieldSpec, nvars: int, gens=()):
        self.field = field
        self.nvars = nvars
        self.gens = tuple(g for g in gens if not g.is_zero())
        for g in self.gens:
            if not g.is_homogeneous():
                raise HomogeneityError("ideal generators must be homogeneous")
        self._pieces: dict[int, QuotientPiece] = {}
        self._mult: dict = {}
        self._lock = threading.Lock()

    def piece(self, d: int) -> QuotientPiece:
        pc = self._pieces.get(d)
        if pc is None:
            pc = self._build(d)
            with self._lock:
                pc = self._pieces.setdefault(d, pc)
        return pc

    def dim(self, d: int) -> int:
        if d < 0:
            return 0
        return self.piece(d).dim

    def _build(self, d: int) -> QuotientPiece:
        v = self.nvars
        if d < 0:
            return QuotientPiece(d, (), {}, {}, self.field, v)
        mons = monomial_basis(v, d)
        idx = monomial_index(v, d)
        ech = Echelon(self.field)
        for g in self.gens:
            e = g.degree
            if e > d:
                continue
            for m in monomial_basis(v, d - e):
                ech.add({idx[tuple(a + b for a, b in zip(mono, m))]: c
                         for mono, c in g.terms.items()})
        red = ech.make_reduced()
        standard = [j for j in range(len(mons)) if j not in red]
        pos = {j: k for k, j in enumerate(standard)}
        neg = self.field.neg
        nfs = {mons[pc]: {pos[j]: neg(a) for j, a in r.items() if j != pc}
               for pc, r in red.items()}
        basis = tuple(mons[j] for j in standard)
        return QuotientPiece(d, basis, {m: k for k, m in enumerate(basis)}, nfs, self.field, v)

    def mult(self, g: Polynomial, d: int) -> list[SparseVec]:
        """Columns of multiplication by homogeneous ``g``: R_d -> R_{d+deg g}."""
        key = (g, d)
        cols = self._mult.get(key)
        if cols is not None:
            return cols
        src = self.piece(d) if d >= 0 else None
        if src is None or src.dim == 0:
            cols = []
        elif g.is_zero():
            cols = [{} for _ in range(src.dim)]
        else:
            tgt = self.piece(d + g.degree)
            if tgt.dim == 0:
                cols = [{} for _ in range(src.dim)]
            else:
                cols = [tgt.reduce_terms(g.mul_monomial(s).terms) for s in src.basis_monomials]
        self._mult[key] = cols
        return cols


_REALIZATIONS: dict = {}
_REALIZATIONS_LOCK = threading.Lock()


def realization(ring: RingDescriptor) -> QuotientRing:
    qr = _REALIZATIONS.get(ring)
    if qr is None:
        qr = QuotientRing(ring.field, ring.v, ring.relations)
        with _REALIZATIONS_LOCK:
            qr = _REALIZATIONS.setdefault(ring, qr)
    return qr


def quotient_piece(ring: RingDescriptor, d: int) -> QuotientPiece:
    """Basis of R_d and the reduction Q_d -> R_d."""
    return realization(ring).piece(d)


def mult_map(ring: RingDescriptor, g: Polynomial, d: int) -> Matrix:
    """Matrix of multiplication by ``g`` from R_d to R_{d + deg g}."""
    if not g.is_zero() and not g.is_homogeneous():
        raise HomogeneityError("mult_map needs a homogeneous multiplier")
    qr = realization(ring)
    e = 0 if g.is_zero() else g.degree
    return Matrix.from_sparse_columns(qr.mult(g, d), qr.dim(d + e), ring.field)
