"""Exact linear algebra over the rationals and over prime fields.

Matrices are dense at the API level (:class:`Matrix`).  Elimination works on
rows stored as ``{column: value}`` dicts so that the many structural zeros of
graded-piece matrices cost nothing; every value is exact.  Rationals are
``gmpy2.mpq`` (always stored in lowest terms), prime-field elements are plain
ints in ``range(p)``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq

DEFAULT_PRIME = 32003

SparseVec = dict  # column index -> nonzero field element


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: the rationals (``p == 0``) or F_p for an odd prime p."""

    p: int = 0

    def __post_init__(self):
        if self.p:
            if self.p <= 2 or not gmpy2.is_prime(self.p):
                raise ValueError(f"prime field needs an odd prime, got {self.p}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> "FieldSpec":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Accepts ``Q``, ``QQ``, ``Fp`` (default prime) and ``Fp:<p>``."""
        t = text.strip()
        if t in ("Q", "QQ"):
            return cls(0)
        if t in ("Fp", "FP"):
            return cls(DEFAULT_PRIME)
        if t.startswith(("Fp:", "FP:")):
            try:
                return cls(int(t[3:]))
            except ValueError as exc:
                raise ValueError(f"bad field {text!r}: {exc}") from None
        raise ValueError(f"unknown field {text!r}; expected Q or Fp:<p>")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __str__(self) -> str:
        return "Q" if self.p == 0 else f"Fp:{self.p}"

    def __call__(self, x) -> object:
        """Convert an int, Fraction, mpq or numeric string into a field element."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.p == 0:
            return mpq(x)
        if isinstance(x, int):
            return x % self.p
        q = Fraction(x)
        den = q.denominator % self.p
        if den == 0:
            raise ValueError(f"denominator {q.denominator} vanishes in F_{self.p}")
        return q.numerator * pow(den, -1, self.p) % self.p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(int(a), -1, self.p)
        return 1 / a

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def to_fraction(self, a) -> Fraction:
        """Exact value as a Fraction; prime-field elements map to their
        symmetric representative in (-p/2, p/2]."""
        if self.p:
            a = int(a)
            return Fraction(a - self.p if a > self.p // 2 else a)
        return Fraction(int(a.numerator), int(a.denominator))


RATIONALS = FieldSpec(0)


class Matrix:
    """Dense matrix over a :class:`FieldSpec`, immutable by convention."""

    __slots__ = ("rows", "nrows", "ncols", "field")

    def __init__(self, rows: Sequence[Sequence], ncols: int | None = None,
                 field: FieldSpec = RATIONALS):
        self.field = field
        self.rows = tuple(tuple(field(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: FieldSpec = RATIONALS) -> "Matrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols, field)

    @classmethod
    def identity(cls, n: int, field: FieldSpec = RATIONALS) -> "Matrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, field)

    @classmethod
    def from_sparse_columns(cls, cols: Sequence[SparseVec], nrows: int,
                            field: FieldSpec = RATIONALS) -> "Matrix":
        dense = [[0] * len(cols) for _ in range(nrows)]
        for j, col in enumerate(cols):
            for i, a in col.items():
                dense[i][j] = a
        return cls(dense, len(cols), field)

    @classmethod
    def from_sparse_rows(cls, rows: Sequence[SparseVec], ncols: int,
                         field: FieldSpec = RATIONALS) -> "Matrix":
        dense = []
        for r in rows:
            row = [0] * ncols
            for j, a in r.items():
                row[j] = a
            dense.append(row)
        return cls(dense, ncols, field)

    def sparse_rows(self) -> list[SparseVec]:
        return [{j: a for j, a in enumerate(r) if a} for r in self.rows]

    def sparse_columns(self) -> list[SparseVec]:
        cols = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, a in enumerate(r):
                if a:
                    cols[j][i] = a
        return cols

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix([[r[j] for r in self.rows] for j in range(self.ncols)],
                      self.nrows, self.field)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        p = self.field.p
        cols = other.sparse_columns()
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for col in cols:
                s = 0
                for k, a in nz:
                    b = col.get(k)
                    if b:
                        s += a * b
                row.append(s % p if p else s)
            out.append(row)
        return Matrix(out, other.ncols, self.field)

    def is_zero(self) -> bool:
        return not any(a for r in self.rows for a in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.nrows, self.ncols, self.field, self.rows) == (
            other.nrows, other.ncols, other.field, other.rows)

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.field, self.rows))

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def __repr__(self) -> str:
        return f"Matrix({[[str(a) for a in r] for r in self.rows]}, field={self.field})"


class Echelon:
    """Incrementally maintained row-echelon basis of a subspace of k^n.

    ``rows`` maps each pivot column to a row whose smallest column is that
    pivot, with entry 1 there.
    """

    __slots__ = ("field", "p", "rows")

    def __init__(self, field: FieldSpec, vectors: Iterable[SparseVec] = ()):
        self.field = field
        self.p = field.p
        self.rows: dict[int, SparseVec] = {}
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: SparseVec) -> SparseVec:
        """Return ``vec`` minus its projection onto the pivot columns."""
        v = dict(vec)
        rows = self.rows
        if not rows:
            return v
        heap = [c for c in v if c in rows]
        if not heap:
            return v
        heapq.heapify(heap)
        p = self.p
        while heap:
            c = heapq.heappop(heap)
            f = v.get(c)
            if not f:
                continue
            for k, a in rows[c].items():
                x = v.get(k)
                if x is None:
                    x = (-f * a) % p if p else -f * a
                    v[k] = x
                    if k in rows:
                        heapq.heappush(heap, k)
                else:
                    x = (x - f * a) % p if p else x - f * a
                    if x:
                        v[k] = x
                    else:
                        del v[k]
        return v

    def add(self, vec: SparseVec) -> bool:
        """Insert ``vec``; return True iff it was independent of the span."""
        r = self.reduce(vec)
        if not r:
            return False
        c = min(r)
        lead = r[c]
        if lead != 1:
            inv = self.field.inv(lead)
            p = self.p
            if p:
                r = {k: a * inv % p for k, a in r.items()}
            else:
                r = {k: a * inv for k, a in r.items()}
        self.rows[c] = r
        return True

    def contains(self, vec: SparseVec) -> bool:
        return not self.reduce(vec)

    def make_reduced(self) -> dict[int, SparseVec]:
        """Bring the stored rows to reduced row-echelon form, in place."""
        p = self.p
        out: dict[int, SparseVec] = {}
        for c in sorted(self.rows, reverse=True):
            r = self.rows[c]
            hits = sorted(k for k in r if k != c and k in out)
            if hits:
                r = dict(r)
                for k in hits:
                    f = r.get(k)
                    if not f:
                        continue
                    for kk, a in out[k].items():
                        x = r.get(kk)
                        if x is None:
                            r[kk] = (-f * a) % p if p else -f * a
                        else:
                            x = (x - f * a) % p if p else x - f * a
                            if x:
                                r[kk] = x
                            else:
                                del r[kk]
            out[c] = r
        self.rows = dict(sorted(out.items()))
        return self.rows


def rank_of_vectors(vectors: Iterable[SparseVec], field: FieldSpec) -> int:
    return Echelon(field, vectors).rank


def kernel_vectors(rows: Iterable[SparseVec], ncols: int, field: FieldSpec) -> list[SparseVec]:
    """Basis of {x : r.x = 0 for every row r}, one vector per free column."""
    ech = Echelon(field, rows)
    red = ech.make_reduced()
    free = [j for j in range(ncols) if j not in red]
    basis = {f: {f: field.one} for f in free}
    for pc, r in red.items():
        for f, a in r.items():
            if f != pc:
                basis[f][pc] = field.neg(a)
    return [basis[f] for f in free]


def transpose_sparse(cols: Sequence[SparseVec], nrows: int) -> list[SparseVec]:
    rows = [{} for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, a in col.items():
            rows[i][j] = a
    return rows


def rref(A: Matrix) -> tuple[Matrix, tuple[int, ...], int]:
    """Reduced row-echelon form, pivot columns and rank of ``A``."""
    ech = Echelon(A.field, A.sparse_rows())
    red = ech.make_reduced()
    pivots = tuple(sorted(red))
    rows = [red[c] for c in pivots] + [{} for _ in range(A.nrows - len(pivots))]
    return Matrix.from_sparse_rows(rows, A.ncols, A.field), pivots, len(pivots)


def rank(A: Matrix) -> int:
    return Echelon(A.field, A.sparse_rows()).rank


def kernel_basis(A: Matrix) -> Matrix:
    """Columns form a basis of the right null space of ``A``."""
    vecs = kernel_vectors(A.sparse_rows(), A.ncols, A.field)
    return Matrix.from_sparse_columns(vecs, A.ncols, A.field)


def in_column_span(A: Matrix, v: Sequence) -> bool:
    if len(v) != A.nrows:
        raise ValueError("dimension mismatch")
    vec = {i: A.field(a) for i, a in enumerate(v) if a}
    return Echelon(A.field, A.sparse_columns()).contains(vec)
