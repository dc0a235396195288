"""Finitely generated graded R-modules given by homogeneous presentations.

Conventions: a free module ``FreeModule((a_1, ..., a_r))`` is the sum of the
R(-a_i), so generator i sits in degree a_i.  A ``ModuleMap`` stores its
entries target-row by source-column; entry (i, j) is homogeneous of degree
b_j - a_i.  A presentation's relations are the columns of its map.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import DegreeBoundExceeded, HomogeneityError
from .linalg import Echelon, Matrix, SparseVec, transpose_sparse
from .polynomial import Polynomial
from .ring import RingDescriptor, realization


@dataclass(frozen=True)
class FreeModule:
    twists: tuple[int, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.twists)

    def offsets(self, ring: RingDescriptor, d: int) -> list[tuple[int, int]]:
        """(offset, dim R_{d - a_i}) for each generator, in coordinate order."""
        qr = realization(ring)
        out, off = [], 0
        for a in self.twists:
            n = qr.dim(d - a)
            out.append((off, n))
            off += n
        return out

    def piece_dim(self, ring: RingDescriptor, d: int) -> int:
        qr = realization(ring)
        return sum(qr.dim(d - a) for a in self.twists)

    def vector_to_column(self, ring: RingDescriptor, d: int, vec: SparseVec) -> tuple[Polynomial, ...]:
        """Turn coordinates in this module's degree-d piece into a column of
        polynomials (one per generator)."""
        qr = realization(ring)
        out = []
        for (off, n), a in zip(self.offsets(ring, d), self.twists):
            if n == 0:
                out.append(ring.zero())
                continue
            pc = qr.piece(d - a)
            out.append(pc.to_polynomial({k - off: x for k, x in vec.items() if off <= k < off + n}))
        return tuple(out)


@dataclass(frozen=True)
class ModuleMap:
    source: FreeModule
    target: FreeModule
    entries: tuple[tuple[Polynomial, ...], ...]  # entries[i][j]: target i, source j

    def __post_init__(self):
        if len(self.entries) != self.target.rank:
            raise ValueError("entry rows do not match target rank")
        for i, row in enumerate(self.entries):
            if len(row) != self.source.rank:
                raise ValueError("entry columns do not match source rank")
            for j, g in enumerate(row):
                if g.is_zero():
                    continue
                want = self.source.twists[j] - self.target.twists[i]
                if not g.is_homogeneous() or g.degree != want:
                    raise HomogeneityError(
                        f"map entry ({i + 1},{j + 1}) has degree {g.degree}, expected {want}")

    @classmethod
    def from_columns(cls, source: FreeModule, target: FreeModule, columns, ring: RingDescriptor):
        cols = [tuple(c) for c in columns]
        entries = tuple(tuple(cols[j][i] for j in range(len(cols))) for i in range(target.rank))
        if not cols:
            entries = tuple(() for _ in range(target.rank))
        return cls(source, target, entries)

    def column(self, j: int) -> tuple[Polynomial, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[Polynomial, ...]]:
        return [self.column(j) for j in range(self.source.rank)]

    @cached_property
    def _hash(self) -> int:
        return hash((self.source, self.target, self.entries))

    def __hash__(self) -> int:
        return self._hash


@dataclass(frozen=True)
class GradedPresentation:
    """The module coker(relations: F_1 -> generators)."""

    generators: FreeModule
    relations: ModuleMap
    label: str = field(default="M", compare=False)

    def __post_init__(self):
        if self.relations.target != self.generators:
            raise ValueError("relations must map into the generators")

    @cached_property
    def _hash(self) -> int:
        return hash((self.generators, self.relations))

    def __hash__(self) -> int:
        return self._hash

    def relabel(self, label: str) -> "GradedPresentation":
        return GradedPresentation(self.generators, self.relations, label)


# constructors ---------------------------------------------------------------

def _as_poly(ring: RingDescriptor, x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, int):
        return Polynomial.constant(x, ring.v, ring.field)
    return ring.poly(str(x))


def presentation(ring: RingDescriptor, gens: Sequence[int], relations=(), label: str = "M") -> GradedPresentation:
    """Build coker of the given relation columns (each a list with one entry
    per generator; strings are parsed).  Zero columns are dropped; the twist of
    each column is inferred from its nonzero entries."""
    gens = tuple(int(a) for a in gens)
    if any(a < 0 for a in gens):
        raise ValueError("generator twists must be non-negative")
    G = FreeModule(gens)
    cols, twists = [], []
    for k, col in enumerate(relations):
        if len(gens) == 1 and (isinstance(col, (str, Polynomial, int))):
            col = [col]
        col = [_as_poly(ring, x) for x in col]
        if len(col) != len(gens):
            raise ValueError(f"{label}: relation {k + 1} has {len(col)} entries for {len(gens)} generators")
        tw = None
        for i, g in enumerate(col):
            if g.is_zero():
                continue
            if not g.is_homogeneous():
                raise HomogeneityError(f"{label}: relation {k + 1}, entry {i + 1} is not homogeneous")
            t = g.degree + gens[i]
            if tw is None:
                tw = t
            elif t != tw:
                raise HomogeneityError(
                    f"{label}: relation {k + 1}, entry {i + 1} has degree {g.degree}, "
                    f"expected {tw - gens[i]}")
        if tw is None:
            continue
        cols.append(tuple(col))
        twists.append(tw)
    return GradedPresentation(G, ModuleMap.from_columns(FreeModule(tuple(twists)), G, cols, ring), label)


def free_presentation(ring: RingDescriptor, twists: Sequence[int] = (0,), label: str = "R") -> GradedPresentation:
    return presentation(ring, twists, (), label)


def quotient_module(ring: RingDescriptor, polys, label: str = "M", twist: int = 0) -> GradedPresentation:
    """The cyclic module R/(polys), generator in degree ``twist``."""
    return presentation(ring, (twist,), [[p] for p in polys], label)


def residue_field(ring: RingDescriptor, twist: int = 0, label: str = "k") -> GradedPresentation:
    return quotient_module(ring, [ring.var(x) for x in ring.variables], label, twist)


def direct_sum(p: GradedPresentation, q: GradedPresentation, ring: RingDescriptor,
               label: str | None = None) -> GradedPresentation:
    gens = p.generators.twists + q.generators.twists
    zero = ring.zero()
    cols = [tuple(c) + (zero,) * q.generators.rank for c in p.relations.columns()]
    cols += [(zero,) * p.generators.rank + tuple(c) for c in q.relations.columns()]
    return presentation(ring, gens, cols, label or f"{p.label}+{q.label}")


def tensor_presentation(p: GradedPresentation, q: GradedPresentation, ring: RingDescriptor,
                        label: str | None = None) -> GradedPresentation:
    """Presentation of p (x) q: generators e_i (x) f_k, relations rel (x) gen."""
    a, b = p.generators.twists, q.generators.twists
    gens = [x + y for x in a for y in b]
    zero = ring.zero()
    cols = []
    for col in p.relations.columns():
        for k in range(len(b)):
            c = [zero] * len(gens)
            for i in range(len(a)):
                c[i * len(b) + k] = col[i]
            cols.append(c)
    for col in q.relations.columns():
        for i in range(len(a)):
            c = [zero] * len(gens)
            for k in range(len(b)):
                c[i * len(b) + k] = col[k]
            cols.append(c)
    return presentation(ring, gens, cols, label or f"{p.label}(x){q.label}")


def minimize_presentation(p: GradedPresentation, ring: RingDescriptor) -> GradedPresentation:
    """Strip unit entries: a relation with a scalar entry at generator i makes
    that generator redundant; eliminate both.  Repeats until no unit remains."""
    gens = list(p.generators.twists)
    cols = [list(c) for c in p.relations.columns()]
    twists = list(p.relations.source.twists)
    while True:
        hit = None
        for j, col in enumerate(cols):
            for i, g in enumerate(col):
                if not g.is_zero() and twists[j] == gens[i]:
                    hit = (i, j)
                    break
            if hit:
                break
        if hit is None:
            break
        i, j = hit
        piv = cols[j]
        u_inv = ring.field.inv(piv[i].constant_term())
        new_cols, new_tw = [], []
        for k, col in enumerate(cols):
            if k == j:
                continue
            if not col[i].is_zero():
                f = col[i] * u_inv
                col = [x - f * y for x, y in zip(col, piv)]
            col = col[:i] + col[i + 1:]
            if any(not x.is_zero() for x in col):
                new_cols.append(col)
                new_tw.append(twists[k])
        cols, twists = new_cols, new_tw
        gens = gens[:i] + gens[i + 1:]
    G = FreeModule(tuple(gens))
    return GradedPresentation(
        G, ModuleMap.from_columns(FreeModule(tuple(twists)), G, cols, ring), p.label)


# degreewise realization --------------------------------------------------

def column_vectors(columns, source_twists, target: FreeModule, ring: RingDescriptor, d: int) -> list[SparseVec]:
    """Image in ``target``'s degree-d piece of R_{d-b_j} * column_j, for each
    column j, concatenated in coordinate order."""
    qr = realization(ring)
    offs = target.offsets(ring, d)
    out: list[SparseVec] = []
    for col, b in zip(columns, source_twists):
        n = qr.dim(d - b)
        if n == 0:
            continue
        blocks = []
        for (off, tn), g in zip(offs, col):
            if g.is_zero() or tn == 0:
                continue
            blocks.append((off, qr.mult(g, d - b)))
        for s in range(n):
            vec: SparseVec = {}
            for off, m in blocks:
                for k, x in m[s].items():
                    vec[off + k] = x
            out.append(vec)
    return out


def piece_columns(fmap: ModuleMap, ring: RingDescriptor, d: int) -> list[SparseVec]:
    return column_vectors(fmap.columns(), fmap.source.twists, fmap.target, ring, d)


def piece_matrix(fmap: ModuleMap, ring: RingDescriptor, d: int) -> Matrix:
    """The k-linear map (source)_d -> (target)_d."""
    return Matrix.from_sparse_columns(piece_columns(fmap, ring, d),
                                      fmap.target.piece_dim(ring, d), ring.field)


@dataclass
class ModulePiece:
    degree: int
    ambient_dim: int
    basis: list[int]  # free coordinates forming a basis of the quotient
    pos: dict[int, int]
    normal_forms: dict[int, SparseVec]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def project(self, vec: SparseVec, p: int) -> SparseVec:
        out: SparseVec = {}
        for q, a in vec.items():
            k = self.pos.get(q)
            if k is not None:
                x = out.get(k, 0) + a
                x = x % p if p else x
                if x:
                    out[k] = x
                else:
                    out.pop(k, None)
                continue
            for k, b in self.normal_forms[q].items():
                x = out.get(k, 0) + a * b
                x = x % p if p else x
                if x:
                    out[k] = x
                else:
                    out.pop(k, None)
        return out


class ModuleRealization:
    """Degree pieces of coker(relations) and multiplication maps between them."""

    def __init__(self, pres: GradedPresentation, ring: RingDescriptor):
        self.pres = pres
        self.ring = ring
        self._pieces: dict[int, ModulePiece] = {}
        self._mult: dict = {}
        self._lock = threading.Lock()

    def piece(self, e: int) -> ModulePiece:
        pc = self._pieces.get(e)
        if pc is None:
            pc = self._build(e)
            with self._lock:
                pc = self._pieces.setdefault(e, pc)
        return pc

    def dim(self, e: int) -> int:
        return self.piece(e).dim

    def _build(self, e: int) -> ModulePiece:
        G = self.pres.generators
        n = G.piece_dim(self.ring, e)
        rels = piece_columns(self.pres.relations, self.ring, e) if n else []
        ech = Echelon(self.ring.field, rels)
        red = ech.make_reduced()
        basis = [q for q in range(n) if q not in red]
        pos = {q: k for k, q in enumerate(basis)}
        neg = self.ring.field.neg
        nfs = {pc: {pos[q]: neg(a) for q, a in r.items() if q != pc} for pc, r in red.items()}
        return ModulePiece(e, n, basis, pos, nfs)

    def mult(self, g: Polynomial, e: int) -> list[SparseVec]:
        """Columns of multiplication by homogeneous g: N_e -> N_{e + deg g}."""
        key = (g, e)
        cols = self._mult.get(key)
        if cols is not None:
            return cols
        src = self.piece(e)
        if src.dim == 0:
            cols = []
        elif g.is_zero():
            cols = [{} for _ in range(src.dim)]
        else:
            f = e + g.degree
            tgt = self.piece(f)
            if tgt.dim == 0:
                cols = [{} for _ in range(src.dim)]
            else:
                qr = realization(self.ring)
                G = self.pres.generators
                s_offs = G.offsets(self.ring, e)
                t_offs = G.offsets(self.ring, f)
                owner = []
                for i, (off, n) in enumerate(s_offs):
                    owner.extend((i, off) for _ in range(n))
                p = self.ring.field.p
                cols = []
                for q in src.basis:
                    i, off = owner[q]
                    col = qr.mult(g, e - G.twists[i])[q - off]
                    toff = t_offs[i][0]
                    cols.append(tgt.project({toff + k: x for k, x in col.items()}, p))
        self._mult[key] = cols
        return cols


_MODULE_CACHE: dict = {}


def module_realization(pres: GradedPresentation, ring: RingDescriptor) -> ModuleRealization:
    key = (pres, ring)
    mr = _MODULE_CACHE.get(key)
    if mr is None:
        mr = _MODULE_CACHE.setdefault(key, ModuleRealization(pres, ring))
    return mr


def module_piece_dim(p: GradedPresentation, ring: RingDescriptor, d: int) -> int:
    """dim_k of the degree-d piece of coker(relations)."""
    return module_realization(p, ring).dim(d)


def residue_twist(p: GradedPresentation, ring: RingDescriptor) -> int | None:
    """If p presents k(-a), return a; otherwise None."""
    q = minimize_presentation(p, ring)
    if q.generators.rank != 1:
        return None
    a = q.generators.twists[0]
    mr = module_realization(q, ring)
    if mr.dim(a) == 1 and mr.dim(a + 1) == 0:
        return a
    return None


# syzygies -----------------------------------------------------------------

def _grow_generators(ring, source: FreeModule, d: int, img: Echelon, candidates,
                     target_rank: int | None, twists: list, cols: list):
    """Greedily add candidate vectors (degree-d elements of ``source``) that
    are independent of ``img``; record them as new generators."""
    for vec in candidates:
        if target_rank is not None and img.rank >= target_rank:
            break
        if img.add(vec):
            twists.append(d)
            cols.append(source.vector_to_column(ring, d, vec))


def kernel_step(fmap: ModuleMap, ring: RingDescriptor, D: int) -> ModuleMap:
    """Minimal generators of ker(fmap) through internal degree D.

    Returns g: G -> source with image(g)_d = ker(fmap)_d for all d <= D; the
    generators found at degree d are kernel vectors (in basis order) that are
    independent of the image of the generators of lower degree.
    """
    src = fmap.source
    if src.rank and D < max(src.twists):
        raise DegreeBoundExceeded(
            f"internal degree bound {D} is below a source twist {max(src.twists)}",
            suggested_D=max(src.twists))
    field = ring.field
    twists: list[int] = []
    cols: list[tuple[Polynomial, ...]] = []
    if not src.rank:
        return ModuleMap(FreeModule(()), src, tuple(() for _ in range(src.rank)))
    for d in range(min(src.twists), D + 1):
        vecs = piece_columns(fmap, ring, d)
        nsrc = len(vecs)
        if nsrc == 0:
            continue
        rows = transpose_sparse(vecs, fmap.target.piece_dim(ring, d))
        ech = Echelon(field, rows)
        kdim = nsrc - ech.rank
        if kdim == 0:
            continue
        img = Echelon(field, column_vectors(cols, twists, src, ring, d))
        if img.rank == kdim:
            continue
        red = ech.make_reduced()
        free = [j for j in range(nsrc) if j not in red]
        kernel = {f: {f: field.one} for f in free}
        for pc, r in red.items():
            for f, a in r.items():
                if f != pc:
                    kernel[f][pc] = field.neg(a)
        _grow_generators(ring, src, d, img, (kernel[f] for f in free), kdim, twists, cols)
        assert img.rank == kdim
    return ModuleMap.from_columns(FreeModule(tuple(twists)), src, cols, ring)


def minimal_image(fmap: ModuleMap, ring: RingDescriptor, D: int) -> ModuleMap:
    """Minimal generators (through degree D) of the image of ``fmap``, as a map
    into its target.  Used to minimize a presentation's relations."""
    tgt = fmap.target
    by_degree: dict[int, list[int]] = {}
    for j, b in enumerate(fmap.source.twists):
        if b <= D:
            by_degree.setdefault(b, []).append(j)
    twists: list[int] = []
    cols: list[tuple[Polynomial, ...]] = []
    for d in sorted(by_degree):
        img = Echelon(ring.field, column_vectors(cols, twists, tgt, ring, d))
        cand = column_vectors([fmap.column(j) for j in by_degree[d]], [d] * len(by_degree[d]), tgt, ring, d)
        _grow_generators(ring, tgt, d, img, cand, None, twists, cols)
    return ModuleMap.from_columns(FreeModule(tuple(twists)), tgt, cols, ring)
