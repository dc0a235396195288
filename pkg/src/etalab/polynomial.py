"""Sparse multivariate polynomials over a FieldSpec, plus the shared text syntax.

All variables have degree 1.  Monomials are exponent tuples; the fixed
monomial order is graded-lexicographic with the first variable largest.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

from .errors import ParseError, UnknownVariable
from .linalg import RATIONALS, FieldSpec

Monomial = tuple


@lru_cache(maxsize=None)
def monomial_basis(v: int, d: int) -> tuple[Monomial, ...]:
    """All degree-``d`` monomials in ``v`` variables, graded-lex descending.

    >>> monomial_basis(2, 2)
    ((2, 0), (1, 1), (0, 2))
    """
    if d < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(v), d):
        e = [0] * v
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(v: int, d: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomial_basis(v, d))}


def _grlex_key(m: Monomial):
    return (-sum(m), tuple(-e for e in m))


class Polynomial:
    """Immutable sparse polynomial: ``terms`` maps exponent tuples to nonzero
    coefficients in ``field``."""

    __slots__ = ("terms", "nvars", "field", "_hash")

    def __init__(self, terms: dict, nvars: int, field: FieldSpec = RATIONALS):
        self.terms = terms
        self.nvars = nvars
        self.field = field
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def from_dict(cls, terms: dict, nvars: int, field: FieldSpec = RATIONALS) -> "Polynomial":
        clean = {}
        for m, a in terms.items():
            if len(m) != nvars:
                raise ValueError("exponent tuple has wrong length")
            a = field(a)
            if a:
                clean[tuple(m)] = a
        return cls(clean, nvars, field)

    @classmethod
    def zero(cls, nvars: int, field: FieldSpec = RATIONALS) -> "Polynomial":
        return cls({}, nvars, field)

    @classmethod
    def constant(cls, c, nvars: int, field: FieldSpec = RATIONALS) -> "Polynomial":
        return cls.from_dict({(0,) * nvars: c}, nvars, field)

    @classmethod
    def one(cls, nvars: int, field: FieldSpec = RATIONALS) -> "Polynomial":
        return cls.constant(1, nvars, field)

    @classmethod
    def variable(cls, i: int, nvars: int, field: FieldSpec = RATIONALS) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): field.one}, nvars, field)

    @classmethod
    def monomial(cls, exps: Monomial, nvars: int, field: FieldSpec = RATIONALS,
                 coeff=1) -> "Polynomial":
        return cls.from_dict({tuple(exps): coeff}, nvars, field)

    # queries ------------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int | None:
        """Total degree; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def coefficient(self, m: Monomial):
        return self.terms.get(tuple(m), self.field.zero)

    def constant_term(self):
        return self.coefficient((0,) * self.nvars)

    def change_field(self, field: FieldSpec) -> "Polynomial":
        if field == self.field:
            return self
        return Polynomial.from_dict(
            {m: self.field.to_fraction(a) for m, a in self.terms.items()}, self.nvars, field)

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars or self.field != other.field:
            raise ValueError("polynomials live in different rings")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(other, self.nvars, self.field)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        p = self.field.p
        out = dict(self.terms)
        for m, a in other.terms.items():
            x = out.get(m)
            x = a if x is None else ((x + a) % p if p else x + a)
            if x:
                out[m] = x
            else:
                out.pop(m, None)
        return Polynomial(out, self.nvars, self.field)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: self.field.neg(a) for m, a in self.terms.items()},
                          self.nvars, self.field)

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = self.field(other)
            if not c:
                return Polynomial.zero(self.nvars, self.field)
            return Polynomial({m: self.field.mul(a, c) for m, a in self.terms.items()},
                              self.nvars, self.field)
        self._check(other)
        p = self.field.p
        out: dict = {}
        for m1, a1 in self.terms.items():
            for m2, a2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                x = out.get(m, 0) + a1 * a2
                if p:
                    x %= p
                if x:
                    out[m] = x
                else:
                    out.pop(m, None)
        return Polynomial(out, self.nvars, self.field)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.one(self.nvars, self.field)
        for _ in range(k):
            out = out * self
        return out

    def mul_monomial(self, mono: Monomial) -> "Polynomial":
        return Polynomial({tuple(x + y for x, y in zip(m, mono)): a
                           for m, a in self.terms.items()}, self.nvars, self.field)

    def derivative(self, i: int) -> "Polynomial":
        out = {}
        for m, a in self.terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                x = self.field.mul(a, self.field(m[i]))
                if x:
                    out[tuple(e)] = x
        return Polynomial(out, self.nvars, self.field)

    # identity -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return (self.nvars == other.nvars and self.field == other.field
                    and self.terms == other.terms)
        if not self.terms:
            return other == 0
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, self.field, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]))

    def format(self, names) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, a in self.sorted_terms():
            c = self.field.to_fraction(a)
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            sign = "-" if c < 0 else "+"
            c = abs(c)
            if not factors:
                body = str(c)
            elif c == 1:
                body = "*".join(factors)
            else:
                body = f"{c}*" + "*".join(factors)
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        names = [f"x{i}" for i in range(self.nvars)]
        return f"Polynomial({self.format(names)!r})"


# text syntax ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r} in {text!r}", column=pos + 1)
        if m.group(1):
            out.append(("num", int(m.group(1)), m.start(1)))
        elif m.group(2):
            out.append(("name", m.group(2), m.start(2)))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op, m.start(3)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, names, field: FieldSpec):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.names = {n: k for k, n in enumerate(names)}
        self.nvars = len(names)
        self.field = field

    def error(self, msg: str, pos: int | None = None):
        if pos is None:
            pos = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
        raise ParseError(f"{msg} in {self.text!r}", column=pos + 1)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.toks:
            self.error("empty polynomial")
        p = self.expr()
        if self.peek() is not None:
            self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Polynomial:
        sign = 1
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        acc = self.term() * sign
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.take()
                t = self.term()
                acc = acc + t if tok[1] == "+" else acc - t
            else:
                return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] == "*":
                self.take()
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> Polynomial:
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.take()
            e = self.take()
            if e is None or e[0] != "num":
                self.error("exponent must be a non-negative integer")
            base = base ** e[1]
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        if tok is None:
            self.error("unexpected end of input")
        kind, val, pos = tok
        if kind == "num":
            q = Fraction(val)
            nxt = self.peek()
            if nxt and nxt[0] == "op" and nxt[1] == "/":
                self.take()
                den = self.take()
                if den is None or den[0] != "num" or den[1] == 0:
                    self.error("bad rational literal", pos)
                q = Fraction(val, den[1])
            try:
                return Polynomial.constant(q, self.nvars, self.field)
            except ValueError as exc:
                self.error(str(exc), pos)
        if kind == "name":
            if val not in self.names:
                raise UnknownVariable(f"unknown variable {val!r} in {self.text!r}", column=pos + 1)
            return Polynomial.variable(self.names[val], self.nvars, self.field)
        if val == "(":
            p = self.expr()
            close = self.take()
            if close is None or close[1] != ")":
                self.error("missing ')'")
            return p
        self.error(f"unexpected token {val!r}", pos)


def parse_polynomial(text: str, names, field: FieldSpec = RATIONALS) -> Polynomial:
    """Parse e.g. ``"x*u + y*v"`` or ``"3/2*x^2"`` over the named variables."""
    return _Parser(str(text), list(names), field).parse()
