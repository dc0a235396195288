"""Independent reference computations used to cross-check the engine."""

from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, lcm

import sympy


def bareiss_rank(rows, p=0):
    """Rank by fraction-free (Bareiss) elimination, over Z (p = 0) or Z/p."""
    if p:
        M = [[int(x) % p for x in r] for r in rows]
    else:
        M = []
        for r in rows:
            r = [Fraction(x) for x in r]
            den = lcm(*(x.denominator for x in r)) if r else 1
            M.append([int(x * den) for x in r])
    if not M or not M[0]:
        return 0
    m, n = len(M), len(M[0])
    rank, prev = 0, 1
    for col in range(n):
        piv = next((i for i in range(rank, m) if M[i][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        a = M[rank][col]
        for i in range(rank + 1, m):
            b = M[i][col]
            for j in range(n):
                x = a * M[i][j] - b * M[rank][j]
                if p:
                    M[i][j] = x * pow(prev, -1, p) % p
                else:
                    assert x % prev == 0
                    M[i][j] = x // prev
        prev = a
        rank += 1
    return rank


def quotient_dims(polys, names, D):
    """dim_k (k[names]/(polys))_d for d <= D via a sympy Groebner basis."""
    gens = sympy.symbols(names)
    if not polys:
        return [comb(len(names) - 1 + d, d) for d in range(D + 1)]
    G = sympy.groebner([sympy.sympify(f, locals=dict(zip(names, gens))) for f in polys],
                       *gens, order="grevlex")
    leads = [sympy.Poly(g, *gens).monoms(order="grevlex")[0] for g in G.exprs]
    out = []
    for d in range(D + 1):
        count = 0
        for combo in combinations_with_replacement(range(len(names)), d):
            e = [0] * len(names)
            for i in combo:
                e[i] += 1
            if not any(all(a >= b for a, b in zip(e, lm)) for lm in leads):
                count += 1
        out.append(count)
    return out


def kunneth_tor_k_k(v, J, D):
    """dim Tor_j(k, k)_i over Q[x_1..x_v]/(x_1^2, ..., x_v^2): the tensor
    product of v copies of the one-variable answer k(-j) in every degree j."""
    out = []
    for j in range(J):
        row = [0] * (D + 1)
        if j <= D:
            row[j] = comb(j + v - 1, v - 1)
        out.append(row)
    return out
