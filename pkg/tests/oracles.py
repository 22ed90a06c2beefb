"""Independent oracles used to pin golden values.

Everything here is deliberately naive: inclusion-exclusion instead of
series manipulation, permutation expansion instead of elimination, sympy
instead of the package's own factorization pipeline.  The point is that an
oracle shares no code path with the implementation it checks.
"""

import math
from fractions import Fraction
from itertools import combinations, permutations

import sympy


def hilbert_inclusion_exclusion(n, degrees, t):
    """dim of the degree-t quotient piece via inclusion-exclusion."""
    if t < 0:
        return 0
    total = 0
    for k in range(len(degrees) + 1):
        for sub in combinations(degrees, k):
            shift = t - sum(sub)
            if shift >= 0:
                total += (-1) ** k * math.comb(shift + n - 1, n - 1)
    return total


def permutation_determinant(rows):
    """Leibniz expansion; entries may be ints, Fractions, or ring elements."""
    n = len(rows)
    assert all(len(r) == n for r in rows)
    det = None
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = rows[0][perm[0]]
        for i in range(1, n):
            term = term * rows[i][perm[i]]
        if sign < 0:
            term = -term
        det = term if det is None else det + term
    return det


def sylvester_resultant(p_coeffs, q_coeffs):
    """Resultant of two binary forms given by coefficient lists.

    p_coeffs[i] is the coefficient of x1^(dp-i) * x2^i; entries can be ring
    elements.  Built as the permanent-free Leibniz determinant of the
    Sylvester matrix.
    """
    dp, dq = len(p_coeffs) - 1, len(q_coeffs) - 1
    size = dp + dq
    rows = []
    for i in range(dq):
        rows.append([0] * i + list(p_coeffs) + [0] * (size - dp - 1 - i))
    for i in range(dp):
        rows.append([0] * i + list(q_coeffs) + [0] * (size - dq - 1 - i))
    return permutation_determinant(rows)


def sympy_poly(p, symbols=None):
    """Convert a package Polynomial to a sympy expression."""
    if symbols is None:
        symbols = {nm: sympy.Symbol(nm) for nm in p.universe.names}
    expr = sympy.Integer(0)
    for exp, c in p.terms.items():
        term = sympy.Rational(c) if isinstance(c, Fraction) else sympy.Integer(c)
        for nm, e in zip(p.universe.names, exp):
            if e:
                term *= symbols[nm] ** e
        expr += term
    return expr


def sympy_factor_degrees(p):
    """Total degrees of the irreducible factors of p, with multiplicity."""
    _, factors = sympy.factor_list(sympy_poly(p))
    out = []
    for f, mult in factors:
        out.extend([sympy.total_degree(f)] * mult)
    return sorted(out)


def sympy_is_irreducible(p):
    _, factors = sympy.factor_list(sympy_poly(p))
    return len(factors) == 1 and factors[0][1] == 1


def classical_subresultant_coeffs(f_coeffs, g_coeffs, index):
    """Coefficient list of the index-th subresultant of two integer
    univariate polynomials (sympy PRS oracle), lowest degree first."""
    x = sympy.Symbol("x")
    f = sum(c * x**i for i, c in enumerate(f_coeffs))
    g = sum(c * x**i for i, c in enumerate(g_coeffs))
    seq = sympy.subresultants(f, g, x)
    for s in seq:
        if sympy.degree(s, x) == index:
            return [int(c) for c in reversed(sympy.Poly(s, x).all_coeffs())]
    return None
