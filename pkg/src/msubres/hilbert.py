"""Hilbert functions of complete intersections and the derived thresholds.

H_{d_1..d_s}(t) is the coefficient of z^t in prod_i (1 - z^{d_i}) / (1-z)^n.
From it we derive the critical degree rho, the point count a(nu), the
expected coefficient-degrees of subresultants, and the nonvanishing and
irreducibility bounds on nu.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence


@dataclass(frozen=True)
class DegreeVector:
    """s degrees of homogeneous polynomials in n variables, s <= n."""

    n: int
    degrees: tuple[int, ...]

    def __init__(self, n: int, degrees: Sequence[int]):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "degrees", tuple(degrees))
        if self.n < 1:
            raise ValueError("need at least one variable")
        if not 1 <= self.s <= self.n:
            raise ValueError(f"need 1 <= s <= n, got s={self.s}, n={self.n}")
        if any(d < 1 for d in self.degrees):
            raise ValueError("all degrees must be >= 1")

    @property
    def s(self) -> int:
        return len(self.degrees)

    @property
    def is_sorted_descending(self) -> bool:
        return all(a >= b for a, b in zip(self.degrees, self.degrees[1:]))

    def sorted_descending(self) -> tuple["DegreeVector", tuple[int, ...]]:
        """Descending copy plus the permutation mapping new index -> old."""
        perm = sorted(range(self.s), key=lambda i: (-self.degrees[i], i))
        return DegreeVector(self.n, tuple(self.degrees[i] for i in perm)), tuple(perm)

    @property
    def rho(self) -> int:
        return sum(d - 1 for d in self.degrees)

    def drop(self, i: int) -> "DegreeVector":
        """Degree vector with the i-th entry removed (same n)."""
        if not 0 <= i < self.s:
            raise IndexError("degree index out of range")
        return DegreeVector(self.n, self.degrees[:i] + self.degrees[i + 1 :])


@dataclass(frozen=True)
class Thresholds:
    rho: int
    nonvanish_bound: int  # nonzero subresultants for nu strictly above this
    irred_bound: int      # irreducible subresultants for nu strictly above this
    nu_min: int           # inclusive range of admissible nu
    nu_max: int
    a_by_nu: dict[int, int] = field(hash=False)


def hilbert_value(dv: DegreeVector, t: int) -> int:
    """Coefficient of z^t in prod(1 - z^{d_i}) / (1-z)^n, 0 for t < 0."""
    if t < 0:
        return 0
    n = dv.n
    # expand the numerator exactly, then convolve with binomial coefficients
    num = [1]
    for d in dv.degrees:
        new = num + [0] * d
        for j, c in enumerate(num):
            new[j + d] -= c
        num = new
    total = 0
    for j, c in enumerate(num):
        if c and t - j >= 0:
            total += c * math.comb(t - j + n - 1, n - 1)
    return total


def a_value(dv: DegreeVector, nu: int) -> int:
    """Number of residual base points: C(rho - nu + n - 1, n - 1)."""
    k = dv.rho - nu + dv.n - 1
    if k < 0:
        return 0
    return math.comb(k, dv.n - 1)


def thresholds(dv: DegreeVector) -> Thresholds:
    if dv.s != dv.n:
        raise ValueError("thresholds require as many polynomials as variables")
    rho = dv.rho
    dmin = min(dv.degrees)
    nonvanish = sum(dv.degrees) - dv.n - dmin
    irred = rho - dmin + 1
    nu_min = rho - dmin + 1
    nu_max = rho
    a_by_nu = {nu: a_value(dv, nu) for nu in range(nu_min, nu_max + 1)}
    return Thresholds(
        rho=rho,
        nonvanish_bound=nonvanish,
        irred_bound=irred,
        nu_min=nu_min,
        nu_max=nu_max,
        a_by_nu=a_by_nu,
    )


def expected_multidegree(dv: DegreeVector, nu: int, i: int) -> int:
    """Degree of the subresultant in the coefficients of the i-th polynomial.

    Both the product formula d_1..d_n/d_i - a(nu) and the Hilbert-function
    form H_{d_1..d_{i-1},d_{i+1}..d_n}(nu - d_i) are evaluated; they must
    agree, and the common value is returned.
    """
    if dv.s != dv.n:
        raise ValueError("expected_multidegree requires s == n")
    if not 0 <= i < dv.n:
        raise IndexError("polynomial index out of range")
    dmin = min(dv.degrees)
    if nu < dv.rho - dmin + 1:
        raise ValueError("nu below the admissible range")
    prod = 1
    for d in dv.degrees:
        prod *= d
    formula = prod // dv.degrees[i] - a_value(dv, nu)
    hform = hilbert_value(dv.drop(i), nu - dv.degrees[i])
    if formula != hform:
        raise AssertionError(
            f"degree formulas disagree: product form {formula}, Hilbert form {hform}"
        )
    return formula


def ses_identity_check(dv: DegreeVector, i: int, t: int) -> bool:
    """Multiplication-by-f_i identity between the two Hilbert functions."""
    if dv.s != dv.n:
        raise ValueError("ses_identity_check requires s == n")
    sub = dv.drop(i)
    lhs = hilbert_value(sub, t - dv.degrees[i])
    rhs = hilbert_value(sub, t) - hilbert_value(dv, t)
    return lhs == rhs
