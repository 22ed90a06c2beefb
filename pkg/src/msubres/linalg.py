"""Exact dense linear algebra over ZZ[vars] and QQ.

Provides fraction-free determinants, rational rank/kernel computations, and
the gcd of maximal minors that realizes subresultants.  Matrices whose
entries are single coefficient variables (the multiplication-map case) go
through a packed-exponent dynamic program that produces all maximal minors
in one sweep.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence, Union

from .polyring import (
    Polynomial,
    VarUniverse,
    divide_qq,
    exact_divide,
    gcd_multivariate,
)

Entry = Union[int, Fraction, Polynomial]


class NonSquareError(ValueError):
    pass


class SymbolicEntryError(TypeError):
    pass


class GenericRankError(ArithmeticError):
    """The matrix is rank deficient even for random specializations."""


_PRECHECK_SEED = 0xBA2E155


class ExactMatrix:
    """Rectangular labeled matrix with exact scalar or polynomial entries."""

    __slots__ = ("entries", "row_labels", "col_labels", "universe")

    def __init__(
        self,
        entries: Sequence[Sequence[Entry]],
        row_labels: Optional[Sequence] = None,
        col_labels: Optional[Sequence] = None,
        universe: Optional[VarUniverse] = None,
    ):
        self.entries = [list(row) for row in entries]
        nrows = len(self.entries)
        ncols = len(self.entries[0]) if nrows else 0
        for row in self.entries:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
        self.row_labels = list(row_labels) if row_labels is not None else list(range(nrows))
        self.col_labels = list(col_labels) if col_labels is not None else list(range(ncols))
        if len(self.row_labels) != nrows or len(set(map(repr, self.row_labels))) != nrows:
            raise ValueError("row labels must be unique and match the row count")
        if len(self.col_labels) != ncols or len(set(map(repr, self.col_labels))) != ncols:
            raise ValueError("column labels must be unique and match the column count")
        if universe is None:
            for row in self.entries:
                for e in row:
                    if isinstance(e, Polynomial):
                        universe = e.universe
                        break
                if universe is not None:
                    break
        self.universe = universe
        if universe is not None:
            for row in self.entries:
                for e in row:
                    if isinstance(e, Polynomial) and e.universe != universe:
                        raise ValueError("matrix entries live in different universes")

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def is_scalar(self) -> bool:
        return all(
            not isinstance(e, Polynomial) for row in self.entries for e in row
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(
            [[self.entries[i][j] for j in cols] for i in rows],
            row_labels=[self.row_labels[i] for i in rows],
            col_labels=[self.col_labels[j] for j in cols],
            universe=self.universe,
        )


def _entry_is_zero(e: Entry) -> bool:
    if isinstance(e, Polynomial):
        return e.is_zero()
    return e == 0


def _to_poly(e: Entry, universe: VarUniverse) -> Polynomial:
    if isinstance(e, Polynomial):
        return e
    return Polynomial.constant(universe, e)


# -- determinants -----------------------------------------------------------


def _det_scalar_bareiss(rows: list[list]) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    m = [[Fraction(e) for e in row] for row in rows]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            m[i][k] = Fraction(0)
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def bareiss_determinant(m: ExactMatrix) -> Entry:
    """Exact determinant by two-step fraction-free elimination."""
    if m.nrows != m.ncols:
        raise NonSquareError(f"matrix is {m.nrows}x{m.ncols}")
    n = m.nrows
    if m.is_scalar():
        d = _det_scalar_bareiss(m.entries)
        return int(d) if d.denominator == 1 else d
    universe = m.universe
    if n == 0:
        return 1
    rows = [[_to_poly(e, universe) for e in row] for row in m.entries]
    sign = 1
    prev = Polynomial.constant(universe, 1)
    for k in range(n - 1):
        if rows[k][k].is_zero():
            pivot_row = None
            best = None
            for i in range(k + 1, n):
                if not rows[i][k].is_zero():
                    size = len(rows[i][k])
                    if best is None or size < best:
                        best = size
                        pivot_row = i
            if pivot_row is None:
                return Polynomial.zero(universe)
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            sign = -sign
        piv = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = rows[i][j] * piv - rows[i][k] * rows[k][j]
                rows[i][j] = exact_divide(num, prev) if not prev.is_constant() or prev.constant_value() != 1 else num
            rows[i][k] = Polynomial.zero(universe)
        prev = piv
    det = rows[n - 1][n - 1]
    return det if sign == 1 else -det


def cofactor_determinant(m: ExactMatrix) -> Entry:
    """Expansion determinant with memoization over column subsets (oracle)."""
    if m.nrows != m.ncols:
        raise NonSquareError(f"matrix is {m.nrows}x{m.ncols}")
    n = m.nrows
    if n == 0:
        return 1
    universe = m.universe
    scalar = m.is_scalar()

    def zero():
        return 0 if scalar else Polynomial.zero(universe)

    memo = {0: 1 if scalar else Polynomial.constant(universe, 1)}
    # level k: subsets of k used columns, minors of the first k rows
    for k in range(n):
        new: dict[int, Entry] = {}
        for mask, val in memo.items():
            if _entry_is_zero(val):
                continue
            seen = 0
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    seen += 1
                    continue
                e = m.entries[k][j]
                if _entry_is_zero(e):
                    continue
                # new inversions: used columns above j, i.e. k - seen of them
                contrib = val * e if (k - seen) % 2 == 0 else -(val * e)
                key = mask | bit
                acc = new.get(key)
                new[key] = contrib if acc is None else acc + contrib
        memo = new
        if not memo:
            return zero()
    return memo.get((1 << n) - 1, zero())


# -- packed single-variable fast path ---------------------------------------


def _single_var_codes(m: ExactMatrix) -> Optional[list[list]]:
    """Per-entry (var_index, sign) when every entry is 0 or +-variable."""
    out = []
    for row in m.entries:
        orow = []
        for e in row:
            if not isinstance(e, Polynomial):
                if e == 0:
                    orow.append(None)
                    continue
                return None
            if e.is_zero():
                orow.append(None)
                continue
            if len(e.terms) != 1:
                return None
            exp, c = next(iter(e.terms.items()))
            if sum(exp) != 1 or c not in (1, -1):
                return None
            orow.append((exp.index(1), c))
        out.append(orow)
    return out


def _packed_minors(m: ExactMatrix):
    """All maximal minors for an r x c matrix with single-variable entries.

    Returns {frozenset(columns): Polynomial}.  Only used for c - r <= 1;
    larger gaps go through per-subset determinants.
    """
    codes = _single_var_codes(m)
    assert codes is not None
    r, c = m.nrows, m.ncols
    universe = m.universe
    nvars = universe.n
    bits = max(1, r.bit_length() + 1)

    def pack(var: int) -> int:
        return 1 << (bits * var)

    # states: dict columns-used-bitmask -> dict packed-monomial -> int coeff
    states: dict[int, dict[int, int]] = {0: {0: 1}}
    for k in range(r):
        row = codes[k]
        nz = [(j, row[j]) for j in range(c) if row[j] is not None]
        new: dict[int, dict[int, int]] = {}
        for mask, poly in states.items():
            for j, (var, sgn) in nz:
                bit = 1 << j
                if mask & bit:
                    continue
                par = bin(mask & (bit - 1)).count("1")
                s = sgn if par % 2 == 0 else -sgn
                shift = pack(var)
                key = mask | bit
                acc = new.get(key)
                if acc is None:
                    acc = {}
                    new[key] = acc
                if s == 1:
                    for mono, cf in poly.items():
                        mk = mono + shift
                        v = acc.get(mk, 0) + cf
                        if v:
                            acc[mk] = v
                        else:
                            del acc[mk]
                else:
                    for mono, cf in poly.items():
                        mk = mono + shift
                        v = acc.get(mk, 0) - cf
                        if v:
                            acc[mk] = v
                        else:
                            del acc[mk]
        states = new
        if not states:
            break

    fieldmask = (1 << bits) - 1

    def unpack(mono: int) -> tuple[int, ...]:
        exp = [0] * nvars
        i = 0
        while mono:
            exp[i] = mono & fieldmask
            mono >>= bits
            i += 1
        return tuple(exp)

    out = {}
    for mask, poly in states.items():
        cols = frozenset(j for j in range(c) if mask & (1 << j))
        p = Polynomial(universe, {unpack(mono): cf for mono, cf in poly.items()})
        # global column indexing counts crossings with omitted columns once
        # per pick above them; correct the parity per omitted column
        omitted = [j for j in range(c) if j not in cols]
        flips = sum(len([x for x in cols if x > j]) for j in omitted)
        if flips % 2:
            p = -p
        out[cols] = p
    return out


def determinant(m: ExactMatrix) -> Entry:
    """Determinant with method dispatch: scalars and symbolic matrices."""
    if m.nrows != m.ncols:
        raise NonSquareError(f"matrix is {m.nrows}x{m.ncols}")
    if m.is_scalar() or m.nrows <= 4:
        return bareiss_determinant(m)
    if _single_var_codes(m) is not None:
        minors = _packed_minors(m)
        # a structurally zero determinant never reaches the full column mask
        full = frozenset(range(m.ncols))
        return minors.get(full, Polynomial.zero(m.universe))
    if m.nrows <= 8:
        return cofactor_determinant(m)
    return bareiss_determinant(m)


# -- rational rank and kernel ----------------------------------------------


def _require_scalar(m: ExactMatrix):
    if not m.is_scalar():
        raise SymbolicEntryError("operation requires constant rational entries")


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    m = [row[:] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank_over_Q(m: ExactMatrix) -> int:
    _require_scalar(m)
    if m.nrows == 0 or m.ncols == 0:
        return 0
    rows = [[Fraction(e) for e in row] for row in m.entries]
    _, pivots = _rref(rows)
    return len(pivots)


def kernel_basis_over_Q(m: ExactMatrix) -> list[list[int]]:
    """Right-kernel basis, each vector scaled to integers with content 1.

    Vectors are ordered by their free-column pivot structure, which makes
    the result deterministic.
    """
    _require_scalar(m)
    ncols = m.ncols
    if ncols == 0:
        return []
    if m.nrows == 0:
        rows = [[Fraction(0)] * ncols]
    else:
        rows = [[Fraction(e) for e in row] for row in m.entries]
    red, pivots = _rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            vec[pc] = -red[ri][fc]
        den = 1
        for v in vec:
            den = den * v.denominator // math.gcd(den, v.denominator)
        ints = [int(v * den) for v in vec]
        g = math.gcd(*(abs(x) for x in ints))
        lead = next(x for x in ints if x)
        sgn = 1 if lead > 0 else -1
        basis.append([sgn * x // g for x in ints])
    return basis


# -- gcd of maximal minors --------------------------------------------------


def _generic_rank_precheck(m: ExactMatrix, rng: random.Random) -> bool:
    """Rational rank at one random integer specialization of all variables."""
    if m.is_scalar():
        return rank_over_Q(m) == m.nrows
    universe = m.universe
    point = {name: rng.randint(-10**6, 10**6) for name in universe.names}
    rows = []
    for row in m.entries:
        rows.append(
            [
                Fraction(e.evaluate(point)) if isinstance(e, Polynomial) else Fraction(e)
                for e in row
            ]
        )
    _, pivots = _rref(rows)
    return len(pivots) == m.nrows


def _is_unit(p: Polynomial) -> bool:
    return p.is_constant() and abs(p.constant_value()) == 1


def gcd_of_maximal_minors(m: ExactMatrix, precheck: bool = True) -> Polynomial:
    """Sign-normalized gcd of all (nrows x nrows) minors, content retained."""
    r, c = m.nrows, m.ncols
    if r > c:
        raise ValueError("need rows <= columns")
    universe = m.universe
    if universe is None:
        raise SymbolicEntryError("gcd of minors is a polynomial operation")
    one = Polynomial.constant(universe, 1)
    if r == 0:
        return one
    if precheck and not _generic_rank_precheck(m, random.Random(_PRECHECK_SEED)):
        raise GenericRankError("matrix is rank deficient at a random specialization")

    minors: list[Polynomial]
    if c - r <= 1 and _single_var_codes(m) is not None and r >= 5:
        packed = _packed_minors(m)
        keys = sorted(packed, key=lambda cols: tuple(sorted(cols)))
        minors = [packed[k] for k in keys]
    else:
        minors = []
        for cols in combinations(range(c), r):
            sub = m.submatrix(range(r), cols)
            minors.append(_to_poly(determinant(sub), universe))

    g = Polynomial.zero(universe)
    for minor in minors:
        if minor.is_zero():
            continue
        if not g.is_zero() and divide_qq(minor, g) is not None:
            # the running gcd already divides this minor over QQ; refine the
            # integer part only
            quo = divide_qq(minor, g)
            if all(isinstance(cf, int) or cf.denominator == 1 for cf in quo.terms.values()):
                continue
        g = gcd_multivariate(g, minor)
        if _is_unit(g):
            break
    if g.is_zero():
        raise GenericRankError("all maximal minors vanish identically")
    return g.sign_normalized()
