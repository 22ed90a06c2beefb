"""Generic systems, multiplication-map matrices and subresultants.

The generic system has P_i = sum over |alpha| = d_i of c_{i,alpha} x^alpha
with one fresh coefficient variable per (i, alpha).  The subresultant for a
monomial set S in degree nu is realized as the sign-normalized gcd of the
maximal minors of the degree-nu multiplication-map matrix with the rows
indexed by S deleted.  S indexes DELETED rows: its span complements the
degree-nu part of the ideal inside the full degree-nu space.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .hilbert import DegreeVector, expected_multidegree, hilbert_value, thresholds
from .linalg import ExactMatrix, GenericRankError, gcd_of_maximal_minors, rank_over_Q
from .polyring import Polynomial, VarUniverse, grevlex_key, monomials_of_degree


class InvalidMonomialSetError(ValueError):
    pass


class NuOutOfRangeError(ValueError):
    pass


class MultidegreeMismatchError(AssertionError):
    """Computed subresultant degrees disagree with the degree formula."""


@dataclass(frozen=True)
class GenericSystem:
    dv: DegreeVector
    universe: VarUniverse
    polys: tuple[Polynomial, ...]

    @property
    def n(self) -> int:
        return self.dv.n

    def coefficient_group(self, i: int) -> str:
        return f"c{i + 1}"

    def coefficient_name(self, i: int, alpha: Sequence[int]) -> str:
        return f"c{i + 1}_" + "".join(str(e) for e in alpha)


@dataclass(frozen=True)
class MonomialSet:
    """Validated choice of H(nu) monomials of degree nu in the x variables."""

    nu: int
    monomials: tuple[tuple[int, ...], ...]  # x-exponent tuples, grevlex desc


@dataclass(frozen=True)
class MacaulayMap:
    nu: int
    matrix: ExactMatrix
    row_monomials: tuple[tuple[int, ...], ...]
    col_blocks: tuple[tuple[int, tuple[int, ...]], ...]  # (i, multiplier exp)


@dataclass(frozen=True)
class SubresultantResult:
    delta: Polynomial
    multidegrees: dict[str, int]
    content: int
    sign: int
    nu: int
    monomial_set: MonomialSet
    dv: DegreeVector
    in_range: bool
    is_zero: bool = False


def build_generic_system(n: int, degrees: Sequence[int]) -> GenericSystem:
    dv = DegreeVector(n, degrees)
    if dv.s != n:
        raise ValueError("need exactly n degrees")
    x_names = [f"x{i + 1}" for i in range(n)]
    names = list(x_names)
    groups: dict[str, list[str]] = {"x": list(x_names)}
    coeff_names: list[list[str]] = []
    for i, d in enumerate(dv.degrees):
        gnames = []
        for alpha in monomials_of_degree(n, d):
            nm = f"c{i + 1}_" + "".join(str(e) for e in alpha)
            gnames.append(nm)
            names.append(nm)
        groups[f"c{i + 1}"] = gnames
        coeff_names.append(gnames)
    universe = VarUniverse(names, groups)
    polys = []
    for i, d in enumerate(dv.degrees):
        terms = {}
        for alpha, nm in zip(monomials_of_degree(n, d), coeff_names[i]):
            exp = [0] * universe.n
            for j, e in enumerate(alpha):
                exp[j] = e
            exp[universe.index(nm)] = 1
            terms[tuple(exp)] = 1
        polys.append(Polynomial(universe, terms))
    return GenericSystem(dv=dv, universe=universe, polys=tuple(polys))


def x_monomials(sys: GenericSystem, degree: int) -> list[tuple[int, ...]]:
    """Degree-d monomials in the x variables, grevlex descending."""
    return monomials_of_degree(sys.n, degree)


def build_macaulay_map(sys: GenericSystem, nu: int) -> MacaulayMap:
    if nu < 0:
        raise ValueError("nu must be >= 0")
    n = sys.n
    rows = x_monomials(sys, nu)
    row_pos = {m: i for i, m in enumerate(rows)}
    col_blocks: list[tuple[int, tuple[int, ...]]] = []
    for i, d in enumerate(sys.dv.degrees):
        if nu - d < 0:
            continue
        for mprime in x_monomials(sys, nu - d):
            col_blocks.append((i, mprime))
    entries = [[0] * len(col_blocks) for _ in rows]
    for ci, (i, mprime) in enumerate(col_blocks):
        d = sys.dv.degrees[i]
        for alpha in monomials_of_degree(n, d):
            m = tuple(a + b for a, b in zip(alpha, mprime))
            var = Polynomial.variable(sys.universe, sys.coefficient_name(i, alpha))
            entries[row_pos[m]][ci] = var
    matrix = ExactMatrix(
        entries,
        row_labels=list(rows),
        col_labels=list(col_blocks),
        universe=sys.universe,
    )
    return MacaulayMap(
        nu=nu, matrix=matrix, row_monomials=tuple(rows), col_blocks=tuple(col_blocks)
    )


def validate_S(
    sys: GenericSystem, nu: int, S: Iterable[tuple[int, ...]]
) -> MonomialSet:
    monos = list(S)
    if len(set(monos)) != len(monos):
        raise InvalidMonomialSetError("duplicate monomials in S")
    for m in monos:
        if len(m) != sys.n:
            raise InvalidMonomialSetError(f"monomial {m} has wrong arity")
        if any(e < 0 for e in m):
            raise InvalidMonomialSetError(f"negative exponent in {m}")
        if sum(m) != nu:
            raise InvalidMonomialSetError(
                f"monomial {m} has degree {sum(m)}, expected {nu}"
            )
    required = hilbert_value(sys.dv, nu)
    if len(monos) != required:
        raise InvalidMonomialSetError(
            f"S has {len(monos)} monomials, required cardinality is {required}"
        )
    monos.sort(key=grevlex_key, reverse=True)
    return MonomialSet(nu=nu, monomials=tuple(monos))


_MONO_RE = re.compile(r"^([a-zA-Z]\w*)(?:\^(\d+))?$")


def parse_monomial_set(text: str, sys: GenericSystem, nu: int) -> MonomialSet:
    """Parse comma-separated monomials like ``x1^2*x2, x2^3``."""
    monos = []
    for pos, chunk in enumerate(text.split(","), start=1):
        chunk = chunk.strip()
        if not chunk:
            raise InvalidMonomialSetError(f"monomial #{pos}: empty entry")
        exp = [0] * sys.n
        for factor in chunk.split("*"):
            factor = factor.strip()
            m = _MONO_RE.match(factor)
            if not m:
                raise InvalidMonomialSetError(
                    f"monomial #{pos}: cannot parse factor {factor!r}"
                )
            name, power = m.group(1), int(m.group(2) or 1)
            try:
                idx = [f"x{i + 1}" for i in range(sys.n)].index(name)
            except ValueError:
                raise InvalidMonomialSetError(
                    f"monomial #{pos}: unknown variable {name!r}"
                ) from None
            exp[idx] += power
        if sum(exp) != nu:
            raise InvalidMonomialSetError(
                f"monomial #{pos} ({chunk!r}) has degree {sum(exp)}, expected {nu}"
            )
        monos.append(tuple(exp))
    return validate_S(sys, nu, monos)


def deleted_matrix(sys: GenericSystem, nu: int, S: MonomialSet) -> ExactMatrix:
    mm = build_macaulay_map(sys, nu)
    drop = set(S.monomials)
    keep = [i for i, m in enumerate(mm.row_monomials) if m not in drop]
    if len(keep) != len(mm.row_monomials) - len(S.monomials):
        raise InvalidMonomialSetError("S contains monomials outside degree nu")
    return mm.matrix.submatrix(keep, range(mm.matrix.ncols))


def subresultant(sys: GenericSystem, nu: int, S: MonomialSet) -> SubresultantResult:
    dv = sys.dv
    if not dv.is_sorted_descending:
        raise ValueError("degrees must be sorted descending")
    th = thresholds(dv)
    if nu > th.rho:
        raise NuOutOfRangeError(
            f"nu={nu} exceeds rho={th.rho}: this is the resultant case, "
            "which is out of scope"
        )
    in_range = th.nu_min <= nu <= th.nu_max
    if S.nu != nu:
        raise InvalidMonomialSetError("monomial set was validated for a different nu")
    mat = deleted_matrix(sys, nu, S)
    if mat.nrows > mat.ncols:
        return _zero_result(sys, nu, S, in_range)
    if mat.nrows == 0:
        delta = Polynomial.constant(sys.universe, 1)
    else:
        try:
            delta = gcd_of_maximal_minors(mat)
        except GenericRankError:
            return _zero_result(sys, nu, S, in_range)
    degrees, homogeneous = delta.multidegree_by_group()
    degrees = {g: d for g, d in degrees.items() if g != "x"}
    if not all(homogeneous.values()):
        raise MultidegreeMismatchError("subresultant is not group-homogeneous")
    if in_range:
        for i in range(sys.n):
            expect = expected_multidegree(dv, nu, i)
            got = degrees[sys.coefficient_group(i)]
            if got != expect:
                raise MultidegreeMismatchError(
                    f"degree in group {sys.coefficient_group(i)} is {got}, "
                    f"formula gives {expect}"
                )
    cont, _prim, sign = delta.content_and_primitive()
    return SubresultantResult(
        delta=delta,
        multidegrees=degrees,
        content=int(cont),
        sign=sign,
        nu=nu,
        monomial_set=S,
        dv=dv,
        in_range=in_range,
    )


def _zero_result(sys, nu, S, in_range) -> SubresultantResult:
    return SubresultantResult(
        delta=Polynomial.zero(sys.universe),
        multidegrees={sys.coefficient_group(i): 0 for i in range(sys.n)},
        content=0,
        sign=0,
        nu=nu,
        monomial_set=S,
        dv=sys.dv,
        in_range=in_range,
        is_zero=True,
    )


def specialize_delta(
    sys: GenericSystem, delta: Polynomial, specialization: Sequence[Polynomial]
):
    """Evaluate a subresultant at concrete polynomials Q_1..Q_n.

    Each Q_i must be homogeneous of degree d_i in an x-only universe; the
    coefficient variables of the generic system are replaced by the matching
    coefficients of Q_i.
    """
    if len(specialization) != sys.n:
        raise ValueError("need one polynomial per input slot")
    assignment: dict[str, Fraction] = {}
    for i, (q, d) in enumerate(zip(specialization, sys.dv.degrees)):
        _check_homogeneous(q, d)
        for alpha in monomials_of_degree(sys.n, d):
            c = q.terms.get(tuple(alpha), 0)
            assignment[sys.coefficient_name(i, alpha)] = c
    value = delta.specialize(assignment, target=delta.universe)
    return value.constant_value()


def _check_homogeneous(q: Polynomial, d: int):
    if q.is_zero():
        return
    if any(sum(e) != d for e in q.terms):
        raise ValueError(f"specialization polynomial is not homogeneous of degree {d}")


def universal_property_check(
    sys: GenericSystem,
    specialization: Sequence[Polynomial],
    nu: int,
    S: MonomialSet,
) -> bool:
    """True iff span{m' * Q_i} + span(S) is the whole degree-nu space."""
    if len(specialization) != sys.n:
        raise ValueError("need one polynomial per input slot")
    n = sys.n
    rows = x_monomials(sys, nu)
    row_pos = {m: i for i, m in enumerate(rows)}
    cols: list[list[Fraction]] = []
    for i, (q, d) in enumerate(zip(specialization, sys.dv.degrees)):
        _check_homogeneous(q, d)
        if nu - d < 0:
            continue
        for mprime in monomials_of_degree(n, nu - d):
            col = [Fraction(0)] * len(rows)
            for exp, c in q.terms.items():
                xexp = tuple(exp[j] + mprime[j] for j in range(n))
                col[row_pos[xexp]] += Fraction(c)
            cols.append(col)
    for m in S.monomials:
        col = [Fraction(0)] * len(rows)
        col[row_pos[m]] = Fraction(1)
        cols.append(col)
    if not cols:
        return len(rows) == 0
    mat = ExactMatrix([[cols[j][i] for j in range(len(cols))] for i in range(len(rows))])
    return rank_over_Q(mat) == len(rows)


def enumerate_S(
    sys: GenericSystem, nu: int, limit: int, seed: Optional[int] = None
) -> list[MonomialSet]:
    """All valid S when few enough, else a seeded sample without replacement."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    monos = x_monomials(sys, nu)
    h = hilbert_value(sys.dv, nu)
    if h > len(monos):
        return []
    total = math.comb(len(monos), h)
    if total <= limit:
        return [
            MonomialSet(nu=nu, monomials=tuple(sorted(c, key=grevlex_key, reverse=True)))
            for c in combinations(monos, h)
        ]
    if seed is None:
        raise ValueError("a seed is required when sampling")
    rng = random.Random(seed)
    seen: set[frozenset] = set()
    out = []
    while len(out) < limit:
        pick = frozenset(rng.sample(monos, h))
        if pick in seen:
            continue
        seen.add(pick)
        out.append(
            MonomialSet(nu=nu, monomials=tuple(sorted(pick, key=grevlex_key, reverse=True)))
        )
    return out
