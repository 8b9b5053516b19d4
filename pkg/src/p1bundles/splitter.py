"""Birkhoff-Grothendieck factorization with exact certificates.

Every rank-k bundle on the sphere splits as O(d1) + ... + O(dk); this
module computes the multiset (d1 >= ... >= dk) together with a
certificate: unimodular chart gauges W (over C[1/z]) and U (over C[z])
with W*T*U = diag(z^(-d1), ..., z^(-dk)) exactly.  Re-multiplying the
certificate is the proof; no step of the output is trusted without it.

The factorization follows the constructive splitting argument:

1. twist E minimally so it first acquires a nonzero section;
2. that section vanishes nowhere (certified: unit content on chart 0,
   nonzero value at infinity), so it spans a trivial line subbundle;
3. complete it to unimodular gauges on both charts, exposing a
   block [[1, coupling row], [0, quotient]];
4. recurse on the quotient, whose degrees are certified nonpositive;
5. eliminate the coupling row by a chart-0 shear (exponents >= 1) and a
   chart-1 shear (exponents <= 0) per entry -- the split at exponent 0
   is exactly why nonpositive quotient degrees matter;
6. untwist and sort the diagonal with a permutation gauge.

Sections are located by exact column reduction: with N the largest
|exponent| of T, the polynomial matrix P = z^N * T is column-reduced by
unimodular column operations over C[z].  Once the leading-column-
coefficient matrix is nonsingular, degrees are predictable: column
degrees r_j of the reduced form give h0(E(m)) = sum_j max(0, (N - r_j) +
m + 1) for every twist m at once, the minimal twist is min_j r_j - N,
and the reducing columns themselves are the sections.  The Cech module
recomputes all of these dimensions by brute-force linear algebra, so the
two routes check each other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bundle import VectorBundle
from .cech import Section
from .errors import (
    InternalCheckError,
    NotUnimodularlyCompletable,
    QuotientDegreePositive,
    SearchExhausted,
    SectionVanishes,
)
from .exact import GaussianRational, ZERO
from .laurent import (
    Chart,
    LaurentPoly,
    ONE_POLY,
    ZERO_POLY,
    chart_contains,
    chart_gcd_many,
    monomial,
    z_power,
)
from .lmatrix import (
    LaurentMatrix,
    ScalarMatrix,
    is_unimodular,
    kernel_basis,
    unimodular_complete,
)


class SplittingType(tuple):
    """Splitting degrees as a nonincreasing tuple of integers.

    Construction sorts, so two types compare equal exactly when they agree
    as multisets.  The sorted representative is the canonical one: gauge
    changes can permute the summands but never alter the multiset.
    """

    def __new__(cls, degrees):
        return super().__new__(cls, sorted((int(d) for d in degrees), reverse=True))

    @property
    def degrees(self):
        return tuple(self)

    def __repr__(self):
        return f"SplittingType{tuple(self)!r}"


@dataclass(frozen=True)
class Factorization:
    """Certificate (W, U, D): W*T*U = D with D = diag(z^(-d_i)), sorted."""

    w: LaurentMatrix
    u: LaurentMatrix
    d: LaurentMatrix

    def splitting_type(self) -> SplittingType:
        return SplittingType(
            -self.d[i, i].is_unit()[1] for i in range(self.d.rows)
        )


# ---------------------------------------------------------------------------
# Column reduction (the section-finding engine)
# ---------------------------------------------------------------------------


def _column_degree(col) -> int:
    return max(p.degree for p in col if not p.is_zero())


def _column_reduce(cols):
    """Reduce polynomial columns until leading coefficients are independent.

    Input: list of columns (lists of z-polynomials) of a nonsingular
    matrix.  Repeatedly finds a constant kernel vector u of the leading-
    coefficient matrix and replaces the highest-degree participating
    column j* by sum_j u_j z^(r_j* - r_j) col_j, which strictly drops its
    degree.  Returns (reduced columns, V columns) with V the accumulated
    unimodular column transform.
    """
    k = len(cols)
    cols = [list(c) for c in cols]
    v = [[ONE_POLY if i == j else ZERO_POLY for i in range(k)] for j in range(k)]
    guard = sum(_column_degree(c) for c in cols) + k + 1
    for _ in range(guard + 1):
        degs = [_column_degree(c) for c in cols]
        lead = ScalarMatrix(
            [[cols[j][i].coeff(degs[j]) for j in range(k)] for i in range(k)]
        )
        null = kernel_basis(lead)
        if not null:
            return cols, v, degs
        u = null[0]
        picked = max(
            (j for j in range(k) if u[j] != ZERO), key=lambda j: (degs[j], j)
        )
        new_col = [ZERO_POLY] * k
        new_v = [ZERO_POLY] * k
        for j in range(k):
            c = u[j]
            if c == ZERO:
                continue
            shift = degs[picked] - degs[j]
            for i in range(k):
                new_col[i] = new_col[i] + cols[j][i].shift(shift).scale(c)
                new_v[i] = new_v[i] + v[j][i].shift(shift).scale(c)
        cols[picked] = new_col
        v[picked] = new_v
    raise InternalCheckError("column reduction failed to terminate")


def _reduction_data(t: LaurentMatrix):
    """Column-reduce z^N * T; returns (n, column degrees, V as a matrix)."""
    k = t.rows
    n = 0
    for row in t.entries:
        for p in row:
            if not p.is_zero():
                n = max(n, p.degree, -p.order)
    p_cols = [[t[i, j].shift(n) for i in range(k)] for j in range(k)]
    _, v_cols, degs = _column_reduce(p_cols)
    v = LaurentMatrix([[v_cols[j][i] for j in range(k)] for i in range(k)])
    return n, degs, v


def minimal_twist(e: VectorBundle) -> int:
    """The unique m with h0(E(m)) > 0 and h0(E(m-1)) = 0; equals -d1.

    Found from the column degrees of the reduced z^N*T: twisting shifts
    every predictable degree uniformly, so the first twist with a section
    is min_j r_j - N.  The certified search bracket |m| <= k*(N+1) is
    asserted; leaving it would signal an implementation bug.
    """
    n, degs, _ = _reduction_data(e.transition)
    m = min(degs) - n
    if abs(m) > e.rank * (n + 1):
        raise SearchExhausted(
            f"minimal twist {m} left the bracket +-{e.rank * (n + 1)}"
        )
    return m


def extract_section(e_twisted: VectorBundle) -> Section:
    """A nowhere-vanishing section of a minimally twisted bundle.

    Caller contract: h0(E) > 0 and h0(E(-1)) = 0.  The chosen section is
    the first minimal-degree column of the reducing transform; both
    nonvanishing certificates are checked exactly and SectionVanishes is
    raised on any failure (under a violated contract the value at infinity
    degenerates, so misuse is loud).
    """
    n, degs, v = _reduction_data(e_twisted.transition)
    best = min(degs)
    j0 = degs.index(best)
    s = v.column(j0)
    _assert_nowhere_vanishing(e_twisted, s)
    return Section(s)


def _assert_nowhere_vanishing(e: VectorBundle, s):
    # chart 0: the components may share no zero, i.e. gcd is a constant
    g = chart_gcd_many(s, Chart.Z)
    unit = g.is_unit()
    if unit is None or unit[1] != 0:
        raise SectionVanishes("section components share a zero on chart 0")
    # chart 1: T*s must be holomorphic at infinity and nonzero there
    t = e.transition
    k = e.rank
    image = []
    for i in range(k):
        acc = ZERO_POLY
        for j in range(k):
            acc = acc + t[i, j] * s[j]
        image.append(acc)
    at_infinity = []
    for p in image:
        if not chart_contains(p, Chart.W):
            raise SectionVanishes("image of section is not holomorphic at infinity")
        at_infinity.append(p.coeff(0))
    if all(c == ZERO for c in at_infinity):
        raise SectionVanishes("section vanishes at infinity")


# ---------------------------------------------------------------------------
# The factorization recursion
# ---------------------------------------------------------------------------


def _split_matrix(t: LaurentMatrix):
    """Returns (degrees, W, U) with W*T*U = diag(z^(-d_i)), d nonincreasing."""
    k = t.rows
    if k == 1:
        c, exp = t[0, 0].is_unit()
        w = LaurentMatrix([[monomial(c.inverse(), 0)]])
        u = LaurentMatrix.identity(1)
        return (-exp,), w, u

    e = VectorBundle(t)
    m = minimal_twist(e)
    e1 = e.twist(m)
    s = extract_section(e1)
    t1 = e1.transition

    # Trivial subbundle: complete the section on chart 0, its image on
    # chart 1; the conjugated matrix is [[1, coupling row], [0, quotient]].
    # Completability was certified by the nowhere-vanishing checks, so a
    # failure here is a bug, not bad input.
    try:
        u1 = unimodular_complete(list(s), Chart.Z)
        m1 = t1 * u1
        s1 = m1.column(0)
        w1 = unimodular_complete(list(s1), Chart.W).inverse()
    except NotUnimodularlyCompletable as exc:
        raise InternalCheckError(
            f"certified section failed unimodular completion: {exc}"
        ) from exc
    block = w1 * m1
    if block[0, 0] != ONE_POLY or any(block[i, 0] != ZERO_POLY for i in range(1, k)):
        raise InternalCheckError("trivial subbundle did not split off")

    quotient = LaurentMatrix(
        [[block[i, j] for j in range(1, k)] for i in range(1, k)]
    )
    b, wq, uq = _split_matrix(quotient)
    if any(bi > 0 for bi in b):
        raise QuotientDegreePositive(
            f"quotient degrees {b} contain a positive entry at the minimal twist"
        )

    w2 = _embed_lower(wq)
    u2 = _embed_lower(uq)
    block2 = w2 * block * u2

    # Coupling elimination: entry j sits over the diagonal pair
    # (z^0, z^(-b_j)); exponents >= 1 go to a chart-0 column shear,
    # exponents <= 0 to a chart-1 row shear (valid because b_j <= 0).
    w3_grid = [list(row) for row in LaurentMatrix.identity(k).entries]
    u3_grid = [list(row) for row in LaurentMatrix.identity(k).entries]
    for j in range(1, k):
        c = block2[0, j]
        low, high = c.split(0)
        u3_grid[0][j] = -high
        w3_grid[0][j] = -(low.shift(b[j - 1]))
    w3 = LaurentMatrix(w3_grid)
    u3 = LaurentMatrix(u3_grid)

    w_total = w3 * (w2 * w1)
    u_total = (u1 * u2) * u3
    degrees = (-m,) + tuple(bj - m for bj in b)

    # The twist was scalar, so W*T*U = z^m * (eliminated block); the sorted
    # permutation gauge is applied last (the recursion layout keeps the
    # trivial summand first, which is already sorted when degrees are).
    order = sorted(range(k), key=lambda i: (-degrees[i], i))
    if order != list(range(k)):
        perm = LaurentMatrix(
            [
                [ONE_POLY if order[i] == j else ZERO_POLY for j in range(k)]
                for i in range(k)
            ]
        )
        w_total = perm * w_total
        u_total = u_total * perm.transpose()
        degrees = tuple(degrees[i] for i in order)
    return degrees, w_total, u_total


def _embed_lower(m: LaurentMatrix) -> LaurentMatrix:
    k = m.rows + 1
    grid = [[ONE_POLY if i == j else ZERO_POLY for j in range(k)] for i in range(k)]
    for i in range(m.rows):
        for j in range(m.cols):
            grid[i + 1][j + 1] = m[i, j]
    return LaurentMatrix(grid)


def grothendieck_split(e: VectorBundle):
    """Full splitting: returns (SplittingType, Factorization).

    The certificate is verified before being returned; a failed
    verification raises InternalCheckError rather than producing an
    unproven answer.
    """
    degrees, w, u = _split_matrix(e.transition)
    d = LaurentMatrix.diagonal([z_power(-di) for di in degrees])
    fact = Factorization(w, u, d)
    if not verify_factorization(e, fact):
        raise InternalCheckError("factorization certificate failed to verify")
    if sum(degrees) != e.degree:
        raise InternalCheckError("splitting degrees do not sum to the bundle degree")
    return SplittingType(degrees), fact


def splitting_type(e: VectorBundle) -> SplittingType:
    """The Grothendieck invariant d1 >= ... >= dk with E = + O(d_i)."""
    return grothendieck_split(e)[0]


def verify_factorization(e: VectorBundle, fact: Factorization) -> bool:
    """Exact certificate check: W*T*U = D, chart unimodularity, sortedness."""
    w, u, d = fact.w, fact.u, fact.d
    k = e.rank
    if not (
        w.rows == w.cols == k and u.rows == u.cols == k and d.rows == d.cols == k
    ):
        return False
    exps = []
    for i in range(k):
        for j in range(k):
            entry = d[i, j]
            if i != j:
                if not entry.is_zero():
                    return False
                continue
            unit = entry.is_unit()
            if unit is None or unit[0] != GaussianRational(1):
                return False
            exps.append(unit[1])
    degrees = [-x for x in exps]
    if degrees != sorted(degrees, reverse=True):
        return False
    if not is_unimodular(w, Chart.W) or not is_unimodular(u, Chart.Z):
        return False
    return w * e.transition * u == d


def iso(e1: VectorBundle, e2: VectorBundle) -> bool:
    """Isomorphism test: equal ranks and equal sorted splitting types.

    The splitting type is a complete invariant, so this decides the
    isomorphism class exactly.
    """
    if e1.rank != e2.rank:
        return False
    return splitting_type(e1) == splitting_type(e2)


def is_self_dual(e: VectorBundle) -> bool:
    """Whether E is isomorphic to its dual, i.e. the type is symmetric
    under negation (the bundles carrying an orthogonal structure)."""
    t = splitting_type(e)
    return list(t) == [-d for d in reversed(t)]
