"""Holomorphic vector bundles on the Riemann sphere.

A rank-k bundle is encoded by one k x k transition matrix T(z) relating the
chart-0 frame to the chart-1 frame over the overlap C*.  Validity means T is
invertible at every point of the overlap, i.e. det T is a unit c*z^e of the
Laurent ring.  Conventions fixed once and used everywhere:

* O(d) is the line bundle with 1x1 transition z^(-d).
* Twisting by O(m) multiplies the transition by z^(-m).
* deg E = -e where det T = c*z^e; then deg O(d) = d and the space of
  global sections of O(d) is the degree-<=d polynomials in chart 0.

The seeded generator at the bottom scrambles a diagonal transition with
elementary gauge moves (chart-1 moves on the left, chart-0 moves on the
right), producing test instances whose splitting type is known by
construction.
"""

from __future__ import annotations

import random

from .errors import InvalidBundle
from .exact import GaussianRational
from .laurent import Chart, LaurentPoly, ONE_POLY, ZERO_POLY, constant, z_power
from .lmatrix import LaurentMatrix, block_diag, kron


class VectorBundle:
    """A validated transition matrix; immutable."""

    __slots__ = ("rank", "transition", "det_unit")

    def __init__(self, transition: LaurentMatrix):
        if not isinstance(transition, LaurentMatrix):
            transition = LaurentMatrix(transition)
        if not transition.is_square():
            raise InvalidBundle("transition matrix must be square")
        det = transition.det()
        unit = det.is_unit()
        if unit is None:
            raise InvalidBundle(
                "det of transition matrix is not c*z^e; the matrix degenerates "
                "somewhere on the overlap"
            )
        object.__setattr__(self, "rank", transition.rows)
        object.__setattr__(self, "transition", transition)
        object.__setattr__(self, "det_unit", unit)

    def __setattr__(self, name, value):
        raise AttributeError("VectorBundle is immutable")

    @property
    def degree(self) -> int:
        """Algebraic degree: the negated winding exponent of det T."""
        return -self.det_unit[1]

    @property
    def max_exponent(self) -> int:
        """Largest |exponent| appearing in the transition matrix."""
        n = 0
        for row in self.transition.entries:
            for e in row:
                if not e.is_zero():
                    n = max(n, e.degree, -e.order)
        return n

    # -- constructions from the transition-matrix calculus -----------------

    def dual(self) -> "VectorBundle":
        """Dual bundle: transition is the inverse transpose."""
        return VectorBundle(self.transition.inverse().transpose())

    def det_bundle(self) -> "VectorBundle":
        """Determinant line bundle: 1x1 transition det T."""
        return VectorBundle(LaurentMatrix([[self.transition.det()]]))

    def dsum(self, other: "VectorBundle") -> "VectorBundle":
        """Direct sum: block-diagonal transition."""
        return VectorBundle(block_diag(self.transition, other.transition))

    def tensor(self, other: "VectorBundle") -> "VectorBundle":
        """Tensor product: Kronecker product of transitions."""
        return VectorBundle(kron(self.transition, other.transition))

    def twist(self, m: int) -> "VectorBundle":
        """Tensor with O(m): transition z^(-m) * T; degree grows by rank*m."""
        if m == 0:
            return self
        return VectorBundle(self.transition.scale(z_power(-m)))

    def __eq__(self, other):
        if not isinstance(other, VectorBundle):
            return NotImplemented
        return self.transition == other.transition

    def __hash__(self):
        return hash(self.transition)

    def __repr__(self):
        return f"<VectorBundle rank {self.rank} deg {self.degree}>"


def validate(transition: LaurentMatrix) -> VectorBundle:
    """Check invertibility on C* and wrap; raises InvalidBundle otherwise."""
    return VectorBundle(transition)


def line_bundle(d: int) -> VectorBundle:
    """O(d), the degree-d line bundle."""
    return VectorBundle(LaurentMatrix([[z_power(-d)]]))


def trivial_bundle(k: int) -> VectorBundle:
    """O(0)^k."""
    return VectorBundle(LaurentMatrix.identity(k))


def diagonal_bundle(degrees) -> VectorBundle:
    """O(d1) + ... + O(dk) with diagonal transition."""
    return VectorBundle(LaurentMatrix.diagonal([z_power(-d) for d in degrees]))


# ---------------------------------------------------------------------------
# Seeded gauge scrambling
# ---------------------------------------------------------------------------

_UNIT_SCALARS = (
    GaussianRational(1),
    GaussianRational(-1),
    GaussianRational(0, 1),
    GaussianRational(0, -1),
)


def _random_scalar(rng: random.Random) -> GaussianRational:
    return GaussianRational(rng.randint(-2, 2), rng.randint(-1, 1))


def _random_chart_poly(rng: random.Random, chart: Chart, max_degree: int) -> LaurentPoly:
    # A chart polynomial of degree <= max_degree in the chart variable,
    # with small Gaussian-integer coefficients.
    deg = rng.randint(0, max_degree)
    sign = 1 if chart is Chart.Z else -1
    coeffs = {}
    for e in range(deg + 1):
        c = _random_scalar(rng)
        if c:
            coeffs[sign * e] = c
    return LaurentPoly(coeffs)


def _shear(k: int, i: int, j: int, p: LaurentPoly) -> LaurentMatrix:
    return LaurentMatrix.identity(k).with_entry(i, j, p)


def _swap(k: int, i: int, j: int) -> LaurentMatrix:
    grid = [list(row) for row in LaurentMatrix.identity(k).entries]
    grid[i][i] = ZERO_POLY
    grid[j][j] = ZERO_POLY
    grid[i][j] = ONE_POLY
    grid[j][i] = ONE_POLY
    return LaurentMatrix(grid)


def random_unimodular(
    k: int, chart: Chart, max_degree: int, rng: random.Random, moves: int = 3
) -> LaurentMatrix:
    """A random product of elementary chart-unimodular matrices.

    Factors are unipotent shears with chart-polynomial entries of degree at
    most max_degree, and constant invertible moves (swaps, unit scalings,
    constant shears).  The result is unimodular over the chart by
    construction.
    """
    if k == 1:
        return LaurentMatrix([[constant(rng.choice(_UNIT_SCALARS))]])
    acc = LaurentMatrix.identity(k)
    for _ in range(moves):
        kind = rng.choice(("shear", "swap", "constant_shear"))
        i, j = rng.sample(range(k), 2)
        if kind == "shear":
            acc = acc * _shear(k, i, j, _random_chart_poly(rng, chart, max_degree))
        elif kind == "swap":
            acc = acc * _swap(k, i, j)
        else:
            acc = acc * _shear(k, i, j, constant(_random_scalar(rng)))
    return acc


def random_bundle(
    degrees, gauge_degree: int, seed: int, moves: int | None = None
) -> VectorBundle:
    """A gauge scramble of the diagonal bundle with the given type.

    Starts from diag(z^(-d1), ..., z^(-dk)) and applies a seeded sequence of
    elementary moves: chart-1 (w-side) unimodular factors multiply on the
    left, chart-0 (z-side) factors on the right, each with entries of degree
    at most gauge_degree.  Gauge moves never change the isomorphism class,
    so the splitting type of the output is the input type by construction.
    Deterministic for a fixed (degrees, gauge_degree, seed, moves).
    """
    degrees = [int(d) for d in degrees]
    if gauge_degree < 0:
        raise ValueError("gauge_degree must be >= 0")
    k = len(degrees)
    rng = random.Random(seed)
    if moves is None:
        moves = 2 * k + 2
    t = LaurentMatrix.diagonal([z_power(-d) for d in degrees])
    for step in range(moves):
        if step % 2 == 0:
            t = random_unimodular(k, Chart.W, gauge_degree, rng, moves=1) * t
        else:
            t = t * random_unimodular(k, Chart.Z, gauge_degree, rng, moves=1)
    return VectorBundle(t)
