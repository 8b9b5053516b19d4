import random

import pytest
from hypothesis import given, strategies as st

from p1bundles import (
    GaussianRational,
    LaurentPoly,
    W_CHART,
    Z_CHART,
    chart_contains,
    chart_degree,
    constant,
    monomial,
    parse_poly,
    poly_gcd_bezout,
    z_power,
)
from p1bundles.laurent import ONE_POLY, ZERO_POLY, chart_leading_coeff


def lp(d):
    return LaurentPoly(d)


small_polys = st.dictionaries(
    st.integers(min_value=-6, max_value=6),
    st.builds(
        GaussianRational,
        st.fractions(min_value=-9, max_value=9, max_denominator=6),
        st.fractions(min_value=-4, max_value=4, max_denominator=3),
    ),
    max_size=5,
).map(LaurentPoly)


def test_arith_examples():
    assert (z_power(-1) + constant(1)) * (z_power(1) - constant(1)) == lp(
        {1: 1, -1: -1}
    )
    p = lp({-3: 2, 0: 5})
    assert p + ZERO_POLY == p
    assert z_power(-1) * z_power(1) == ONE_POLY


def test_invariants_purge_zeros():
    p = lp({2: 1}) - lp({2: 1})
    assert p.is_zero()
    with pytest.raises(ValueError):
        p.degree
    with pytest.raises(ValueError):
        p.order


def test_is_unit():
    assert monomial(3, -2).is_unit() == (GaussianRational(3), -2)
    assert (z_power(1) + constant(1)).is_unit() is None
    assert ZERO_POLY.is_unit() is None


def test_split_examples():
    p = lp({-1: 2, 0: 3, 2: 5})
    low, high = p.split(0)
    assert low == lp({-1: 2, 0: 3}) and high == lp({2: 5})
    assert ZERO_POLY.split(7) == (ZERO_POLY, ZERO_POLY)
    assert z_power(3).split(3) == (z_power(3), ZERO_POLY)


@given(small_polys, st.integers(min_value=-8, max_value=8))
def test_split_reassembly(p, cutoff):
    low, high = p.split(cutoff)
    assert low + high == p
    if not low.is_zero():
        assert low.degree <= cutoff
    if not high.is_zero():
        assert high.order >= cutoff + 1


def test_gcd_examples():
    z = z_power(1)
    one = constant(1)
    d, u, v = poly_gcd_bezout(z * z - one, z - one, Z_CHART)
    assert d == z - one and u == ZERO_POLY and v == one
    d, u, v = poly_gcd_bezout(z, one - z, Z_CHART)
    assert d == one and u == one and v == one
    f = lp({0: 3, 2: 6})
    d, u, v = poly_gcd_bezout(f, ZERO_POLY, Z_CHART)
    assert d == lp({0: GaussianRational(1, 0) / 2, 2: 1})
    assert u * f == d and v == ZERO_POLY


def test_gcd_rejects_bad_input():
    with pytest.raises(ValueError):
        poly_gcd_bezout(z_power(-1), constant(1), Z_CHART)
    with pytest.raises(ValueError):
        poly_gcd_bezout(z_power(1), constant(1), W_CHART)
    with pytest.raises(ValueError):
        poly_gcd_bezout(ZERO_POLY, ZERO_POLY, Z_CHART)


def _random_chart_poly(rng, chart, max_deg=4):
    sign = 1 if chart is Z_CHART else -1
    return LaurentPoly(
        {
            sign * e: GaussianRational(rng.randint(-5, 5), rng.randint(-2, 2))
            for e in range(rng.randint(0, max_deg) + 1)
        }
    )


@pytest.mark.parametrize("chart", [Z_CHART, W_CHART])
def test_bezout_certificate_500_random_pairs(chart):
    rng = random.Random(20240 if chart is Z_CHART else 20241)
    done = 0
    while done < 500:
        f = _random_chart_poly(rng, chart)
        g = _random_chart_poly(rng, chart)
        if f.is_zero() and g.is_zero():
            continue
        d, u, v = poly_gcd_bezout(f, g, chart)
        assert u * f + v * g == d
        # d divides both inputs with zero remainder
        from p1bundles.laurent import chart_divmod

        for h in (f, g):
            if not h.is_zero():
                _, r = chart_divmod(h, d, chart)
                assert r.is_zero()
        # outputs stay in the chart ring, gcd is monic there
        for out in (d, u, v):
            assert chart_contains(out, chart)
        assert chart_leading_coeff(d, chart) == GaussianRational(1)
        done += 1


def test_chart_membership_and_degree():
    assert chart_contains(z_power(3), Z_CHART)
    assert not chart_contains(z_power(-1), Z_CHART)
    assert chart_contains(z_power(-3), W_CHART)
    assert chart_degree(lp({-4: 1, 0: 2}), W_CHART) == 4
    assert chart_degree(lp({0: 2, 5: 1}), Z_CHART) == 5


def test_poly_parse_print_roundtrip():
    p = lp({-2: GaussianRational(0, 1), 0: GaussianRational(3, 0) / 4, 5: 1})
    assert str(p) == "(0, 1)*z^-2 + 3/4 + z^5"
    assert parse_poly(str(p)) == p
    assert parse_poly("0") == ZERO_POLY


@given(small_polys)
def test_poly_roundtrip_property(p):
    assert parse_poly(str(p)) == p
