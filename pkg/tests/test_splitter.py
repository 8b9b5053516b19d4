import random

import pytest

from p1bundles import (
    Factorization,
    LaurentMatrix,
    SectionVanishes,
    SplittingType,
    VectorBundle,
    W_CHART,
    Z_CHART,
    constant,
    diagonal_bundle,
    extract_section,
    grothendieck_split,
    h0_dim,
    h0_profile,
    is_section,
    is_self_dual,
    iso,
    line_bundle,
    minimal_twist,
    random_bundle,
    random_unimodular,
    splitting_type,
    verify_factorization,
    z_power,
)
from p1bundles.laurent import ONE_POLY, ZERO_POLY


def lm(rows):
    return LaurentMatrix(rows)


def euler_extension():
    return VectorBundle(lm([[z_power(1), ONE_POLY], [ZERO_POLY, z_power(-1)]]))


def other_extension():
    return VectorBundle(lm([[z_power(-1), ONE_POLY], [ZERO_POLY, z_power(1)]]))


def test_splitting_type_sorts():
    assert SplittingType([0, 2, -1]) == SplittingType([2, -1, 0])
    assert tuple(SplittingType([0, 2, -1])) == (2, 0, -1)


def test_minimal_twist_examples():
    assert minimal_twist(line_bundle(3)) == -3
    assert minimal_twist(diagonal_bundle([2, -1])) == -2
    for seed in range(5):
        assert minimal_twist(random_bundle([2, -1], 3, seed)) == -2


def test_minimal_twist_matches_cohomology_definition():
    rng = random.Random(88)
    for _ in range(8):
        degrees = [rng.randint(-4, 4) for _ in range(rng.randint(1, 3))]
        e = random_bundle(degrees, rng.randint(0, 2), rng.randint(0, 10**6))
        m = minimal_twist(e)
        assert h0_dim(e.twist(m)) > 0
        assert h0_dim(e.twist(m - 1)) == 0


def test_extract_section_trivial():
    s = extract_section(line_bundle(0))
    assert list(s) == [ONE_POLY]


def test_extract_section_twisted_extension():
    base = VectorBundle(lm([[z_power(-2), ONE_POLY], [ZERO_POLY, z_power(1)]]))
    e = base.twist(minimal_twist(base))
    s = extract_section(e)
    assert is_section(e, s)


def test_extract_section_loud_on_nonminimal_input():
    # violated caller contract degenerates at infinity and is caught
    with pytest.raises(SectionVanishes):
        extract_section(diagonal_bundle([1, 0]))


def test_split_diagonal_is_identity_gauges():
    st, fact = grothendieck_split(diagonal_bundle([3, 0, -2]))
    assert tuple(st) == (3, 0, -2)
    assert fact.w == LaurentMatrix.identity(3)
    assert fact.u == LaurentMatrix.identity(3)


def test_split_unsorted_diagonal_sorts():
    st, fact = grothendieck_split(diagonal_bundle([-2, 3, 0]))
    assert tuple(st) == (3, 0, -2)
    assert verify_factorization(diagonal_bundle([-2, 3, 0]), fact)


def test_holomorphic_nonsplitting_witness():
    st, fact = grothendieck_split(euler_extension())
    assert tuple(st) == (0, 0)
    assert verify_factorization(euler_extension(), fact)
    st2, fact2 = grothendieck_split(other_extension())
    assert tuple(st2) == (1, -1)
    assert verify_factorization(other_extension(), fact2)


def test_line_bundle_types():
    assert tuple(splitting_type(line_bundle(5))) == (5,)
    assert tuple(splitting_type(line_bundle(-4))) == (-4,)


def test_roundtrip_type_recovery():
    rng = random.Random(314)
    for _ in range(25):
        k = rng.randint(1, 5)
        degrees = [rng.randint(-6, 6) for _ in range(k)]
        e = random_bundle(degrees, rng.randint(0, 3), rng.randint(0, 10**6))
        st, fact = grothendieck_split(e)
        assert tuple(st) == tuple(sorted(degrees, reverse=True))
        assert verify_factorization(e, fact)


def test_gauge_invariance_of_type():
    rng = random.Random(2718)
    for _ in range(10):
        degrees = [rng.randint(-4, 4) for _ in range(rng.randint(1, 4))]
        e = diagonal_bundle(degrees)
        a1 = random_unimodular(e.rank, W_CHART, 3, rng, moves=3)
        a0 = random_unimodular(e.rank, Z_CHART, 3, rng, moves=3)
        scrambled = VectorBundle(a1 * e.transition * a0)
        assert splitting_type(scrambled) == splitting_type(e)


def test_certificate_tampering_detected():
    e = random_bundle([2, 0, -1], 2, seed=33)
    st, fact = grothendieck_split(e)
    assert verify_factorization(e, fact)
    bumped = fact.w.with_entry(0, 0, fact.w[0, 0] + ONE_POLY)
    assert not verify_factorization(e, Factorization(bumped, fact.u, fact.d))
    # swapping diagonal entries without permuting the gauges must fail
    k = e.rank
    swapped = [fact.d[i, i] for i in range(k)]
    swapped[0], swapped[-1] = swapped[-1], swapped[0]
    assert not verify_factorization(
        e, Factorization(fact.w, fact.u, LaurentMatrix.diagonal(swapped))
    )


def test_splitting_consistent_with_cohomology():
    rng = random.Random(1618)
    for _ in range(8):
        degrees = [rng.randint(-4, 4) for _ in range(rng.randint(1, 3))]
        e = random_bundle(degrees, rng.randint(0, 2), rng.randint(0, 10**6))
        st = splitting_type(e)
        assert h0_dim(e) == sum(max(0, d + 1) for d in st)


def test_type_arithmetic():
    rng = random.Random(55)
    for _ in range(8):
        da = [rng.randint(-3, 3) for _ in range(rng.randint(1, 3))]
        db = [rng.randint(-3, 3) for _ in range(rng.randint(1, 3))]
        a = random_bundle(da, 2, rng.randint(0, 10**6))
        b = random_bundle(db, 2, rng.randint(0, 10**6))
        assert splitting_type(a.tensor(b)) == SplittingType(
            [x + y for x in da for y in db]
        )
        assert splitting_type(a.dsum(b)) == SplittingType(da + db)
        assert splitting_type(a.dual()) == SplittingType([-x for x in da])
        assert a.det_bundle().degree == sum(da)


def test_iso_examples():
    e = random_bundle([2, -1], 3, seed=1)
    f = random_bundle([2, -1], 3, seed=2)
    assert iso(e, f)
    assert not iso(euler_extension(), diagonal_bundle([1, -1]))
    assert iso(line_bundle(2), line_bundle(2))
    assert not iso(line_bundle(2), line_bundle(-2))
    assert not iso(line_bundle(1), diagonal_bundle([1, 0]))  # rank mismatch


def test_dual_dual_preserves_type():
    rng = random.Random(47)
    for _ in range(5):
        degrees = [rng.randint(-3, 3) for _ in range(rng.randint(1, 3))]
        e = random_bundle(degrees, 2, rng.randint(0, 10**6))
        assert splitting_type(e.dual().dual()) == splitting_type(e)


def test_self_duality():
    assert is_self_dual(diagonal_bundle([1, -1]))
    assert not is_self_dual(diagonal_bundle([2, 0]))
    assert is_self_dual(diagonal_bundle([0, 0, 0]))
    assert is_self_dual(random_bundle([3, 0, -3], 2, seed=4))


def test_profile_inversion_agrees_with_splitter():
    # the h0 staircase is an independent route to the type
    e = random_bundle([2, 1, -2], 2, seed=6)
    n = e.max_exponent
    prof = dict(h0_profile(e, -(n + 1), n + 1))
    jumps = {
        m: prof[m] - prof[m - 1] for m in range(-n, n + 2)
    }
    recovered = []
    prev = 0
    for m in range(-n, n + 2):
        for _ in range(jumps[m] - prev):
            recovered.append(-m)
        prev = jumps[m]
    assert SplittingType(recovered) == splitting_type(e)
