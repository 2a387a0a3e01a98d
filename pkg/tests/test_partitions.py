import numpy as np
import pytest

from hlsixv import partitions as pt


def conjugate_by_counting(lam):
    """Independent oracle: lambda'_j = #{i : lambda_i >= j} counted directly."""
    out = []
    j = 1
    while any(p >= j for p in lam):
        out.append(sum(1 for p in lam if p >= j))
        j += 1
    return tuple(out)


def test_conjugate_examples():
    assert pt.conjugate((6, 3, 3, 1)) == conjugate_by_counting((6, 3, 3, 1))
    assert pt.conjugate((6, 3, 3, 1)) == (4, 3, 3, 1, 1, 1)
    assert pt.conjugate(()) == ()
    assert pt.conjugate((1, 1, 1)) == (3,)


def test_conjugate_involution_and_weight():
    for lam in pt.partitions_in_box(4, 5):
        assert pt.conjugate(pt.conjugate(lam)) == pt.strip_zeros(lam)
        mult = pt.multiplicities(lam)
        assert sum(j * m for j, m in mult.items()) == pt.size(lam)
        assert pt.conjugate(lam) == conjugate_by_counting(lam)


def test_as_partition_validation():
    assert pt.as_partition((3, 1, 0, 0)) == (3, 1)
    with pytest.raises(ValueError):
        pt.as_partition((1, 2))
    with pytest.raises(ValueError):
        pt.as_partition((2, -1))


def test_bijection_paper_example():
    signs = pt.parse_signs("-+--++---+")
    assert pt.partition_from_string(signs, 4, 6) == (6, 3, 3, 1)
    assert pt.string_from_partition((6, 3, 3, 1), 4, 6) == signs


def test_bijection_small_cases():
    assert pt.partition_from_string("++--", 2, 2) == ()
    assert pt.string_from_partition((), 2, 2) == (1, 1, -1, -1)
    assert pt.partition_from_string("-+", 1, 1) == (1,)
    assert pt.string_from_partition((1,), 1, 1) == (-1, 1)


def test_bijection_round_trip_exhaustive():
    for p in range(1, 6):
        for m in range(1, 6):
            for lam in pt.partitions_in_box(p, m):
                s = pt.string_from_partition(lam, p, m)
                assert pt.sign_counts(s) == (p, m)
                assert pt.partition_from_string(s, p, m) == pt.strip_zeros(lam)


def test_bijection_errors():
    with pytest.raises(ValueError):
        pt.partition_from_string("-+", 2, 1)
    with pytest.raises(ValueError):
        pt.string_from_partition((3,), 1, 2)
    with pytest.raises(ValueError):
        pt.string_from_partition((1, 1), 1, 2)


def test_interlaces_examples():
    assert pt.interlaces((2, 1), (1, 1))
    assert not pt.interlaces((1,), (2,))
    for k in range(0, 7):
        assert pt.interlaces((k,), ())


def test_skew_values():
    a, b, t = 0.7, 0.4, 0.3
    assert pt.skew_p_one((1,), (), a, t) == pytest.approx(a)
    assert pt.skew_p_one((2, 1), (1, 1), a, t) == pytest.approx(a * (1 - t**2))
    assert pt.skew_p_one((1,), (2,), a, t) == 0.0
    assert pt.skew_q_one((1,), (), b, t) == pytest.approx(b * (1 - t))
    assert pt.skew_q_one((3, 1), (3, 1), b, t) == pytest.approx(1.0)
    assert pt.skew_q_one((2,), (1,), b, t) == pytest.approx(b * (1 - t))


def test_branching_consistency_and_column_increments():
    box = list(pt.partitions_in_box(4, 4))
    for lam in box:
        for mu in box:
            p = pt.skew_p_one(lam, mu, 0.5, 0.37)
            q = pt.skew_q_one(lam, mu, 0.5, 0.37)
            inter = pt.interlaces(lam, mu)
            assert (p != 0) == inter
            assert (q != 0) == inter
            if p != 0:
                assert pt.num_rows(lam) - pt.num_rows(mu) in (0, 1)


def test_cauchy_factor_empty_mu():
    # sum_lam P_lam(a) Q_lam(b) over one-row-bounded... all lam with lam_1 <= R
    a, b, t = 0.45, 0.5, 0.35
    R = 120  # (ab)^R well below 1e-10 tail target
    total = 0.0
    for lam in pt.interlacing_above((), 1, R):
        total += pt.skew_p_one(lam, (), a, t) * pt.skew_q_one(lam, (), b, t)
    # one-row lam only: interlacing over the empty partition
    assert total == pytest.approx((1 - t * a * b) / (1 - a * b), abs=1e-10)


def test_skew_cauchy_general_mu():
    # sum_lam P_{lam/mu}(a) Q_{lam/mu}(b)
    #   = (1-tab)/(1-ab) * sum_kappa Q_{mu/kappa}(b) P_{mu/kappa}(a)
    a, b, t = 0.4, 0.55, 0.3
    R = 140
    for mu in [(1,), (2, 1), (3, 3, 1)]:
        lhs = 0.0
        for lam in pt.interlacing_above(mu, len(mu) + 1, R):
            lhs += pt.skew_p_one(lam, mu, a, t) * pt.skew_q_one(lam, mu, b, t)
        rhs = 0.0
        for kappa in pt.partitions_in_box(len(mu), mu[0]):
            rhs += pt.skew_q_one(mu, kappa, b, t) * pt.skew_p_one(mu, kappa, a, t)
        rhs *= (1 - t * a * b) / (1 - a * b)
        assert lhs == pytest.approx(rhs, abs=1e-10)


def test_sign_class_membership_and_enumeration():
    assert pt.in_sign_class(pt.parse_signs("+-"), 1, 1, +1)
    assert not pt.in_sign_class(pt.parse_signs("-+"), 1, 1, +1)
    assert pt.in_sign_class(pt.parse_signs("-+"), 1, 1, -1)
    strings = list(pt.enumerate_sign_class(2, 2, +1))
    assert strings == [(1, 1, -1, -1), (1, -1, 1, -1)]
    for M in range(1, 4):
        for N in range(1, 4):
            got = list(pt.enumerate_sign_class(M, N, +1))
            assert len(got) == len(set(got))
            assert all(pt.in_sign_class(s, M, N, +1) for s in got)
            import math

            assert len(got) == math.comb(M + N - 2, M - 1)


def test_prefix_counts():
    s = pt.parse_signs("+-+--+")
    for i in range(len(s) + 1):
        p, m = pt.prefix_counts(s, i)
        assert p + m == i
        assert p == sum(1 for x in s[:i] if x == 1)
