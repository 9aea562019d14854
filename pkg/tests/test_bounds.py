"""Closed-form bound oracles: pinned values, preconditions, structure."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dekkersum.bounds import (
    BoundInput,
    BoundNotApplicableError,
    bound_6op_pair,
    bound_6op_s_only,
    bound_compensated,
    bound_compensated_s_only,
    bound_for,
    bound_kahan_leading,
    bound_leading,
    bound_plain,
    format_sig3,
    sigma_tau,
    unit_roundoff,
)
from dekkersum.summation import Algorithm

EPS32 = unit_roundoff(2, 24)
EPS64 = unit_roundoff(2, 53)


def _b(n, eps, s=1):
    return BoundInput(n=n, eps=eps, sum_abs=Fraction(s))


def test_unit_roundoff():
    assert EPS32 == Fraction(1, 2**24)
    assert EPS64 == Fraction(1, 2**53)
    assert unit_roundoff(10, 3) == Fraction(1, 200)


def test_input_validation():
    with pytest.raises(ValueError):
        BoundInput(n=0, eps=EPS64, sum_abs=Fraction(1))
    with pytest.raises(ValueError):
        BoundInput(n=4, eps=Fraction(2, 3), sum_abs=Fraction(1))
    with pytest.raises(ValueError):
        BoundInput(n=4, eps=EPS64, sum_abs=Fraction(1), abs_sum=Fraction(2))


def test_plain_closed_form():
    b = _b(2**20, EPS32)
    ne = 2**20 * EPS32
    assert bound_plain(b) == ne / (1 - ne)
    assert format_sig3(bound_plain(b)) == "6.67E-02"


def test_plain_not_applicable():
    with pytest.raises(BoundNotApplicableError):
        bound_plain(BoundInput(n=100, eps=Fraction(1, 8), sum_abs=Fraction(1)))


def test_compensated_not_applicable():
    huge_eps = Fraction(1, 4)
    with pytest.raises(BoundNotApplicableError):
        bound_compensated(Algorithm.DOUBLE6OP, BoundInput(n=100, eps=huge_eps, sum_abs=Fraction(1)))


def test_sigma_tau_values():
    st_d = sigma_tau(Algorithm.DOUBLE6OP, EPS64)
    assert st_d.sigma == 2 * EPS64**2 + EPS64**3
    assert st_d.tau == EPS64**2
    st_t = sigma_tau(Algorithm.TRIPLE6OP, EPS64)
    assert st_t.sigma == EPS64**2 + EPS64**3 + EPS64**4
    assert st_t.tau == 2 * EPS64**2 + EPS64**3
    with pytest.raises(ValueError):
        sigma_tau(Algorithm.PLAIN, EPS64)


def test_6op_pair_closed_form():
    b = _b(2**20, EPS32)
    n1 = (2**20 - 1) * EPS32**2
    expected = EPS32 + n1 / (1 - n1) + n1 / (1 - n1) * EPS32
    assert bound_6op_pair(b) == expected
    assert format_sig3(bound_6op_pair(b)) == "6.33E-08"


def test_small_n_exact_rationals():
    # n=4 double-compensated at binary64: 7 eps^2 + 3 eps^3 to leading terms.
    b = _b(4, EPS64)
    got = bound_compensated(Algorithm.DOUBLE6OP, b)
    assert format_sig3(got) == "8.63E-32"
    # and the dominant term really is (2n-1) eps^2
    lead = bound_leading(Algorithm.DOUBLE6OP, b)
    assert lead == 7 * EPS64**2
    assert abs(got - lead) < EPS64**3 * 10


def test_leading_orders():
    b = _b(16, EPS32)
    assert bound_leading(Algorithm.PLAIN, b) == 16 * EPS32
    assert bound_leading(Algorithm.KAHAN3OP, b) == 2 * EPS32
    assert bound_leading(Algorithm.COMP6OP, b) == EPS32
    assert bound_leading(Algorithm.DOUBLE6OP, b) == 31 * EPS32**2
    assert format_sig3(bound_leading(Algorithm.DOUBLE6OP, b)) == "1.10E-13"
    assert bound_leading(Algorithm.TRIPLE6OP, b) == 17 * EPS32**2


def test_s_only_forms():
    b = BoundInput(n=256, eps=EPS64, sum_abs=Fraction(10), abs_sum=Fraction(3))
    pair = bound_6op_pair(b)
    assert bound_6op_s_only(b) == (1 + EPS64) * pair + EPS64 * 3
    cpair = bound_compensated(Algorithm.TRIPLE6OP, b)
    assert bound_compensated_s_only(Algorithm.TRIPLE6OP, b) == (1 + EPS64) * cpair + EPS64 * 3
    with pytest.raises(ValueError):
        bound_6op_s_only(_b(256, EPS64))


def test_dispatch():
    b = _b(1024, EPS32)
    assert bound_for(Algorithm.PLAIN, b) == bound_plain(b)
    assert bound_for(Algorithm.COMP6OP, b) == bound_6op_pair(b)
    assert bound_for(Algorithm.DOUBLE6OP, b) == bound_compensated(Algorithm.DOUBLE6OP, b)
    assert bound_for(Algorithm.TRIPLE6OP, b) == bound_compensated(Algorithm.TRIPLE6OP, b)
    kahan = bound_for(Algorithm.KAHAN3OP, b)
    assert kahan == bound_kahan_leading(b) + 4 * 1024 * EPS32**2
    assert kahan > bound_kahan_leading(b)


def test_bounds_scale_linearly_with_sum_abs():
    b1 = _b(64, EPS64, 1)
    b7 = _b(64, EPS64, 7)
    for algo in Algorithm:
        assert bound_for(algo, b7) == 7 * bound_for(algo, b1)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 10**7), st.sampled_from([EPS32, EPS64]))
def test_bounds_monotone_in_n(n, eps):
    b1 = _b(n, eps)
    b2 = _b(n + 1, eps)
    for algo in Algorithm:
        assert bound_for(algo, b1) <= bound_for(algo, b2)


def test_format_sig3():
    assert format_sig3(Fraction(1, 15)) == "6.67E-02"
    assert format_sig3(Fraction(0)) == "0.00E+00"
