"""Core simulated-system tests: rounding, canonical forms, enumeration."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dekkersum.dekker import (
    EnumerationGuardError,
    ExactValue,
    Repr,
    SystemParams,
    TIE_AWAY,
    TIE_EVEN,
    TIE_UP,
    canonicalize,
    enumerate_numbers,
    exact_add,
    exact_value,
    exceeds_range,
    fl_add,
    is_valid_repr,
    iter_representations,
    repr_exponent_range,
    repr_to_exact,
    round_exact,
    values_equal,
)

P233 = SystemParams(2, 3, -3, 0)
P = SystemParams(2, 3, -6, 8)


def frac(beta, v):
    return Fraction(v.n) * Fraction(beta) ** v.q


def test_params_validation():
    with pytest.raises(ValueError):
        SystemParams(1, 3, -3, 0)
    with pytest.raises(ValueError):
        SystemParams(2, 0, -3, 0)
    with pytest.raises(ValueError):
        SystemParams(2, 3, 1, 0)


def test_exact_value_canonical():
    assert exact_value(2, 12, 0) == ExactValue(3, 2)
    assert exact_value(2, 0, 17) == ExactValue(0, 0)
    assert exact_value(10, 500, -2) == ExactValue(5, 0)


def test_exact_add():
    a = exact_value(2, 4, 2)    # 16
    b = exact_value(2, -4, -2)  # -1
    assert frac(2, exact_add(2, a, b)) == 15


def test_canonicalize_prefers_normal():
    assert canonicalize(P233, Repr(1, -1)) == Repr(4, -3)
    assert canonicalize(P233, Repr(0, 0)) == Repr(0, -3)
    # subnormal pins at emin
    assert canonicalize(P233, Repr(1, -3)) == Repr(1, -3)


def test_enumeration_count_tiny_system():
    # beta=2, t=3, emin=-3, emax=0: 8 values at emin plus 4 normals in each
    # of the 3 higher bins -> 20 distinct nonnegative numbers, 39 total.
    numbers = enumerate_numbers(P233)
    nonneg = [r for r in numbers if r.m >= 0]
    assert len(nonneg) == 20
    assert len(numbers) == 39


def test_enumeration_matches_bruteforce_dedup():
    for p in (P233, SystemParams(2, 2, -2, 2), SystemParams(3, 2, -1, 1)):
        values = {
            (v.n, v.q)
            for r in iter_representations(p)
            for v in [repr_to_exact(p.beta, r)]
        }
        enumerated = {
            (v.n, v.q)
            for r in enumerate_numbers(p)
            for v in [repr_to_exact(p.beta, r)]
        }
        assert enumerated == values


def test_enumeration_sorted_ascending():
    vals = [frac(2, repr_to_exact(2, r)) for r in enumerate_numbers(P233)]
    assert vals == sorted(vals)
    assert len(set(vals)) == len(vals)


def test_enumeration_guard():
    with pytest.raises(EnumerationGuardError):
        enumerate_numbers(SystemParams(2, 24, -149, 104))


def test_round_exact_is_identity_on_members():
    for r in enumerate_numbers(P233):
        v = repr_to_exact(2, r)
        assert repr_to_exact(2, round_exact(P233, v)) == v


def test_round_exact_nearest_bruteforce():
    # Against a brute-force nearest-element search on a tiny system:
    # every dyadic v = k/16 with |v| <= max element.
    members = sorted(
        {frac(2, repr_to_exact(2, r)) for r in enumerate_numbers(P233)}
    )
    for k in range(-112, 113):
        v = Fraction(k, 16)
        got = frac(2, repr_to_exact(2, round_exact(P233, exact_value(2, k, -4))))
        best = min(abs(m - v) for m in members)
        assert abs(got - v) == best


def test_round_exact_tie_rules():
    # 15 is midway between 14 and 16 in (2,3,-6,8); even mantissa -> 16.
    v = exact_value(2, 15, 0)
    assert frac(2, repr_to_exact(2, round_exact(P, v, TIE_EVEN))) == 16
    assert frac(2, repr_to_exact(2, round_exact(P, v, TIE_AWAY))) == 16
    vn = exact_value(2, -15, 0)
    assert frac(2, repr_to_exact(2, round_exact(P, vn, TIE_EVEN))) == -16
    assert frac(2, repr_to_exact(2, round_exact(P, vn, TIE_AWAY))) == -16
    # half-up breaks the symmetry: -15 -> -14
    assert frac(2, repr_to_exact(2, round_exact(P, vn, TIE_UP))) == -14
    # 13 is midway between 12 and 14; even integer mantissa at E=1 is 6 -> 12.
    v13 = exact_value(2, 13, 0)
    assert frac(2, repr_to_exact(2, round_exact(P, v13, TIE_EVEN))) == 12
    assert frac(2, repr_to_exact(2, round_exact(P, v13, TIE_AWAY))) == 14


def test_round_exact_mantissa_carry():
    # 7.5 at t=3: candidates 7 and 8; 8 needs the next exponent bin.
    v = exact_value(2, 15, -1)
    assert round_exact(P, v) == Repr(4, 1)


def test_round_exact_clipping():
    big = exact_value(2, 1, 20)  # far beyond (M-1) * 2^emax
    assert round_exact(P, big) == Repr(7, 8)
    assert round_exact(P, exact_value(2, -1, 20)) == Repr(-7, 8)
    assert exceeds_range(P, big)
    assert not exceeds_range(P, exact_value(2, 7, 8))


def test_round_exact_subnormal_region():
    # Below the smallest normal, rounding pins to the emin grid.
    v = exact_value(2, 1, -5)  # = 2 * 2^-6: subnormal member
    assert values_equal(P, round_exact(P, v), Repr(2, -6))
    half_min = exact_value(2, 1, -7)  # half the smallest positive number
    got = round_exact(P, half_min)
    assert got.m in (0, 1) and got.e == -6  # tie between 0 and 2^-6 -> even 0
    assert got.m == 0


def test_repr_exponent_range():
    assert repr_exponent_range(P233, exact_value(2, 1, -3)) == (-3, -3)
    assert repr_exponent_range(P233, exact_value(2, 1, 0)) == (-2, 0)
    assert repr_exponent_range(P233, ExactValue(0, 0)) == (-3, 0)
    assert repr_exponent_range(P233, exact_value(2, 1, 4)) is None
    assert repr_exponent_range(P233, exact_value(2, 1, -9)) is None


def test_fl_add_validates_operands():
    with pytest.raises(ValueError):
        fl_add(P233, Repr(8, 0), Repr(1, 0))
    with pytest.raises(ValueError):
        fl_add(P233, Repr(1, 0), Repr(1, 5))


small_systems = st.tuples(
    st.integers(1, 3), st.integers(-3, 0), st.integers(0, 2)
).map(lambda q: SystemParams(2, q[0], q[1], q[2]))


@settings(max_examples=60, deadline=None)
@given(small_systems, st.data())
def test_fl_add_result_is_nearest(p, data):
    numbers = enumerate_numbers(p)
    x = data.draw(st.sampled_from(numbers))
    y = data.draw(st.sampled_from(numbers))
    z = fl_add(p, x, y)
    assert is_valid_repr(p, z)
    exact = frac(p.beta, exact_add(
        p.beta, repr_to_exact(p.beta, x), repr_to_exact(p.beta, y)
    ))
    members = {frac(p.beta, repr_to_exact(p.beta, r)) for r in numbers}
    zf = frac(p.beta, repr_to_exact(p.beta, z))
    if abs(exact) <= (p.M - 1) * Fraction(p.beta) ** p.emax:
        best = min(abs(m - exact) for m in members)
        assert abs(zf - exact) == best
    else:
        assert abs(zf) == (p.M - 1) * Fraction(p.beta) ** p.emax
