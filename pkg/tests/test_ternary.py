import random
from fractions import Fraction

import pytest

from okamoto import DomainError, digit_stats, ternary_rational, to_ternary
from okamoto.ternary import TernaryExpansion


def test_to_ternary_zero():
    assert to_ternary(0, 5).digits == (0, 0, 0, 0, 0)


def test_to_ternary_one_is_all_twos():
    e = to_ternary(1, 4)
    assert e.digits == (2, 2, 2, 2)
    assert e.is_one


def test_to_ternary_third_terminates():
    e = to_ternary(1 / 3, 4)
    assert e.digits == (1, 0, 0, 0)
    assert not e.is_truncation


def test_to_ternary_rejects_outside_unit_interval():
    with pytest.raises(DomainError):
        to_ternary(-0.1, 3)
    with pytest.raises(DomainError):
        to_ternary(1.5, 3)
    with pytest.raises(DomainError):
        to_ternary(0.5, 0)


def test_to_ternary_prefix_error_bound():
    # |x - sum d_p 3^-p| <= 3^-n for assorted x and n
    rng = random.Random(42)
    for _ in range(200):
        x = rng.random()
        n = rng.randint(1, 40)
        e = to_ternary(x, n)
        err = abs(Fraction(x) - e.partial_value())
        assert err <= Fraction(1, 3**n)


def test_ternary_rational_examples():
    assert ternary_rational(0, 3).digits == (0, 0, 0)
    assert ternary_rational(5, 2).digits == (1, 2)
    e = ternary_rational(9, 2)
    assert e.digits == (2, 2) and e.is_one


def test_ternary_rational_range_check():
    with pytest.raises(DomainError):
        ternary_rational(10, 2)
    with pytest.raises(DomainError):
        ternary_rational(-1, 2)


def test_round_trip_float_matches_exact_digits():
    rng = random.Random(7)
    for _ in range(500):
        i = rng.randint(1, 12)
        k = rng.randint(0, 3**i)
        assert to_ternary(k / 3**i, i).digits == ternary_rational(k, i).digits


def test_round_trip_exact_fraction_input():
    rng = random.Random(8)
    for _ in range(200):
        i = rng.randint(1, 12)
        k = rng.randint(0, 3**i - 1)
        e = to_ternary(Fraction(k, 3**i), i)
        assert e.digits == ternary_rational(k, i).digits
        assert not e.is_truncation


def test_digit_stats_direct_count():
    e = TernaryExpansion((1, 0, 0, 1, 0, 0))
    s = digit_stats(e, 6)
    assert s.ones_count == 2
    assert s.ratio == Fraction(1, 3)


def test_digit_stats_all_zero():
    s = digit_stats(TernaryExpansion((0,) * 10), 10)
    assert s.ones_count == 0 and s.ratio == 0


def test_digit_stats_periodic_pattern():
    e = TernaryExpansion((0, 1, 2) * 100)
    s = digit_stats(e, 300)
    assert s.ones_count == 100
    assert s.ratio == Fraction(1, 3)
    assert s.gamma_estimate <= Fraction(1, 3)


def test_digit_stats_gamma_is_min_over_last_half():
    # ones at the very start only: i(m)/m decreases, minimum at m = n
    e = TernaryExpansion((1, 1, 1, 0, 0, 0, 0, 0))
    s = digit_stats(e, 8)
    assert s.gamma_estimate == Fraction(3, 8)


def test_digit_stats_rejects_bad_prefix():
    e = TernaryExpansion((0, 1))
    with pytest.raises(DomainError):
        digit_stats(e, 0)
    with pytest.raises(DomainError):
        digit_stats(e, 3)


def test_invalid_digits_rejected():
    with pytest.raises(DomainError):
        TernaryExpansion((0, 3))


def test_padded_terminating_and_one():
    e = ternary_rational(5, 2)
    assert e.padded(6).digits == (1, 2, 0, 0, 0, 0)
    one = ternary_rational(9, 2)
    assert one.padded(5).digits == (2,) * 5
    with pytest.raises(DomainError):
        TernaryExpansion((0, 1), is_truncation=True).padded(4)
