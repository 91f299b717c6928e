from fractions import Fraction as F

import pytest

from telesum.errors import DivisionByZero
from telesum.rational import (const, format_rational, prod_range, rat, rat_div,
                              rat_pow, seq)
from telesum.sampling import rng_for, sample_rational


def test_exact_fraction_addition():
    assert F(2, 3) + F(1, 6) == F(5, 6)


def test_negative_integer_power():
    assert rat_pow(F(2), -3) == F(1, 8)


def test_inverse_pair():
    assert F(3, 5) * F(5, 3) == 1


def test_rat_checked_constructor():
    assert rat(6, 4) == F(3, 2)
    with pytest.raises(DivisionByZero):
        rat(1, 0)


def test_rat_div_by_zero():
    with pytest.raises(DivisionByZero):
        rat_div(F(1), F(0))
    with pytest.raises(DivisionByZero):
        rat_pow(F(0), -2)


def test_canonical_form_after_operations():
    rng = rng_for(1, "canonical")
    for _ in range(300):
        a = sample_rational(rng)
        b = sample_rational(rng)
        for value in (a + b, a - b, a * b, rat_div(a, b)):
            assert value.denominator > 0
            from math import gcd
            assert gcd(abs(value.numerator), value.denominator) == 1


def test_field_axioms_spot_checked():
    rng = rng_for(2, "axioms")
    for _ in range(200):
        a, b, c = (sample_rational(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a


def test_prod_range_empty():
    f = const(F(9))
    assert prod_range(f, 1, 0) == 1


def test_prod_range_inverted_single():
    f = seq([F(5)], start=0)
    assert prod_range(f, 1, -1) == F(1, 5)


def test_prod_range_forward():
    f = lambda j: F(j)
    assert prod_range(f, 2, 5) == 120


def test_prod_range_inverted_zero_factor():
    f = lambda j: F(j)  # f(0) = 0
    with pytest.raises(DivisionByZero):
        prod_range(f, 1, -1)


def test_prod_range_extension_law_exhaustive():
    # prod(f, lo, m-1) * f(m) == prod(f, lo, m) for every -8 <= lo, m <= 8
    rng = rng_for(3, "extension")
    values = {j: sample_rational(rng) for j in range(-10, 11)}
    f = lambda j: values[j]
    for lo in range(-8, 9):
        for m in range(-8, 9):
            assert prod_range(f, lo, m - 1) * f(m) == prod_range(f, lo, m)


def test_format_rational():
    assert format_rational(F(-5, 8)) == "-5/8"
    assert format_rational(F(7)) == "7"
    assert format_rational(F(0)) == "0"
    assert format_rational(F(-12, 4)) == "-3"
