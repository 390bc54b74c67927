"""Scalar fields: coercion, arithmetic, string round trips, prime handling."""

from fractions import Fraction

import pytest

from monadforge.fields import (
    DEFAULT_PRIME,
    PRIME_ENV_VAR,
    BadPrimeError,
    MixedFieldError,
    PrimeField,
    QQ,
    ScalarFormatError,
    default_prime,
    is_prime,
    same_field,
)


def test_default_prime_is_the_largest_below_2_62():
    assert is_prime(DEFAULT_PRIME)
    assert DEFAULT_PRIME < 2**62
    # no prime strictly between the default and 2**62
    for m in range(DEFAULT_PRIME + 1, 2**62):
        assert not is_prime(m)


def test_is_prime_small_cases():
    known = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}
    for m in range(43):
        assert is_prime(m) == (m in known)
    assert is_prime(2**61 - 1)          # Mersenne prime
    assert not is_prime(2**62 - 1)


def test_env_override(monkeypatch):
    monkeypatch.setenv(PRIME_ENV_VAR, "1000003")
    assert default_prime() == 1000003
    monkeypatch.setenv(PRIME_ENV_VAR, "1000004")
    with pytest.raises(BadPrimeError):
        default_prime()
    monkeypatch.delenv(PRIME_ENV_VAR)
    assert default_prime() == DEFAULT_PRIME


def test_qq_strings_are_reduced_and_round_trip():
    assert QQ.from_str("6/4") == Fraction(3, 2)
    assert QQ.to_str(Fraction(-3, 7)) == "-3/7"
    assert QQ.to_str(Fraction(5)) == "5"
    assert QQ.from_str(QQ.to_str(Fraction(22, -7))) == Fraction(-22, 7)
    for bad in ("", "1/0", "1/-2", "a", "1/2/3", " 1"):
        with pytest.raises(ScalarFormatError):
            QQ.from_str(bad)


def test_prime_field_arithmetic():
    f = PrimeField(101)
    assert f.add(100, 2) == 1
    assert f.mul(f.inv(7), 7) == 1
    assert f.of(Fraction(1, 2)) == 51
    assert f.of(-1) == 100
    assert f.from_str("-3/7") == f.div(f.of(-3), f.of(7))
    with pytest.raises(ZeroDivisionError):
        f.inv(0)
    with pytest.raises(ZeroDivisionError):
        f.of(Fraction(1, 101))


def test_prime_field_validation():
    with pytest.raises(BadPrimeError):
        PrimeField(91)            # 7 * 13
    with pytest.raises(BadPrimeError):
        PrimeField(2)             # characteristic 2 unsupported
    with pytest.raises(BadPrimeError):
        PrimeField(2**62 + 57)    # out of range


def test_mixed_field_guard():
    with pytest.raises(MixedFieldError):
        same_field(QQ, PrimeField(101))
    assert same_field(PrimeField(101), PrimeField(101)) == PrimeField(101)
