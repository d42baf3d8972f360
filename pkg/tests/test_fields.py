from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from logtorelli.fields import GF, QQ, ModP, parse_field


def test_qq_coerces_to_fraction():
    assert QQ(3) == Fraction(3)
    assert QQ(Fraction(1, 2)) == Fraction(1, 2)
    assert QQ.characteristic == 0


def test_fp_arithmetic():
    F = GF(7)
    a, b = F(3), F(5)
    assert a + b == F(1)
    assert a * b == F(1)
    assert a / b == F(3) * F(3)
    assert -a == F(4)
    assert F(Fraction(1, 2)) == F(4)


@pytest.mark.parametrize("p", [0, 1, 4, 9, 2**31 + 11])
def test_bad_primes(p):
    with pytest.raises(ValueError):
        GF(p)


def test_parse_field():
    assert parse_field("q") is QQ
    assert parse_field("fp:101") == GF(101)
    for bad in ("r", "fp:x", "fp:100"):
        with pytest.raises(ValueError):
            parse_field(bad)


@given(st.integers(), st.integers(min_value=1, max_value=10**6))
def test_fp_division_inverts_multiplication(a, b):
    F = GF(10007)
    if b % 10007 == 0:
        return
    assert (F(a) * F(b)) / F(b) == F(a)


def test_modp_rejects_mixed_primes():
    with pytest.raises((TypeError, ValueError)):
        ModP(1, 5) + ModP(1, 7)
