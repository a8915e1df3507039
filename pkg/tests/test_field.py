from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from isolab.errors import FieldError
from isolab.field import (
    FieldScalar,
    format_scalar,
    imag_unit,
    is_rational,
    parse_scalar,
    sqrt_in_field,
    zeta,
)

small = st.fractions(min_value=-20, max_value=20, max_denominator=6)
elements = st.lists(small, min_size=4, max_size=4).map(lambda cs: FieldScalar(tuple(cs)))


def test_zeta_has_order_eight():
    z = zeta(1)
    assert z ** 8 == 1
    assert z ** 4 == -1
    assert all(z ** k != 1 for k in range(1, 8))


def test_imaginary_unit():
    i = imag_unit()
    assert i * i == -1
    assert i == zeta(2)


def test_rational_values_demote():
    i = imag_unit()
    x = i * i + Fraction(1, 2)
    assert is_rational(x)
    assert x == Fraction(-1, 2)


@given(elements, elements, elements)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(elements)
def test_inverse(a):
    if not a:
        return
    assert a * a.inverse() == 1


@given(elements)
def test_format_parse_roundtrip(a):
    assert parse_scalar(format_scalar(a)) == a


@pytest.mark.parametrize("text,value", [("1/2", Fraction(1, 2)), ("-3", -3), ("i*i", -1), ("z^4", -1), ("(1+i)*(1-i)", 2)])
def test_parse_literals(text, value):
    assert parse_scalar(text) == value


def test_parse_rejects_garbage():
    with pytest.raises(FieldError):
        parse_scalar("1 +")


@pytest.mark.parametrize("x", [4, Fraction(9, 4), -1, "i", "-i", "2*i"])
def test_square_roots(x):
    x = parse_scalar(x) if isinstance(x, str) else x
    r = sqrt_in_field(x)
    assert r * r == x


def test_square_root_missing():
    with pytest.raises(FieldError):
        sqrt_in_field(3)


@given(st.integers(min_value=1, max_value=30), st.integers(min_value=0, max_value=7))
def test_square_roots_of_scaled_units(n, k):
    for q in (n * n, 2 * n * n):
        x = q * zeta(k)
        if k % 2:
            # would need a primitive 16th root of unity
            with pytest.raises(FieldError):
                sqrt_in_field(x)
        else:
            r = sqrt_in_field(x)
            assert r * r == x
