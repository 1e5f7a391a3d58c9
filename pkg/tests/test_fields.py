import random
from fractions import Fraction

import pytest

from hesspairs import GF, QQ, enumerate_field, field_add, field_inv, field_mul
from hesspairs.errors import (
    DivisionByZeroError,
    InfiniteFieldError,
    MixedFieldsError,
    NotPrimeError,
)


def test_rational_addition_exact():
    a = QQ.element("1/2")
    b = QQ.element("1/3")
    assert (a + b) == QQ.element("5/6")


def test_gf5_inverse():
    assert GF(5).element(3).inv() == GF(5).element(2)


def test_gf7_product():
    assert GF(7).element(4) * GF(7).element(5) == GF(7).element(6)


def test_enumerate_small_fields():
    assert [e.value for e in enumerate_field(GF(2))] == [0, 1]
    assert [e.value for e in enumerate_field(GF(3))] == [0, 1, 2]
    five = list(enumerate_field(GF(5)))
    assert len(five) == 5
    assert len(set(five)) == 5


def test_enumerate_rationals_rejected():
    with pytest.raises(InfiniteFieldError):
        enumerate_field(QQ)


def test_mixed_fields_rejected():
    with pytest.raises(MixedFieldsError):
        field_add(GF(5).element(1), GF(7).element(1))
    with pytest.raises(MixedFieldsError):
        field_mul(QQ.element(1), GF(5).element(1))


def test_inverse_of_zero_rejected():
    with pytest.raises(DivisionByZeroError):
        field_inv(QQ.element(0))
    with pytest.raises(DivisionByZeroError):
        field_inv(GF(11).element(0))


def test_non_prime_modulus_rejected():
    for bad in (1, 4, 9, 15, 2**31):
        with pytest.raises(NotPrimeError):
            GF(bad)


@pytest.mark.parametrize("spec", [QQ, GF(2), GF(5), GF(97)])
def test_field_axioms_randomized(spec):
    rng = random.Random(7)
    for _ in range(120):
        a = spec.element(spec.rand(rng))
        b = spec.element(spec.rand(rng))
        c = spec.element(spec.rand(rng))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + spec.element(0) == a
        assert a * spec.element(1) == a
        assert a + (-a) == spec.element(0)


@pytest.mark.parametrize("spec", [QQ, GF(3), GF(101)])
def test_inverse_involution(spec):
    rng = random.Random(11)
    for _ in range(60):
        a = spec.element(spec.rand_nonzero(rng))
        assert field_inv(field_inv(a)) == a
        assert a * field_inv(a) == spec.element(1)


def test_canonicalization_idempotent():
    # Re-coercing a canonical value changes nothing.
    x = QQ.element(Fraction(6, 4))
    assert x.value == Fraction(3, 2)
    assert QQ.element(x) == x
    y = GF(7).element(23)
    assert y.value == 2
    assert GF(7).element(y) == y


@pytest.mark.parametrize("spec", [QQ, GF(13)])
def test_text_round_trip(spec):
    rng = random.Random(3)
    for _ in range(40):
        v = spec.rand(rng)
        assert spec.parse(spec.format(v)) == v


def test_rational_text_form():
    assert QQ.format(Fraction(-5, 6)) == "-5/6"
    assert QQ.format(Fraction(4)) == "4"
    assert QQ.parse("7/2") == Fraction(7, 2)
    with pytest.raises(ValueError):
        QQ.parse("x")


def test_gf_text_form():
    spec = GF(5)
    assert spec.format(3) == "3"
    assert spec.parse("-1") == 4
    with pytest.raises(ValueError):
        spec.parse("2/3")


def test_element_str_and_bool():
    assert str(QQ.element("3/9")) == "1/3"
    assert bool(GF(5).element(5)) is False
    assert bool(GF(5).element(4)) is True


def test_subtraction_wraps():
    from hesspairs import field_sub

    assert field_sub(GF(5).element(1), GF(5).element(3)) == GF(5).element(3)
    assert field_sub(QQ.element("1/2"), QQ.element("1/3")) == QQ.element("1/6")
