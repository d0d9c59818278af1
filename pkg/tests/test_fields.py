"""Exact field arithmetic: canonical forms, field axioms, JSON encoding."""

import random
from fractions import Fraction

import pytest

from cb_lab import FieldSpec, Scalar
from cb_lab.errors import DivisionByZeroError, InvalidFieldError, MixedFieldsError
from cb_lab.fields import is_prime


def brute_force_inverse(x: int, p: int) -> int:
    return next(y for y in range(1, p) if x * y % p == 1)


def test_gf7_inverse_examples(gf7):
    assert gf7.scalar(1).inv().value == 1
    # oracle: scan x in 1..6 for 3x == 1 mod 7
    assert brute_force_inverse(3, 7) == 5
    assert gf7.scalar(3).inv().value == 5


def test_rational_arithmetic():
    q = FieldSpec.rational()
    s = q.scalar(Fraction(1, 2)) + q.scalar(Fraction(1, 3))
    assert s.value == Fraction(5, 6)
    assert (q.scalar(2) * q.scalar(Fraction(3, 4))).value == Fraction(3, 2)
    assert (-q.scalar(Fraction(-2, 4))).value == Fraction(1, 2)


def test_inverse_property_randomized(gf101):
    rng = random.Random(101)
    for _ in range(10_000):
        a = rng.randrange(1, 101)
        assert gf101.mul(a, gf101.inv(a)) == 1
    q = FieldSpec.rational()
    for _ in range(10_000):
        a = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        if a != 0:
            assert q.mul(a, q.inv(a)) == 1


def test_canonical_uniqueness(gf7):
    rng = random.Random(5)
    q = FieldSpec.rational()
    for _ in range(500):
        a = rng.randrange(-100, 100)
        b = rng.randrange(-100, 100)
        sa, sb = gf7.scalar(a), gf7.scalar(b)
        assert (sa == sb) == (sa.to_json() == sb.to_json())
        qa = q.scalar(Fraction(a, 7))
        qb = q.scalar(Fraction(b, 7))
        assert (qa == qb) == (qa.to_json() == qb.to_json())


def test_rational_reduces_to_prime_field(gf101):
    """mod-p reduction is a ring homomorphism wherever denominators invert."""
    rng = random.Random(17)
    q = FieldSpec.rational()
    for _ in range(2000):
        a = Fraction(rng.randint(-40, 40), rng.randint(1, 40))
        b = Fraction(rng.randint(-40, 40), rng.randint(1, 40))
        for op in ("add", "sub", "mul"):
            exact = getattr(q, op)(a, b)
            if exact.denominator % 101 == 0:
                continue
            assert gf101.coerce(exact) == getattr(gf101, op)(
                gf101.coerce(a), gf101.coerce(b)
            )


def test_mixed_fields_rejected(gf7, gf101):
    with pytest.raises(MixedFieldsError):
        gf7.scalar(1) + gf101.scalar(1)
    with pytest.raises(MixedFieldsError):
        gf7.scalar(2) * FieldSpec.rational().scalar(2)


def test_division_by_zero(gf7):
    with pytest.raises(DivisionByZeroError):
        gf7.scalar(3) / gf7.scalar(0)
    with pytest.raises(DivisionByZeroError):
        FieldSpec.rational().scalar(0).inv()


def test_field_spec_validation():
    with pytest.raises(InvalidFieldError):
        FieldSpec.prime(1)
    with pytest.raises(InvalidFieldError):
        FieldSpec.prime(91)  # 7 * 13
    with pytest.raises(InvalidFieldError):
        FieldSpec.prime(2**31 + 11)
    with pytest.raises(InvalidFieldError):
        FieldSpec("weird")
    assert FieldSpec.prime(2).p == 2
    assert FieldSpec.prime(2146435069).p == 2146435069  # prime below 2**31


def test_is_prime_matches_trial_division():
    def trial(n):
        if n < 2:
            return False
        return all(n % k for k in range(2, int(n**0.5) + 1))

    for n in range(2000):
        assert is_prime(n) == trial(n), n


def test_scalar_json_round_trip(gf101):
    q = FieldSpec.rational()
    assert gf101.scalar(42).to_json() == 42
    assert Scalar.from_json(gf101, 42).value == 42
    assert q.scalar(Fraction(-3, 4)).to_json() == "-3/4"
    assert q.scalar(5).to_json() == "5"
    assert Scalar.from_json(q, "-3/4").value == Fraction(-3, 4)
    assert FieldSpec.from_json(gf101.to_json()) == gf101
    assert FieldSpec.from_json(q.to_json()) == q


def test_scalars_hashable_and_frozen(gf7):
    s = gf7.scalar(3)
    assert hash(s) == hash(gf7.scalar(10))  # 10 == 3 mod 7
    with pytest.raises(Exception):
        s.value = 4


def test_float_rejected():
    with pytest.raises(InvalidFieldError):
        FieldSpec.rational().coerce(0.5)
