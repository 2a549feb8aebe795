"""Field arithmetic checks, including randomized axiom suites."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from lieclassical.fields import GF, QQ, field_from_token, quadratic_nonresidue


def test_quadratic_nonresidue_small_primes():
    assert quadratic_nonresidue(3) == 2
    assert quadratic_nonresidue(5) == 2
    assert quadratic_nonresidue(7) == 3


def test_quadratic_nonresidue_rejects_two():
    with pytest.raises(ValueError):
        quadratic_nonresidue(2)


def test_gf4_unsupported():
    with pytest.raises(ValueError):
        GF(2, 2)


def test_prime_field_basics():
    K = GF(5)
    assert K.add(3, 4) == 2
    assert K.mul(3, 4) == 2
    assert K.inv(2) == 3
    assert K.neg(1) == 4
    assert K.is_square(4) and not K.is_square(2)
    assert sorted(K.elements()) == [0, 1, 2, 3, 4]


def test_quadratic_field_basics():
    K = GF(3, 2)
    # x^2 = 2 = -1 mod 3
    assert K.nonresidue == 2
    x = (0, 1)
    assert K.mul(x, x) == K.of(-1)
    assert K.sqrt_of_minus_one() == (0, 1)
    assert K.order() == 9
    for a in K.elements():
        if not K.is_zero(a):
            assert K.mul(a, K.inv(a)) == K.one()


def test_rational_is_square():
    assert QQ.is_square(Fraction(4, 9))
    assert not QQ.is_square(Fraction(2))
    assert not QQ.is_square(Fraction(-1))


def test_field_tokens_round_trip():
    for K in (QQ, GF(7), GF(3, 2)):
        assert field_from_token(K.token) == K


def test_scalar_format_round_trip():
    rng = random.Random(7)
    for K in (QQ, GF(2), GF(7), GF(5, 2)):
        for _ in range(50):
            a = K.random(rng)
            assert K.parse(K.fmt(a)) == a


def test_field_axioms_randomized():
    rng = random.Random(0)
    for K in (QQ, GF(2), GF(3), GF(7), GF(3, 2), GF(5, 2)):
        for _ in range(200):
            a, b, c = (K.random(rng) for _ in range(3))
            assert K.add(K.add(a, b), c) == K.add(a, K.add(b, c))
            assert K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c))
            assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
            assert K.add(a, K.neg(a)) == K.zero()
            if not K.is_zero(a):
                assert K.mul(a, K.inv(a)) == K.one()
