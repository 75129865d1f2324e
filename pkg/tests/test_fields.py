import random
from fractions import Fraction

import pytest

from gmf import GF, QQ, FieldError


def _random_scalar(field, rng):
    if field.p is None:
        return Fraction(rng.randint(-50, 50), rng.randint(1, 30))
    return rng.randrange(field.p)


@pytest.mark.parametrize("field", [QQ, GF(32003), GF(5)])
def test_field_axioms_random_triples(field):
    rng = random.Random(12345)
    zero, one = field.zero, field.one
    for _ in range(10_000):
        a = _random_scalar(field, rng)
        b = _random_scalar(field, rng)
        c = _random_scalar(field, rng)
        assert field.add(field.add(a, b), c) == field.add(a, field.add(b, c))
        assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
        assert field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c))
        assert field.add(a, field.neg(a)) == zero
        if a:
            assert field.mul(a, field.inv(a)) == one


def test_prime_field_canonical_range():
    f = GF(7)
    assert f.of(-1) == 6
    assert f.of(15) == 1
    assert f.fraction(1, 3) == 5  # 3 * 5 = 15 = 1 mod 7


def test_prime_field_rejects_composite_and_large():
    with pytest.raises(FieldError):
        GF(10)
    with pytest.raises(FieldError):
        GF(2**31 + 11)


def test_parse_scalars():
    assert QQ.parse("3/4") == Fraction(3, 4)
    assert GF(7).parse("3/4") == GF(7).fraction(3, 4)
    with pytest.raises(FieldError):
        GF(7).fraction(1, 7)
