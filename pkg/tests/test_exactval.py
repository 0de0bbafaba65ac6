import math
import random
from fractions import Fraction

import pytest

from bspace.exactval import RadSum, ZERO, ONE, squarefree_split, rad_max


def test_squarefree_split():
    assert squarefree_split(1) == (1, 1)
    assert squarefree_split(4) == (2, 1)
    assert squarefree_split(8) == (2, 2)
    assert squarefree_split(12) == (2, 3)
    assert squarefree_split(360) == (6, 10)
    for n in range(1, 400):
        s, d = squarefree_split(n)
        assert s * s * d == n
        # d squarefree
        for p in range(2, 20):
            assert d % (p * p) != 0


def test_constructors_and_predicates():
    assert ZERO.is_zero and ZERO.is_rational
    assert ONE.as_rational() == 1
    assert RadSum.from_rational(Fraction(3, 7)).as_rational() == Fraction(3, 7)
    r2 = RadSum.sqrt(2)
    assert not r2.is_rational
    with pytest.raises(ValueError):
        r2.as_rational()
    with pytest.raises(ValueError):
        RadSum.sqrt(-1)
    assert RadSum.sqrt(Fraction(9, 4)).as_rational() == Fraction(3, 2)
    assert RadSum.sqrt(0).is_zero


def test_algebraic_identities():
    r2, r3 = RadSum.sqrt(2), RadSum.sqrt(3)
    assert r2 * r2 == RadSum.from_rational(2)
    assert (r2 + r3) * (r2 - r3) == RadSum.from_rational(-1)
    assert r2 * r3 == RadSum.sqrt(6)
    assert (r2 + r3) - r3 == r2
    assert -(-r2) == r2
    assert r2.scale(Fraction(1, 2)) == RadSum.sqrt(Fraction(1, 2))
    # mixed rational operands coerce
    assert r2 + 1 - 1 == r2
    assert 2 * r2 == r2 + r2


def test_exact_comparisons():
    # sqrt(2) + sqrt(3) vs sqrt(10 - eps) style near-ties
    assert RadSum.sqrt(2) + RadSum.sqrt(3) > RadSum.sqrt(Fraction(98, 10))
    assert RadSum.sqrt(2) + RadSum.sqrt(3) < RadSum.sqrt(Fraction(99, 10))
    rng = random.Random(0)
    for _ in range(200):
        a = RadSum({d: Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                    for d in (1, 2, 3, 5)})
        b = RadSum({d: Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                    for d in (1, 2, 3, 5)})
        fa, fb = float(a), float(b)
        if abs(fa - fb) > 1e-9:
            assert (a < b) == (fa < fb)
            assert (a > b) == (fa > fb)
        assert (a == b) == (a - b).is_zero
        assert a <= a and a >= a and a == a


def test_float_and_repr():
    v = RadSum.sqrt(2) + RadSum.from_rational(Fraction(1, 3))
    assert abs(float(v) - (math.sqrt(2) + 1 / 3)) < 1e-12
    assert "sqrt(2)" in repr(v)
    assert repr(ZERO) == "0"


def test_json_roundtrip():
    v = RadSum.sqrt(8) + RadSum.from_rational(Fraction(-2, 5))
    assert RadSum.from_json(v.to_json()) == v
    assert v.to_json() == [[1, "-2/5"], [2, "2"]]


def test_rad_max():
    vals = [RadSum.sqrt(2), ONE, RadSum.sqrt(3).scale(Fraction(4, 5))]
    assert rad_max(vals) == RadSum.sqrt(2)


def test_hash_consistency():
    assert hash(RadSum.sqrt(4)) == hash(RadSum.from_rational(2))
    d = {RadSum.sqrt(2): "a"}
    assert d[RadSum.sqrt(8).scale(Fraction(1, 2))] == "a"
