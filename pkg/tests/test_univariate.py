import random

import sympy

from implicitkit import univariate as uni
from implicitkit.arith import ExtensionField, PrimeField


def test_roots_large_prime():
    p = 1000003
    F = PrimeField(p)
    f = [1]
    for r in (5, 17, 99999):
        f = uni.mul(F, f, [F.neg(r), 1])
    f = uni.mul(F, f, [1, 0, 1])  # x^2 + 1 has no root since p = 3 mod 4
    assert sorted(uni.roots(F, f, random.Random(1))) == [5, 17, 99999]


def test_roots_in_extension():
    F = ExtensionField(101, 2)
    assert len(uni.roots(F, [F(99), 0, 1], random.Random(2))) == 2  # x^2 - 2


def test_resultant_against_sympy():
    F = PrimeField(1000003)
    x = sympy.symbols("x")
    a, b = [3, 0, 2, 1], [5, 7, 1]
    expected = sympy.resultant(sum(c * x**k for k, c in enumerate(a)),
                               sum(c * x**k for k, c in enumerate(b)), x) % F.p
    assert uni.resultant(F, a, b) == expected


def test_interpolate_recovers_polynomial():
    F = PrimeField(101)
    f = [4, 5, 6]
    xs = [1, 2, 3]
    assert uni.interpolate(F, xs, [uni.evaluate(F, f, x) for x in xs]) == f
