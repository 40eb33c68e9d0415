import random

import pytest
from hypothesis import given, settings, strategies as st

from implicitkit.arith import QQ, PrimeField
from implicitkit.errors import DimensionMismatch, DivisibilityError, ParseError, PreconditionError
from implicitkit.poly import (Ring, eval_poly, exact_div, homogenize_x, monomial_basis,
                              multivariate_gcd, parse_poly)


def test_parse_examples(R2, R3):
    p = parse_poly("X1^3 - 0", R2)
    assert p == R2.X(1) ** 3 and p.bidegree() == (3, 0)
    q = parse_poly("X2*T1 - X1*T2", R2)
    assert q.bidegree() == (1, 1)
    G = parse_poly("T2^2 + 2*T3*T4 + T3^2 + T4^2", R3)
    assert G.bidegree() == (0, 2) and len(G) == 4


@pytest.mark.parametrize("text", ["X4", "T5", "X1^", "X1^-2", "3*", "Y1", "X1**2"])
def test_parse_errors(R3, text):
    with pytest.raises(ParseError):
        parse_poly(text, R3)


def test_parse_characteristic_divides_denominator():
    with pytest.raises(ParseError):
        parse_poly("1/13*X1", Ring(2, PrimeField(13)))


def test_parse_rational_coefficients(R2):
    p = parse_poly("1/2*X1 + 3/4*X2 - 2/8*X1", R2)
    assert str(p) == "1/4*X1 + 3/4*X2"


def test_round_trip(R3):
    text = "T1^2*T2^6 + T1^2*T2^4*T3^2 - 2*T1*T2^5*T3*T4 + T2^6*T3^2"
    assert str(parse_poly(text, R3)) == text


def test_eval_examples(R2):
    p = parse_poly("X2*T1 - X1*T2", R2)
    assert eval_poly(p, [1, 0]) == -R2.T(2)
    assert not eval_poly(p, [0, 0])
    assert eval_poly(p, [1, 0], [1, 2, 3]) == -2
    with pytest.raises(DimensionMismatch):
        eval_poly(p, [1, 0, 0])


def test_eval_example_matrix_at_base_point():
    from implicitkit.corpus import example_matrix
    from implicitkit.linalg import ScalarMatrix, rank, rref
    F = PrimeField(13)
    M = example_matrix(F)
    for eps in (5, 8):  # the two square roots of -1 mod 13
        vals = ScalarMatrix(F, [[M[i, j].eval([1, 0, eps], None).constant_value()
                                 for j in range(3)] for i in range(4)])
        assert rank(vals) == 1
        cols = [[vals[i, j] for i in range(4)] for j in range(3)]
        nonzero = [c for c in cols if any(c)]
        assert all(c == [0, 1, eps, eps] for c in nonzero)


def test_exact_div_examples():
    R = Ring(3, QQ)
    T = R.T
    q = T(1) * T(3) - T(2) ** 2
    assert exact_div(q * T(1), T(1)) == q
    assert exact_div(q, q) == R.one()
    with pytest.raises(DivisibilityError):
        exact_div(T(2) ** 3 - T(1) ** 2 * T(3), T(2) - T(1))


def test_gcd_examples():
    R = Ring(3, QQ)
    T = R.T
    q = T(1) * T(3) - T(2) ** 2
    assert multivariate_gcd(T(1) * q, T(2) * q) == q
    p = (q * T(4)).scale(-6)
    assert multivariate_gcd(p, R.zero()) == p.normalize()
    assert multivariate_gcd(T(1), T(2)) == R.one()


def test_homogenize_examples(R3):
    p = parse_poly("X1*X2*T2 + T3 + X1^2*T3 - 2*X1*T4", R3)
    expected = parse_poly("X1*X2*T2 + X3^2*T3 + X1^2*T3 - 2*X1*X3*T4", R3)
    assert homogenize_x(p, 2) == expected
    assert homogenize_x(R3.one(), 2) == R3.X(3) ** 2
    assert homogenize_x(R3.X(1) ** 2, 2) == R3.X(1) ** 2
    with pytest.raises(PreconditionError):
        homogenize_x(R3.X(1) ** 3, 2)


def test_monomial_basis_examples(R2, R3):
    assert [R2.unpack(m)[:2] for m in monomial_basis(R2, 2)] == [(2, 0), (1, 1), (0, 2)]
    assert [R3.unpack(m)[:3] for m in monomial_basis(R3, 1)] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert monomial_basis(R3, 0) == [R3.one().leading_monomial()]


def test_normalization_convention():
    R = Ring(3, QQ)
    p = parse_poly("-2/3*T1*T2 + 4/9*T3^2", R)
    assert str(p.normalize()) == "3*T1*T2 - 2*T3^2"
    Rp = Ring(3, PrimeField(13))
    assert parse_poly("5*T1 + T2", Rp).normalize().leading_coefficient() == 1


# -- properties ---------------------------------------------------------------

def _random_t_poly(R, rng, nterms, maxdeg):
    n = R.n
    return R.from_terms(
        ((0,) * n + tuple(rng.randint(0, maxdeg) for _ in range(n + 1)), rng.randint(-5, 5))
        for _ in range(nterms))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), prime=st.sampled_from([0, 101, 2305843009213693951]))
def test_exact_div_inverts_product(seed, prime):
    R = Ring(3, PrimeField(prime) if prime else QQ)
    rng = random.Random(seed)
    p = _random_t_poly(R, rng, 5, 3)
    q = _random_t_poly(R, rng, 4, 2)
    if not q:
        return
    assert exact_div(p * q, q) == p


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6), prime=st.sampled_from([0, 13, 101]),
       method=st.sampled_from(["auto", "prs"]))
def test_gcd_divides_and_is_symmetric(seed, prime, method):
    R = Ring(3, PrimeField(prime) if prime else QQ)
    rng = random.Random(seed)
    g = _random_t_poly(R, rng, 3, 2)
    a = _random_t_poly(R, rng, 3, 2) * g
    b = _random_t_poly(R, rng, 3, 2) * g
    if not a and not b:
        return
    h = multivariate_gcd(a, b, method=method)
    for x in (a, b):
        if x:
            exact_div(x, h)
    assert h == multivariate_gcd(b, a, method=method)
    if g:
        exact_div(h, g.normalize())  # the planted factor divides the gcd


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_gcd_methods_agree(seed):
    R = Ring(3, PrimeField(101))
    rng = random.Random(seed)
    g = _random_t_poly(R, rng, 3, 2)
    a = _random_t_poly(R, rng, 3, 2) * g
    b = _random_t_poly(R, rng, 3, 2) * g
    if a or b:
        assert multivariate_gcd(a, b, method="linear") == multivariate_gcd(a, b, method="prs")


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_homogenize_then_dehomogenize(seed):
    R = Ring(3, QQ)
    rng = random.Random(seed)
    p = R.from_terms(((a, b, 0, 0, 1, 0, 0), rng.randint(-4, 4))
                     for a in range(3) for b in range(3 - a) if rng.random() < 0.6)
    if not p:
        return
    h = homogenize_x(p, 3)
    assert h.x_degree() == 3 and all(sum(e[:3]) == 3 for e, _ in h.exponents())
    assert _set_x3_one(h) == p


def _set_x3_one(p):
    R = p.ring
    return R.from_terms(((e[0], e[1], 0) + e[3:], c) for e, c in p.exponents())
