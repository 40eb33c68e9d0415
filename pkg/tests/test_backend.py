"""The compiled kernels and the pure-Python fallback must agree exactly."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from implicitkit import _backend, _fallback

try:
    from implicitkit import _kernels
except ImportError:  # extension not built
    _kernels = None

needs_ext = pytest.mark.skipif(_kernels is None, reason="compiled kernels not built")

PRIMES = [2, 13, 101, 1000003, 2305843009213693951]


def test_backend_name():
    assert _backend.BACKEND in ("cython", "python")


@needs_ext
@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), p=st.sampled_from(PRIMES))
def test_rref_agrees(seed, p):
    rng = random.Random(seed)
    r, c = rng.randint(1, 9), rng.randint(1, 9)
    rows = [[rng.randrange(p) if rng.random() < 0.6 else 0 for _ in range(c)] for _ in range(r)]
    assert _kernels.rref_mod_p(rows, p) == _fallback.rref_mod_p(rows, p)


@needs_ext
@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6), p=st.sampled_from(PRIMES), m=st.integers(2, 4))
def test_det_agrees(seed, p, m):
    rng = random.Random(seed)
    r = rng.randint(1, 6)
    entries = [[[rng.randrange(p) if rng.random() < 0.7 else 0 for _ in range(m)]
                for _ in range(r)] for _ in range(r)]
    assert list(_kernels.det_linear_mod_p(entries, p)) == list(_fallback.det_linear_mod_p(entries, p))


def test_integer_det_matches_sympy():
    import sympy
    rng = random.Random(3)
    r, m = 4, 3
    entries = [[[rng.randint(-5, 5) for _ in range(m)] for _ in range(r)] for _ in range(r)]
    T = sympy.symbols("t1:4")
    M = sympy.Matrix(r, r, lambda i, j: sum(c * t for c, t in zip(entries[i][j], T)))
    expected = sympy.Poly(M.det(method="berkowitz"), *T)
    got = _backend.det_linear_int(entries)
    from implicitkit.poly import exponent_tuples
    for exps, c in zip(exponent_tuples(m, r), got):
        assert expected.coeff_monomial(exps) == c
