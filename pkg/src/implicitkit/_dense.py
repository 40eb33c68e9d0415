"""Index tables for dense homogeneous polynomials.

A homogeneous polynomial of degree D in m variables is stored as a vector
indexed by the monomials of degree D in descending lex order (the order of
``poly.exponent_tuples``).  Monomials are encoded as mixed-radix integer keys
so that products are key sums and the lex order is the key order.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .poly import exponent_tuples


def radix(m: int, max_degree: int) -> int:
    return max_degree + 1


@lru_cache(maxsize=None)
def keys(m: int, degree: int, base: int) -> np.ndarray:
    """Keys of the degree-``degree`` monomials, in descending order."""
    exps = np.array(exponent_tuples(m, degree), dtype=np.int64).reshape(-1, m)
    weights = base ** np.arange(m - 1, -1, -1, dtype=np.int64)
    return exps @ weights


def rank_of(m: int, degree: int, base: int, query: np.ndarray) -> np.ndarray:
    """Index of each key in ``keys(m, degree)``; -1 where absent."""
    ks = keys(m, degree, base)[::-1]
    pos = np.searchsorted(ks, query)
    pos = np.clip(pos, 0, len(ks) - 1)
    found = ks[pos] == query
    return np.where(found, len(ks) - 1 - pos, -1)


@lru_cache(maxsize=256)
def product_table(m: int, d1: int, d2: int, base: int) -> np.ndarray:
    """table[i, j] = index of monomial_i(d1) * monomial_j(d2) in degree d1+d2."""
    k1, k2 = keys(m, d1, base), keys(m, d2, base)
    return rank_of(m, d1 + d2, base, k1[:, None] + k2[None, :]).astype(np.int64)


@lru_cache(maxsize=256)
def quotient_index(m: int, dnum: int, dden_lead_key: int, dquot: int, base: int) -> np.ndarray:
    """For each monomial u of degree dnum: index of u / lead in degree dquot, or -1."""
    k = keys(m, dnum, base)
    return rank_of(m, dquot, base, k - dden_lead_key).astype(np.int64)


def count(m: int, degree: int) -> int:
    return len(exponent_tuples(m, degree))
