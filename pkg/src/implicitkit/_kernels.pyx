# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: modular row reduction and dense Bareiss on linear forms."""

import numpy as np
cimport numpy as cnp

from . import _dense
from .errors import DivisibilityError

cnp.import_array()

ctypedef cnp.int64_t i64

cdef extern from *:
    """
    typedef __int128 i128;
    static inline long long mulmod(long long a, long long b, long long p) {
        return (long long)(((i128)a * (i128)b) % p);
    }
    static inline long long submulmod(long long c, long long a, long long b, long long p) {
        long long t = (long long)(((i128)a * (i128)b) % p);
        c -= t;
        return c < 0 ? c + p : c;
    }
    """
    long long mulmod(long long a, long long b, long long p) nogil
    long long submulmod(long long c, long long a, long long b, long long p) nogil

NAME = "cython"


cdef long long invmod(long long a, long long p):
    cdef long long t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_mod_p(rows, long long p):
    """Reduced row echelon form over GF(p); returns (nonzero rows, pivots)."""
    if not len(rows):
        return [], []
    cdef i64[:, ::1] a = np.array([[int(x) % p for x in row] for row in rows], dtype=np.int64)
    cdef Py_ssize_t nrows = a.shape[0], ncols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef long long inv, f, t
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(ncols):
                t = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = t
        inv = invmod(a[r, c], p)
        if inv != 1:
            for j in range(c, ncols):
                if a[r, j] != 0:
                    a[r, j] = mulmod(a[r, j], inv, p)
        for i in range(nrows):
            if i != r:
                f = a[i, c]
                if f != 0:
                    for j in range(c, ncols):
                        if a[r, j] != 0:
                            a[i, j] = submulmod(a[i, j], f, a[r, j], p)
        pivots.append(c)
        r += 1
    return np.asarray(a[:r]).tolist(), pivots


cdef void mul_into(i64[::1] out, i64[::1] f, Py_ssize_t nf, i64[::1] g, Py_ssize_t ng,
                   i64[:, ::1] table, long long p) nogil:
    cdef Py_ssize_t i, j
    cdef long long x
    for i in range(nf):
        x = f[i]
        if x == 0:
            continue
        for j in range(ng):
            if g[j] != 0:
                out[table[i, j]] = (out[table[i, j]] + mulmod(x, g[j], p)) % p


def det_linear_mod_p(entries, long long p):
    """Determinant of an r x r matrix of linear forms in m variables over GF(p).

    Same contract as the pure-Python version (``p`` must be a prime here).
    """
    cdef Py_ssize_t r = len(entries)
    if r == 0:
        return [1]
    cdef cnp.ndarray[i64, ndim=3] src = np.asarray(
        [[[int(c) % p for c in e] for e in row] for row in entries], dtype=np.int64)
    cdef Py_ssize_t m = src.shape[2]
    cdef long long base = _dense.radix(m, 2 * r)
    cdef Py_ssize_t width = _dense.count(m, r)
    cdef i64[:, :, ::1] a = np.zeros((r, r, width), dtype=np.int64)
    cdef i64[::1] prev = np.zeros(width, dtype=np.int64)
    cdef i64[::1] num, quot, pivrow
    cdef i64[:, ::1] table, dtable
    cdef i64[::1] qidx
    cdef Py_ssize_t i, j, k, t, size, nprev, dk, lead, nq, s, qi
    cdef long long sign = 1, c, inv, qc
    cdef bint nonzero
    for i in range(r):
        for j in range(r):
            for t in range(m):
                a[i, j, t] = src[i, j, t]
    prev[0] = 1
    nprev = 1
    for k in range(r - 1):
        dk = k + 1
        nq = _dense.count(m, dk)
        nonzero = False
        for t in range(nq):
            if a[k, k, t] != 0:
                nonzero = True
                break
        if not nonzero:
            for i in range(k + 1, r):
                for t in range(nq):
                    if a[i, k, t] != 0:
                        nonzero = True
                        break
                if nonzero:
                    for j in range(r):
                        for t in range(width):
                            c = a[k, j, t]
                            a[k, j, t] = a[i, j, t]
                            a[i, j, t] = c
                    sign = -sign
                    break
            if not nonzero:
                return [0] * width
        table = _dense.product_table(m, dk, dk, base)
        size = _dense.count(m, 2 * dk)
        num = np.zeros(size, dtype=np.int64)
        pivrow = np.array(a[k, k, :nq]).copy()
        if k > 0:
            lead = 0
            while prev[lead] == 0:
                lead += 1
            qidx = _dense.quotient_index(
                m, 2 * dk, int(_dense.keys(m, k, base)[lead]), dk + 1, base)
            dtable = _dense.product_table(m, dk + 1, k, base)
            inv = invmod(prev[lead], p)
        for i in range(k + 1, r):
            for j in range(k + 1, r):
                num[:] = 0
                mul_into(num, pivrow, nq, a[i, j], nq, table, p)
                for s in range(nq):
                    if a[i, k, s] != 0:
                        for t in range(nq):
                            if a[k, j, t] != 0:
                                num[table[s, t]] = submulmod(num[table[s, t]], a[i, k, s], a[k, j, t], p)
                if k == 0:
                    for t in range(size):
                        a[i, j, t] = num[t]
                    continue
                for t in range(width):
                    a[i, j, t] = 0
                for t in range(size):
                    c = num[t]
                    if c == 0:
                        continue
                    qi = qidx[t]
                    if qi < 0:
                        raise DivisibilityError("Bareiss step is not exact")
                    qc = mulmod(c, inv, p)
                    a[i, j, qi] = qc
                    for s in range(nprev):
                        if prev[s] != 0:
                            num[dtable[qi, s]] = submulmod(num[dtable[qi, s]], qc, prev[s], p)
        for t in range(nq):
            prev[t] = pivrow[t]
        nprev = nq
    det = np.array(a[r - 1, r - 1, :width])
    if sign < 0:
        det = (p - det) % p
    return det.tolist()
