"""Pure-Python implementations of the hot kernels.

Same signatures and results as the compiled ``_kernels`` module.  The
determinant kernel also accepts ``p = 0`` and then works over the integers.
"""

from __future__ import annotations

from . import _dense
from .errors import DivisibilityError

NAME = "python"


def rref_mod_p(rows, p: int):
    """Reduced row echelon form over GF(p).

    Returns ``(rref_rows, pivots)`` where ``rref_rows`` holds only the
    nonzero rows and ``pivots`` the pivot column of each.
    """
    a = [[int(x) % p for x in row] for row in rows]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        row = a[r]
        inv = pow(row[c], -1, p)
        if inv != 1:
            for j in range(c, ncols):
                if row[j]:
                    row[j] = row[j] * inv % p
        nz = [j for j in range(c, ncols) if row[j]]
        for i in range(nrows):
            if i != r:
                f = a[i][c]
                if f:
                    other = a[i]
                    for j in nz:
                        other[j] = (other[j] - f * row[j]) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _mul_into(out, f, g, table, p):
    for i, x in enumerate(f):
        if x:
            trow = table[i]
            for j, y in enumerate(g):
                if y:
                    out[trow[j]] += x * y
    if p:
        for i, v in enumerate(out):
            if v:
                out[i] = v % p


def _divide(num, den, m, dnum, dquot, base, p):
    lead = next(i for i, c in enumerate(den) if c)
    lead_key = int(_dense.keys(m, dnum - dquot, base)[lead])
    qidx = _dense.quotient_index(m, dnum, lead_key, dquot, base).tolist()
    table = _dense.product_table(m, dquot, dnum - dquot, base).tolist()
    lc = den[lead]
    inv = pow(lc, -1, p) if p else None
    terms = [(j, c) for j, c in enumerate(den) if c and j != lead]
    quot = [0] * _dense.count(m, dquot)
    rem = num
    for i in range(len(rem)):
        c = rem[i]
        if p:
            c %= p
        if not c:
            continue
        qi = qidx[i]
        if qi < 0:
            raise DivisibilityError("Bareiss step is not exact")
        if p:
            qc = c * inv % p
        else:
            qc, r = divmod(c, lc)
            if r:
                raise DivisibilityError("Bareiss step is not exact")
        quot[qi] = qc
        trow = table[qi]
        for j, d in terms:
            rem[trow[j]] -= qc * d
    return quot


def det_linear_mod_p(entries, p: int):
    """Determinant of an r x r matrix of linear forms in m variables.

    ``entries[i][j]`` is the coefficient vector (length m) of entry (i, j).
    Returns the coefficient vector of the degree-r determinant over the
    monomials of degree r in descending lex order.  ``p = 0`` means Z.
    """
    r = len(entries)
    if r == 0:
        return [1]
    m = len(entries[0][0])
    base = _dense.radix(m, 2 * r)
    a = [[[int(c) % p if p else int(c) for c in entries[i][j]] for j in range(r)]
         for i in range(r)]
    prev = [1]
    sign = 1
    for k in range(r - 1):
        if not any(a[k][k]):
            for i in range(k + 1, r):
                if any(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return [0] * _dense.count(m, r)
        piv = a[k][k]
        dk = k + 1
        table = _dense.product_table(m, dk, dk, base).tolist()
        size = _dense.count(m, 2 * dk)
        for i in range(k + 1, r):
            aik = a[i][k]
            for j in range(k + 1, r):
                num = [0] * size
                _mul_into(num, piv, a[i][j], table, 0)
                if any(aik):
                    neg = [0] * size
                    _mul_into(neg, aik, a[k][j], table, 0)
                    num = [x - y for x, y in zip(num, neg)]
                if p:
                    num = [x % p for x in num]
                if k == 0:
                    a[i][j] = num
                else:
                    a[i][j] = _divide(num, prev, m, 2 * dk, dk + 1, base, p)
        prev = piv
    det = a[r - 1][r - 1]
    if sign < 0:
        det = [(-c) % p if p else -c for c in det]
    return det
