"""Dense univariate polynomials over a field object (coefficients low degree first)."""

from __future__ import annotations

from .arith import Field


def trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a: list) -> int:
    return len(a) - 1


def add(F: Field, a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(out)


def mul(F: Field, a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y != 0:
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(out)


def scale(F: Field, a: list, c) -> list:
    return trim([F.mul(x, c) for x in a])


def divmod_(F: Field, a: list, b: list) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [F.zero] * max(len(a) - len(b) + 1, 0)
    inv = F.inv(b[-1])
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        c = F.mul(r[-1], inv)
        shift = len(r) - 1 - db
        q[shift] = c
        for i, y in enumerate(b):
            r[i + shift] = F.sub(r[i + shift], F.mul(c, y))
        r.pop()
        trim(r)
    return trim(q), r


def monic(F: Field, a: list) -> list:
    if not a:
        return a
    return scale(F, a, F.inv(a[-1]))


def gcd(F: Field, a: list, b: list) -> list:
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, divmod_(F, a, b)[1]
    return monic(F, a)


def evaluate(F: Field, a: list, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def roots_by_search(F: Field, a: list) -> list:
    """All roots of ``a`` in a finite field by exhaustive evaluation."""
    a = trim(list(a))
    if len(a) <= 1:
        return []
    if len(a) == 2:
        return [F.neg(F.div(a[0], a[1]))]
    return [x for x in F.elements() if evaluate(F, a, x) == 0]


def powmod(F: Field, base: list, k: int, mod: list) -> list:
    result = [F.one]
    base = divmod_(F, base, mod)[1]
    while k:
        if k & 1:
            result = divmod_(F, mul(F, result, base), mod)[1]
        k >>= 1
        if k:
            base = divmod_(F, mul(F, base, base), mod)[1]
    return result


def derivative(F: Field, a: list) -> list:
    return trim([F.mul(F(k) if not F.is_extension else k % F.characteristic, c)
                 for k, c in enumerate(a)][1:])


def resultant(F: Field, a: list, b: list):
    """Res(a, b) by the Euclidean algorithm."""
    a, b = trim(list(a)), trim(list(b))
    if not a or not b:
        return F.zero
    res = F.one
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return F.mul(res, F.pow(b[0], da))
        r = divmod_(F, a, b)[1]
        if not r:
            return F.zero
        if da % 2 == 1 and db % 2 == 1:
            res = F.neg(res)
        res = F.mul(res, F.pow(b[-1], da - (len(r) - 1)))
        a, b = b, r


def interpolate(F: Field, xs: list, ys: list) -> list:
    """Newton interpolation through the points (xs[i], ys[i])."""
    coef = list(ys)
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = F.div(F.sub(coef[i], coef[i - 1]), F.sub(xs[i], xs[i - j]))
    out = [coef[-1]] if coef else []
    for i in range(n - 2, -1, -1):
        out = add(F, mul(F, out, [F.neg(xs[i]), F.one]), [coef[i]])
    return trim(out)


def roots(F: Field, a: list, rng=None) -> list:
    """Distinct roots in a finite field (Cantor-Zassenhaus on gcd(a, x^q - x))."""
    import random as _random

    a = monic(F, trim(list(a)))
    if len(a) <= 1:
        return []
    q = F.order
    if q <= 64:
        return [x for x in F.elements() if evaluate(F, a, x) == 0]
    xq = powmod(F, [F.zero, F.one], q, a)
    g = gcd(F, a, add(F, xq, [F.zero, F.neg(F.one)]))
    rng = rng or _random.Random(len(a) * 7919 + q % 1000003)
    out: list = []
    _split_roots(F, g, rng, out)
    return sorted(out)


def _split_roots(F: Field, g: list, rng, out: list) -> None:
    if len(g) <= 1:
        return
    if len(g) == 2:
        out.append(F.neg(F.div(g[0], g[1])))
        return
    # only odd q reach this point: smaller fields are searched exhaustively
    q = F.order
    while True:
        shift = [F.random(rng), F.one]
        h = add(F, powmod(F, shift, (q - 1) // 2, g), [F.neg(F.one)])
        d = gcd(F, g, h)
        if 1 < len(d) < len(g):
            _split_roots(F, d, rng, out)
            _split_roots(F, divmod_(F, g, d)[0], rng, out)
            return
