"""Exact dense linear algebra over fields and over polynomial rings."""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import Sequence

from . import _backend
from .arith import ExtensionField, Field, _canon_q
from .errors import DimensionMismatch, DivisibilityError, ShapeError
from .poly import Poly, Ring, exponent_tuples, gcd_many, multivariate_gcd


class ScalarMatrix:
    """Dense matrix over a field; ``entries`` is a list of row lists."""

    def __init__(self, field: Field, entries: Sequence[Sequence]):
        self.field = field
        self.entries = [list(row) for row in entries]
        self.nrows = len(self.entries)
        self.ncols = len(self.entries[0]) if self.entries else 0
        if any(len(row) != self.ncols for row in self.entries):
            raise DimensionMismatch("ragged matrix")

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __repr__(self):
        return f"ScalarMatrix({self.nrows}x{self.ncols} over {self.field.name})"

    def columns(self, idx: Sequence[int]) -> "ScalarMatrix":
        return ScalarMatrix(self.field, [[row[j] for j in idx] for row in self.entries])

    def apply(self, vec: Sequence) -> list:
        F = self.field
        out = []
        for row in self.entries:
            acc = F.zero
            for a, b in zip(row, vec):
                if a and b:
                    acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return out


def rref(m: ScalarMatrix) -> tuple[list[list], list[int]]:
    """Reduced row echelon form: (nonzero rows, pivot columns)."""
    F = m.field
    if not m.nrows or not m.ncols:
        return [], []
    if F.is_finite and not F.is_extension:
        return _backend.rref_mod_p(m.entries, F.characteristic)
    if F.characteristic == 0:
        return _rref_rational(m)
    a = [list(row) for row in m.entries]
    nrows, ncols = m.nrows, m.ncols
    pivots = []
    r = 0
    rational = F.characteristic == 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        row = a[r]
        inv = F.inv(row[c])
        if rational:
            row[c:] = [_canon_q(x * inv) if x else 0 for x in row[c:]]
        else:
            row[c:] = [F.mul(x, inv) if x else 0 for x in row[c:]]
        nz = [j for j in range(c, ncols) if row[j] != 0]
        for i in range(nrows):
            f = a[i][c]
            if i == r or f == 0:
                continue
            other = a[i]
            if rational:
                for j in nz:
                    other[j] = _canon_q(other[j] - f * row[j])
            else:
                for j in nz:
                    other[j] = F.sub(other[j], F.mul(f, row[j]))
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _rref_rational(m: ScalarMatrix) -> tuple[list[list], list[int]]:
    # sympy's dense QQ domain runs on gmpy2 rationals, far faster than Fraction
    from sympy import QQ as SQQ
    from sympy.polys.matrices import DomainMatrix

    def conv(x):
        return SQQ(x.numerator, x.denominator) if isinstance(x, Fraction) else SQQ(x)

    dm = DomainMatrix([[conv(x) for x in row] for row in m.entries], m.shape, SQQ)
    red, pivots = dm.rref()
    out = []
    for row in red.to_list()[:len(pivots)]:
        out.append([_canon_q(Fraction(int(x.numerator), int(x.denominator))) if x else 0
                    for x in row])
    return out, list(pivots)


def rank(m: ScalarMatrix) -> int:
    return len(rref(m)[1])


def nullspace(m: ScalarMatrix) -> list[list]:
    """Basis of the right kernel, one vector per free column (in column order).

    Each vector has a 1 in its free column and zeros in the other free
    columns, so the basis is in reduced echelon form.
    """
    F = m.field
    rows, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        vec = [F.zero] * m.ncols
        vec[free] = F.one
        for row, pc in zip(rows, pivots):
            if row[free] != 0:
                vec[pc] = F.neg(row[free])
        basis.append(vec)
    return basis


def _scalar_det(m: ScalarMatrix):
    """Bareiss elimination over the field (exact divisions)."""
    F = m.field
    n = m.nrows
    if n == 0:
        return F.one
    a = [list(row) for row in m.entries]
    sign = F.one
    prev = F.one
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return F.zero
            a[k], a[swap] = a[swap], a[k]
            sign = F.neg(sign)
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = F.sub(F.mul(piv, a[i][j]), F.mul(a[i][k], a[k][j]))
                a[i][j] = F.div(num, prev)
        prev = piv
    return F.mul(sign, a[n - 1][n - 1])


class PolyMatrix:
    """Dense matrix of polynomials over one ring."""

    def __init__(self, ring: Ring, entries: Sequence[Sequence[Poly]]):
        self.ring = ring
        self.entries = [list(row) for row in entries]
        self.nrows = len(self.entries)
        self.ncols = len(self.entries[0]) if self.entries else 0
        for row in self.entries:
            if len(row) != self.ncols:
                raise DimensionMismatch("ragged matrix")
            for e in row:
                if e.ring != ring:
                    raise DimensionMismatch("entry from a different ring")

    @classmethod
    def parse(cls, ring: Ring, rows: Sequence[Sequence[str]]) -> "PolyMatrix":
        return cls(ring, [[ring.parse(s) for s in row] for row in rows])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols})"

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[self.entries[i][j] for j in cols] for i in rows])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, [list(col) for col in zip(*self.entries)]) \
            if self.nrows else PolyMatrix(self.ring, [])

    def column(self, j: int) -> list[Poly]:
        return [row[j] for row in self.entries]

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[fn(e) for e in row] for row in self.entries])

    def to_text(self) -> list[list[str]]:
        return [[e.to_text() for e in row] for row in self.entries]

    def is_t_linear(self) -> bool:
        return _linear_vectors(self) is not None

    def eval_t(self, values: Sequence, field: Field | None = None) -> ScalarMatrix:
        """Substitute T = values in every entry (entries must be free of X)."""
        F = field or self.ring.field
        vecs = _linear_vectors(self)
        if vecs is not None:
            out = []
            for row in vecs:
                out_row = []
                for v in row:
                    acc = F.zero
                    for c, t in zip(v, values):
                        if c:
                            acc = F.add(acc, F.mul(c, t))
                    out_row.append(acc)
                out.append(out_row)
            return ScalarMatrix(F, out)
        rows = []
        for row in self.entries:
            rows.append([_eval_t_generic(e, values, F) for e in row])
        return ScalarMatrix(F, rows)


def _eval_t_generic(p: Poly, values, F: Field):
    ring = p.ring
    n = ring.n
    acc = F.zero
    for m, c in p.terms.items():
        exps = ring.unpack(m)
        if any(exps[:n]):
            raise DimensionMismatch("entry involves X-variables")
        term = c
        for e, v in zip(exps[n:], values):
            if e:
                term = F.mul(term, F.pow(v, e))
        acc = F.add(acc, term)
    return acc


def _linear_vectors(m: PolyMatrix):
    """Coefficient vectors over T1..T(n+1) if every entry is T-linear or zero."""
    ring = m.ring
    units = [ring.var_unit(i) for i in ring.t_indices]
    index = {u: k for k, u in enumerate(units)}
    zero = ring.field.zero
    out = []
    for row in m.entries:
        out_row = []
        for e in row:
            vec = [zero] * len(units)
            for mono, c in e.terms.items():
                k = index.get(mono)
                if k is None:
                    return None
                vec[k] = c
            out_row.append(vec)
        out.append(out_row)
    return out


def _dense_to_poly(ring: Ring, coeffs: Sequence, degree: int, scale=None) -> Poly:
    F = ring.field
    terms = {}
    for exps, c in zip(exponent_tuples(ring.n + 1, degree), coeffs):
        if c:
            if scale is not None:
                c = _canon_q(Fraction(c) / scale)
            terms[ring.t_mono(exps)] = c
    return Poly(ring, terms)


def _cofactor_det(entries: list[list[Poly]], ring: Ring) -> Poly:
    n = len(entries)
    if n == 0:
        return ring.one()
    if n == 1:
        return entries[0][0]
    if n == 2:
        return entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0]
    # expand along the row with most zeros
    best = min(range(n), key=lambda i: sum(1 for e in entries[i] if e))
    total = ring.zero()
    for j, e in enumerate(entries[best]):
        if not e:
            continue
        minor = [row[:j] + row[j + 1:] for i, row in enumerate(entries) if i != best]
        term = e * _cofactor_det(minor, ring)
        total = total + term if (best + j) % 2 == 0 else total - term
    return total


def _poly_bareiss(entries: list[list[Poly]], ring: Ring) -> Poly:
    a = [list(row) for row in entries]
    n = len(a)
    prev = ring.one()
    negate = False
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return ring.zero()
            a[k], a[swap] = a[swap], a[k]
            negate = not negate
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = piv * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev) if k else num
        prev = piv
    det = a[n - 1][n - 1]
    return -det if negate else det


def det_fraction_free(m):
    """Exact determinant of a square ScalarMatrix or PolyMatrix."""
    if m.nrows != m.ncols:
        raise ShapeError("determinant of a non-square matrix")
    if isinstance(m, ScalarMatrix):
        return _scalar_det(m)
    ring, F = m.ring, m.ring.field
    r = m.nrows
    if r == 0:
        return ring.one()
    vecs = _linear_vectors(m) if r >= 3 and not F.is_extension else None
    if vecs is not None:
        if F.is_finite:
            coeffs = _backend.det_linear_mod_p(vecs, F.characteristic)
            return _dense_to_poly(ring, coeffs, r)
        # over Q: clear denominators row by row, run the integer Bareiss
        scale = 1
        int_rows = []
        for row in vecs:
            den = 1
            for v in row:
                for c in v:
                    if isinstance(c, Fraction):
                        den = den * c.denominator // math.gcd(den, c.denominator)
            scale *= den
            int_rows.append([[int(c * den) for c in v] for v in row])
        coeffs = _backend.det_linear_int(int_rows)
        return _dense_to_poly(ring, coeffs, r, scale if scale != 1 else None)
    if r < 5:
        return _cofactor_det(m.entries, ring)
    try:
        return _poly_bareiss(m.entries, ring)
    except DivisibilityError:
        return _cofactor_det(m.entries, ring)


# ---------------------------------------------------------------------------
# gcd of maximal minors

class MinorMode:
    EXHAUSTIVE = "exhaustive"
    RANDOMIZED = "randomized"


def _sample_field(F: Field, degree: int) -> Field:
    """A field large enough for Schwartz-Zippel style sampling."""
    if F.is_finite and not F.is_extension and F.characteristic < 50 * max(degree, 1):
        for e in (2, 3):
            if F.characteristic ** e >= 50 * max(degree, 1) or e == 3:
                return ExtensionField(F.characteristic, e)
    return F


def _random_point(F: Field, k: int, rng: random.Random):
    if F.characteristic == 0:
        return [rng.randint(-1000, 1000) for _ in range(k)]
    return [F.random(rng) for _ in range(k)]


def nonsingular_column_subset(m: PolyMatrix, rng: random.Random, attempts: int = 2):
    """A random set of columns whose maximal minor is nonzero, or None.

    Columns are shuffled and the pivot columns of the matrix evaluated at a
    random T-point are taken; their minor is nonzero at that point.
    """
    F = _sample_field(m.ring.field, m.nrows)
    for _ in range(attempts):
        point = _random_point(F, m.ring.n + 1, rng)
        order = list(range(m.ncols))
        rng.shuffle(order)
        scalar = m.eval_t(point, F).columns(order)
        pivots = rref(scalar)[1]
        if len(pivots) == m.nrows:
            return tuple(sorted(order[j] for j in pivots))
    return None


def maximal_minors_gcd(m: PolyMatrix, mode: str = MinorMode.RANDOMIZED,
                       seed: int = 42, trials: int = 4, verify: int = 10,
                       stats: dict | None = None) -> Poly:
    """Normalized gcd of the maximal minors of a matrix with entries in T.

    Returns 0 when there are fewer columns than rows or every maximal minor
    vanishes.  The randomized mode takes the gcd of ``trials`` random
    nonzero minors and checks it divides ``verify`` further random minors.  A
    minor that fails the check is folded into the gcd and the verification
    restarts; after ``trials`` such refinements the exhaustive computation
    takes over.
    """
    ring = m.ring
    r, c = m.shape
    if stats is None:
        stats = {}
    stats.setdefault("minors", 0)
    if r == 0:
        return ring.one()
    if c < r:
        return ring.zero()
    for row in m.entries:
        for e in row:
            if not e.in_t_only():
                raise DimensionMismatch("minor gcd needs entries in T only")

    def minor(cols):
        stats["minors"] += 1
        return det_fraction_free(m.submatrix(range(r), cols))

    if mode == MinorMode.RANDOMIZED:
        rng = random.Random(seed)
        chosen = []
        for _ in range(trials):
            cols = nonsingular_column_subset(m, rng)
            if cols is None:
                break
            chosen.append(cols)
        if not chosen:
            if math.comb(c, r) > 5000:
                return ring.zero()
        else:
            g = gcd_many(minor(cols) for cols in dict.fromkeys(chosen))
            # a failing minor refines g; the verification count restarts after each refinement
            refinements, passed, ok = 0, 0, True
            while passed < verify:
                cols = nonsingular_column_subset(m, rng)
                passed += 1
                if cols is None:
                    continue
                d = minor(cols)
                if g.divides(d):
                    continue
                refinements += 1
                if refinements > trials:
                    ok = False
                    break
                g = multivariate_gcd(g, d)
                passed = 0
            stats["refinements"] = refinements
            if ok:
                stats["mode"] = "randomized"
                return g.normalize()
    stats["mode"] = "exhaustive"
    g = None
    for cols in itertools.combinations(range(c), r):
        d = minor(cols)
        if not d:
            continue
        if g is None:
            g = d.normalize()
        elif not g.divides(d):
            g = multivariate_gcd(g, d)
        if g.is_constant():
            break
    return g.normalize() if g is not None else ring.zero()
