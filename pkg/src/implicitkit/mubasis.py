"""Hilbert-Burch mu-bases, moving forms and their resultants.

A mu-basis is an (n+1) x n matrix M of X-forms whose columns generate the
syzygies of f, with column degrees mu_1 + ... + mu_n = d.  Its columns give
the moving forms L_j = sum_i M[i][j] T_i; their resultant in X is an
implicit equation times the extraneous factor.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .errors import (DegenerateMacaulay, DivisibilityError, NotProjectiveDimensionOne,
                     PreconditionError, ShapeError)
from .linalg import PolyMatrix, ScalarMatrix, det_fraction_free, rank, rref
from .parametrization import Parametrization
from .poly import Poly, Ring, exponent_tuples, gcd_many
from .satur import is_saturated, saturation_indeg
from .strands import syzygy_basis

MACAULAY_RETRIES = 10


@dataclass
class MovingBasis:
    param: Parametrization
    M: PolyMatrix
    mu: tuple

    def column(self, j: int) -> list[Poly]:
        return self.M.column(j)


@dataclass
class MovingForms:
    L: list
    mu: tuple


# ---------------------------------------------------------------------------
# mu-basis

def _syz_vector(param: Parametrization, tup, degree: int) -> list:
    out = []
    for a in tup:
        out += param.vector(a, degree) if a else [param.field.zero] * len(param.index(degree))
    return out


def mu_basis(param: Parametrization, check_saturated: bool = True) -> MovingBasis:
    """Minimal generators of the syzygy module, found degree by degree."""
    n, d = param.n, param.d
    if n == 3 and check_saturated:
        sat = saturation_indeg(param)
        if sat.indeg_sat > sat.top or not is_saturated(param, sat):
            raise NotProjectiveDimensionOne(
                "I is not saturated (or has no base points); use implicitize instead")
    F = param.field
    chosen: list[tuple[int, tuple]] = []
    for degree in range(0, d + 1):
        if len(chosen) > n:
            break
        shifts = []
        for mu, tup in chosen:
            for m in param.monomials(degree - mu):
                shifts.append(_syz_vector(param, [a.mul_monomial(m) if a else a for a in tup],
                                          degree))
        current = shifts[:]
        base_rank = rank(ScalarMatrix(F, current)) if current else 0
        for tup in syzygy_basis(param, degree).basis:
            vec = _syz_vector(param, tup, degree)
            trial = current + [vec]
            r = rank(ScalarMatrix(F, trial))
            if r > base_rank:
                current, base_rank = trial, r
                chosen.append((degree, tup))
        if len(chosen) == n and sum(mu for mu, _ in chosen) == d:
            break
    mus = tuple(mu for mu, _ in chosen)
    if len(chosen) != n or sum(mus) != d:
        raise NotProjectiveDimensionOne(
            f"found syzygy generators of degrees {list(mus)}; expected {n} with sum {d}")
    rows = [[chosen[j][1][i] for j in range(n)] for i in range(n + 1)]
    basis = MovingBasis(param, PolyMatrix(param.ring, rows), mus)
    if not hb_verify(basis):
        raise NotProjectiveDimensionOne("maximal minors of the syzygy matrix do not give f")
    return basis


def _signed_minors(M: PolyMatrix) -> list[Poly]:
    rows, cols = M.shape
    out = []
    for i in range(rows):
        minor = det_fraction_free(M.submatrix([k for k in range(rows) if k != i], range(cols)))
        out.append(minor if i % 2 == 0 else -minor)
    return out


def hb_verify(basis: MovingBasis) -> bool:
    """True iff the signed maximal minors equal c * f for one nonzero scalar c."""
    M, f = basis.M, basis.param.f
    if M.shape != (len(f), len(f) - 1):
        return False
    F = basis.param.field
    minors = _signed_minors(M)
    c = None
    for mi, fi in zip(minors, f):
        if not fi:
            if mi:
                return False
            continue
        if not mi:
            return False
        ratio = F.div(mi.leading_coefficient(), fi.leading_coefficient())
        if c is None:
            c = ratio
        if mi != fi.scale(c):
            return False
    return c is not None and c != 0


def moving_forms(basis: MovingBasis) -> MovingForms:
    ring = basis.param.ring
    n = basis.param.n
    L = []
    for j in range(n):
        acc = ring.zero()
        for i, a in enumerate(basis.M.column(j)):
            if a:
                acc = acc + a * ring.T(i + 1)
        L.append(acc)
    return MovingForms(L, basis.mu)


# ---------------------------------------------------------------------------
# resultants

def _x_coefficients(L: Poly) -> dict:
    """{X-exponent tuple: T-form} for a form that is bihomogeneous in (X; T)."""
    ring = L.ring
    n = ring.n
    out: dict = {}
    for m, c in L.terms.items():
        e = ring.unpack(m)
        xm = tuple(e[:n])
        t_part = ring.pack((0,) * n + tuple(e[n:]))
        out.setdefault(xm, {})[t_part] = c
    return {k: Poly(ring, v) for k, v in out.items()}


def _x_degree_of(L: Poly) -> int:
    bd = L.bidegree()
    if bd is None:
        raise PreconditionError(f"{L} is not bihomogeneous in (X; T)")
    return bd[0]


def sylvester_resultant(L1: Poly, L2: Poly) -> Poly:
    """Res_X(L1, L2) for binary forms in X1, X2 with T-form coefficients."""
    ring = L1.ring
    if ring.n != 2:
        raise PreconditionError("the Sylvester resultant needs n = 2")
    if not L1 or not L2:
        return ring.zero()
    m1, m2 = _x_degree_of(L1), _x_degree_of(L2)
    if m1 == 0:
        return L1 ** m2
    if m2 == 0:
        return L2 ** m1
    c1, c2 = _x_coefficients(L1), _x_coefficients(L2)
    size = m1 + m2
    zero = ring.zero()
    rows = []
    # row k of L1 block: coefficients of X1^(m1-j) X2^j shifted by k
    for coeffs, mdeg, shifts in ((c1, m1, m2), (c2, m2, m1)):
        for k in range(shifts):
            row = [zero] * size
            for j in range(mdeg + 1):
                row[k + j] = coeffs.get((mdeg - j, j), zero)
            rows.append(row)
    return det_fraction_free(PolyMatrix(ring, rows))


def _macaulay_matrices(Ls: list[Poly], mus: list[int]):
    ring = Ls[0].ring
    t = sum(mus) - 2
    monos = exponent_tuples(3, t)
    index = {m: k for k, m in enumerate(monos)}
    coeffs = [_x_coefficients(L) for L in Ls]
    zero = ring.zero()
    rows = []
    reduced = []
    for m in monos:
        owner = next(i for i in range(3) if m[i] >= mus[i])
        divisible = sum(1 for i in range(3) if m[i] >= mus[i])
        reduced.append(divisible == 1)
        shift = list(m)
        shift[owner] -= mus[owner]
        row = [zero] * len(monos)
        for xm, c in coeffs[owner].items():
            target = tuple(a + b for a, b in zip(xm, shift))
            row[index[target]] = c
        rows.append(row)
    big = PolyMatrix(ring, rows)
    keep = [k for k, r in enumerate(reduced) if not r]
    small = big.submatrix(keep, keep)
    return big, small


def _substitute_x(L: Poly, images: list[Poly]) -> Poly:
    ring = L.ring
    n = ring.n
    out = ring.zero()
    for m, c in L.terms.items():
        e = ring.unpack(m)
        term = Poly(ring, {ring.pack((0,) * n + tuple(e[n:])): c})
        for k in range(n):
            if e[k]:
                term = term * images[k] ** e[k]
        out = out + term
    return out


def macaulay_resultant(L1: Poly, L2: Poly, L3: Poly, seed: int = 42,
                       stats: dict | None = None) -> Poly:
    """Res_X(L1, L2, L3) for ternary forms with T-form coefficients.

    Numerator determinant at the critical degree sum(mu) - 2 divided by the
    minor on the non-reduced monomials; a random X-coordinate change is used
    when that minor vanishes.
    """
    Ls = [L1, L2, L3]
    ring = L1.ring
    if ring.n != 3:
        raise PreconditionError("the Macaulay resultant needs n = 3")
    if any(not L for L in Ls):
        return ring.zero()
    mus = [_x_degree_of(L) for L in Ls]
    for i in range(3):
        if mus[i] == 0:
            # a T-form without X: Res(c, g, h) = c^(deg g * deg h)
            others = [mus[j] for j in range(3) if j != i]
            return Ls[i] ** (others[0] * others[1])
    rng = random.Random(seed)
    F = ring.field
    current = Ls
    for attempt in range(MACAULAY_RETRIES + 1):
        big, small = _macaulay_matrices(current, mus)
        denom = det_fraction_free(small) if small.nrows else ring.one()
        if denom:
            num = det_fraction_free(big)
            if stats is not None:
                stats.update(size=big.nrows, denominator_size=small.nrows,
                             coordinate_changes=attempt)
            if not num:
                return num
            try:
                return num.exact_div(denom)
            except DivisibilityError as exc:
                raise DegenerateMacaulay("Macaulay quotient is not exact") from exc
        # random invertible linear change of X coordinates
        while True:
            A = [[F.random(rng) if F.characteristic else F(rng.randint(-9, 9))
                  for _ in range(3)] for _ in range(3)]
            if rank(ScalarMatrix(F, A)) == 3:
                break
        images = [sum((ring.X(k + 1).scale(A[i][k]) for k in range(3) if A[i][k]),
                      ring.zero()) for i in range(3)]
        current = [_substitute_x(L, images) for L in Ls]
    raise DegenerateMacaulay("Macaulay denominator vanished after every coordinate change")


def resultant_of_basis(basis: MovingBasis, seed: int = 42) -> Poly:
    L = moving_forms(basis).L
    if basis.param.n == 2:
        return sylvester_resultant(*L)
    return macaulay_resultant(*L, seed=seed)


# ---------------------------------------------------------------------------
# affine matrices and the X3 = 0 conditions

def homogenize_matrix(M: PolyMatrix) -> tuple[PolyMatrix, tuple]:
    """Homogenize each column in X3 to the largest degree among its entries."""
    ring = M.ring
    if ring.n != 3:
        raise PreconditionError("homogenization in X3 needs n = 3")
    rows, cols = M.shape
    out = [[None] * cols for _ in range(rows)]
    degrees = []
    for j in range(cols):
        col = M.column(j)
        if not any(col):
            raise ShapeError(f"column {j + 1} is zero")
        bds = {p.x_degree() for p in col if p}
        homogeneous = len(bds) == 1 and all(p.is_homogeneous() for p in col if p)
        dj = max(bds)
        for i, p in enumerate(col):
            out[i][j] = p if homogeneous or not p else p.homogenize_x(dj)
        degrees.append(dj)
    return PolyMatrix(ring, out), tuple(degrees)


@dataclass
class Prop34Report:
    Mh: PolyMatrix
    d_degrees: tuple
    cond_a: bool
    cond_b: bool
    cond_a_parts: tuple   # (no common zero of the entries on X3 = 0, a 2x2 minor survives)
    resultant: Poly
    factor_budget: int | None
    P: list | None = None
    Q: Poly | None = None

    @property
    def consistent(self) -> bool:
        return bool(self.resultant) == (self.cond_a or self.cond_b)


def _restrict_x3(p: Poly) -> Poly:
    ring = p.ring
    return Poly(ring, {m: c for m, c in p.terms.items() if ring.unpack(m)[2] == 0})


def _binary_forms_coprime(forms: list[Poly]) -> bool:
    """No common zero in P^1 for forms in X1, X2 (degree-N membership test)."""
    forms = [f for f in forms if f]
    if not forms:
        return False
    ring = forms[0].ring
    F = ring.field
    if any(f.is_constant() for f in forms):
        return True
    maxdeg = max(f.x_degree() for f in forms)
    N = 3 * maxdeg - 2
    target = {(N - k, k): idx for idx, k in enumerate(range(N + 1))}
    vectors = []
    for f in forms:
        df = f.x_degree()
        if df > N:
            continue
        for a in range(N - df + 1):
            vec = [F.zero] * (N + 1)
            for e, c in f.exponents():
                vec[target[(e[0] + N - df - a, e[1] + a)]] = c
            vectors.append(vec)
    return bool(vectors) and rank(ScalarMatrix(F, vectors)) == N + 1


def prop34_analyze(Mh: PolyMatrix, param: Parametrization | None = None,
                   base_points=None, seed: int = 42) -> Prop34Report:
    """Conditions (a), (b) on the X3 = 0 restriction of a homogenized 4 x 3 matrix."""
    ring = Mh.ring
    if Mh.shape != (4, 3):
        raise ShapeError("expected a 4 x 3 matrix")
    Mh, degrees = homogenize_matrix(Mh)
    restricted = [[_restrict_x3(Mh[i, j]) for j in range(3)] for i in range(4)]
    no_common_zero = _binary_forms_coprime([p for row in restricted for p in row])
    minor_survives = False
    for r in combinations(range(4), 2):
        for c in combinations(range(3), 2):
            minor = (restricted[r[0]][c[0]] * restricted[r[1]][c[1]]
                     - restricted[r[0]][c[1]] * restricted[r[1]][c[0]])
            if minor:
                minor_survives = True
                break
        if minor_survives:
            break
    cond_a = no_common_zero and minor_survives

    # (b): L_i restricted to X3 = 0 factors as P_i(X1, X2) * Q(T)
    cond_b = False
    P_list, Q = None, None
    if not minor_survives:
        ells = [sum((restricted[k][i] * ring.T(k + 1) for k in range(4) if restricted[k][i]),
                    ring.zero()) for i in range(3)]
        P_list = []
        Qs = []
        for i in range(3):
            coeffs = [restricted[k][i] for k in range(4) if restricted[k][i]]
            if not coeffs:
                P_list.append(ring.zero())
                continue
            Pi = gcd_many(coeffs).normalize()
            P_list.append(Pi)
            Qs.append(ells[i].exact_div(Pi).normalize())
        if Qs:
            Q = Qs[0]
            same_q = all(q == Q for q in Qs) and Q.x_degree() == 0
            nonzero_P = [p for p in P_list if p]
            coprime = gcd_many(nonzero_P).is_constant()
            cond_b = same_q and coprime
    L = [sum((Mh[k, i] * ring.T(k + 1) for k in range(4) if Mh[k, i]), ring.zero())
         for i in range(3)]
    res = macaulay_resultant(*L, seed=seed)
    res = res.normalize() if res else res
    budget = None
    if param is not None:
        d = param.d
        d1, d2, d3 = degrees
        off_line = 0
        for pt in base_points or []:
            if pt.coords[2] != 0 and pt.d_x is not None:
                off_line += pt.d_x * pt.orbit_size
        budget = d1 * d2 + d2 * d3 + d1 * d3 - d * d + off_line
    return Prop34Report(Mh=Mh, d_degrees=degrees, cond_a=cond_a, cond_b=cond_b,
                        cond_a_parts=(no_common_zero, minor_survives), resultant=res,
                        factor_budget=budget, P=P_list, Q=Q)


def param_from_matrix(M: PolyMatrix) -> Parametrization:
    """f_i = (-1)^(i+1) times the minor of a homogeneous (n+1) x n matrix with row i deleted."""
    minors = _signed_minors(M)
    common = gcd_many([m for m in minors if m])
    if not common.is_constant():
        minors = [m.exact_div(common) if m else m for m in minors]
    return Parametrization(M.ring, minors)
