"""Base points of the parametrization and their local invariants.

For each point x of V(I) we compute the colength d_x of the local ideal,
the Hilbert-Samuel multiplicity e_x (as the colength of two generic
elements), the linear form L_x attached to points with e_x > d_x, and
finally the extraneous factor G and the split macrae = H^deg(lambda) * G.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb
from typing import Sequence

from . import univariate as uni
from .arith import ExtensionField, Field, PrimeField, _canon_q
from .errors import (DecompositionFailure, DivisibilityError, InconsistentLinearForms,
                     InfiniteBaseLocus, MultiplicityOverflow, NotLocallyNGenerated,
                     PreconditionError)
from .linalg import ScalarMatrix, rank, rref
from .parametrization import Parametrization
from .poly import Poly, Ring, multivariate_gcd

E_RETRIALS = 5


# ---------------------------------------------------------------------------
# points

@dataclass
class BasePoint:
    """A point of V(I), with coordinates over ``field`` (the base field or an extension)."""

    coords: tuple
    field: Field
    d_x: int | None = None
    e_x: int | None = None
    L_x: Poly | None = None
    user_supplied: bool = False
    notes: list = dc_field(default_factory=list)

    @property
    def lci(self) -> bool | None:
        if self.d_x is None or self.e_x is None:
            return None
        return self.d_x == self.e_x

    @property
    def degree(self) -> int:
        """Degree over the prime field of the smallest field containing the point."""
        F = self.field
        if not F.is_extension:
            return 1
        return max(F.element_degree(c) for c in self.coords)

    @property
    def orbit_size(self) -> int:
        return self.degree

    def coords_text(self) -> list[str]:
        return [_scalar_text(self.field, c) for c in self.coords]

    def conjugates(self) -> list[tuple]:
        F = self.field
        return [tuple(F.frobenius(c, k) for c in self.coords) for k in range(self.degree)]

    def key(self):
        F = self.field
        if F.characteristic == 0:
            return (0, tuple((Fraction(c).numerator, Fraction(c).denominator) for c in self.coords))
        return (self.degree, tuple(self.coords))


def _scalar_text(F: Field, c) -> str:
    if F.is_extension:
        return F.to_text(c)
    return str(c)


def normalize_point(F: Field, coords: Sequence) -> tuple:
    """Scale so the first nonzero coordinate is 1."""
    lead = next((c for c in coords if c != 0), None)
    if lead is None:
        raise PreconditionError("the zero vector is not a projective point")
    inv = F.inv(lead)
    return tuple(F.mul(c, inv) if c != 0 else F.zero for c in coords)


def _frobenius_rep(F: Field, pt: tuple) -> tuple:
    if not F.is_extension:
        return pt
    orbit = [tuple(F.frobenius(c, k) for c in pt) for k in range(F.degree)]
    return min(orbit)


# ---------------------------------------------------------------------------
# forms over a field as dictionaries {exponent tuple: coefficient}

def _form_dict(p: Poly, n: int, F: Field) -> dict:
    out = {}
    for exps, c in p.exponents():
        if any(exps[n:]):
            raise PreconditionError("expected a form in X only")
        out[exps[:n]] = c if F.characteristic or not isinstance(c, Fraction) else c
    return out


def _eval_dict(F: Field, form: dict, point: Sequence):
    acc = F.zero
    for exps, c in form.items():
        term = c
        for e, v in zip(exps, point):
            if e:
                term = F.mul(term, F.pow(v, e))
        acc = F.add(acc, term)
    return acc


def _restrict_line(F: Field, form: dict, fixed: dict, var: int) -> list:
    """Univariate polynomial in X_var after fixing the other coordinates."""
    out: list = []
    for exps, c in form.items():
        term = c
        for k, e in enumerate(exps):
            if k != var and e:
                term = F.mul(term, F.pow(fixed[k], e))
        if term == 0:
            continue
        e = exps[var]
        while len(out) <= e:
            out.append(F.zero)
        out[e] = F.add(out[e], term)
    return uni.trim(out)


def _gcd_all(F: Field, polys: list) -> list | None:
    """gcd of univariate polynomials; None if all are zero."""
    g: list = []
    for q in polys:
        if q:
            g = uni.gcd(F, g, q) if g else uni.monic(F, q)
            if len(g) == 1:
                break
    return g if g else None


def zeros_p1(F: Field, forms: list[dict]) -> list[tuple]:
    """Common zeros in P^1(F) of binary forms over a finite field."""
    forms = [f for f in forms if f]
    if not forms:
        raise InfiniteBaseLocus("all forms vanish on a line")
    pts = []
    g = _gcd_all(F, [_restrict_line(F, f, {0: F.one}, 1) for f in forms])
    if g is not None and len(g) > 1:
        pts += [(F.one, r) for r in uni.roots(F, g)]
    if all(_eval_dict(F, f, (F.zero, F.one)) == 0 for f in forms):
        pts.append((F.zero, F.one))
    return [normalize_point(F, p) for p in pts]


def zeros_p2(F: Field, forms: list[dict], rng: random.Random) -> list[tuple]:
    """Common zeros in P^2(F) of ternary forms over a finite field.

    Points on X3 = 0 come from the binary restrictions.  Affine points are
    found line by line (X1 = a) when F is small, otherwise from the roots of
    Res_{X2}(h1, h2)(X1) for two random combinations h1, h2 of the forms.
    """
    forms = [f for f in forms if f]
    pts = set()
    at_infinity = [{e[:2]: c for e, c in f.items() if e[2] == 0} for f in forms]
    at_infinity = [f for f in at_infinity if f]
    if not at_infinity:
        raise InfiniteBaseLocus("the line X3 = 0 lies in the zero set")
    for x1, x2 in zeros_p1(F, at_infinity):
        pts.add(normalize_point(F, (x1, x2, F.zero)))
    D = max(sum(next(iter(f))) for f in forms)
    if F.order <= 4 * D * D + 16:
        candidates = list(F.elements())
    else:
        candidates = _eliminate_x1(F, forms, D, rng)
    for a in candidates:
        lines = [_restrict_line(F, f, {0: a, 2: F.one}, 1) for f in forms]
        g = _gcd_all(F, lines)
        if g is None:
            raise InfiniteBaseLocus(f"the line X1 = {_scalar_text(F, a)}*X3 lies in the zero set")
        if len(g) == 1:
            continue
        for b in uni.roots(F, g):
            pts.add(normalize_point(F, (a, b, F.one)))
    return sorted(pts)


def _eliminate_x1(F: Field, forms: list[dict], D: int, rng: random.Random) -> list:
    """X1-coordinates of affine common zeros (a superset) via a resultant in X2."""
    npts = D * D + 1
    for _ in range(4):
        combos = []
        for _ in range(2):
            coeffs = [F.random(rng) for _ in forms]
            h: dict = {}
            for c, f in zip(coeffs, forms):
                for e, v in f.items():
                    h[e] = F.add(h.get(e, F.zero), F.mul(c, v))
            combos.append({e: v for e, v in h.items() if v != 0})
        xs, ys = [], []
        used = set()
        while len(xs) < npts:
            a = F.random(rng)
            if a in used:
                continue
            used.add(a)
            u = _restrict_line(F, combos[0], {0: a, 2: F.one}, 1)
            v = _restrict_line(F, combos[1], {0: a, 2: F.one}, 1)
            xs.append(a)
            ys.append(_resultant_bounded(F, u, v, combos, D))
        R = uni.interpolate(F, xs, ys)
        if R:
            return uni.roots(F, R)
    raise InfiniteBaseLocus("random combinations share a factor: base locus not finite")


def _resultant_bounded(F, u, v, combos, D):
    # pad to the generic degree D in X2 so the specialization commutes with Res
    u = list(u) + [F.zero] * (D + 1 - len(u))
    v = list(v) + [F.zero] * (D + 1 - len(v))
    return _sylvester_det(F, u, v)


def _sylvester_det(F: Field, u: list, v: list):
    """Determinant of the Sylvester matrix of u, v with formal degrees len-1."""
    m, n = len(u) - 1, len(v) - 1
    size = m + n
    if size == 0:
        return F.one
    rows = []
    for i in range(n):
        row = [F.zero] * size
        for k, c in enumerate(reversed(u)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [F.zero] * size
        for k, c in enumerate(reversed(v)):
            row[i + k] = c
        rows.append(row)
    from .linalg import det_fraction_free
    return det_fraction_free(ScalarMatrix(F, rows))


# -- rational points ---------------------------------------------------------

def _rational_zeros_p2(forms: list[dict], rng: random.Random) -> tuple[list[tuple], bool]:
    """Rational common zeros via resultants and factorization over Q.

    Returns (points, complete) where ``complete`` is False when the
    eliminant has irrational roots that might be further base points.
    """
    import sympy

    X1, X2, X3 = sympy.symbols("X1 X2 X3")
    gens = (X1, X2, X3)

    def to_expr(form):
        return sum(sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
                   * X1 ** e[0] * X2 ** e[1] * X3 ** e[2] for e, c in form.items())

    exprs = [to_expr(f) for f in forms if f]
    pts = set()
    complete = True

    def linear_roots(poly, var):
        nonlocal complete
        roots = []
        P = sympy.Poly(poly, var)
        if P.is_zero:
            return None
        for fac, _ in P.factor_list()[1]:
            if fac.degree() == 1:
                c1, c0 = fac.all_coeffs()
                roots.append(Fraction(int(sympy.numer(-c0 / c1)), int(sympy.denom(-c0 / c1))))
            elif fac.degree() > 1:
                complete = False
        return roots

    # points on X3 = 0
    binary = [sympy.expand(e.subs(X3, 0)) for e in exprs]
    binary = [b for b in binary if b != 0]
    if not binary:
        raise InfiniteBaseLocus("the line X3 = 0 lies in the zero set")
    g = sympy.gcd_list(binary) if len(binary) > 1 else binary[0]
    if sympy.Poly(g, X1, X2).total_degree() > 0:
        for r in linear_roots(g.subs(X1, 1), X2) or []:
            pts.add(normalize_point(_QQ, (1, _canon_q(r), 0)))
        if all(b.subs({X1: 0, X2: 1}) == 0 for b in binary):
            pts.add((0, 1, 0))
    affine = [sympy.expand(e.subs(X3, 1)) for e in exprs]

    def eliminant():
        for _ in range(4):
            h1 = sum(rng.randint(-20, 20) * e for e in affine)
            h2 = sum(rng.randint(-20, 20) * e for e in affine)
            R = sympy.expand(sympy.resultant(sympy.expand(h1), sympy.expand(h2), X2))
            if R != 0:
                return R
        raise InfiniteBaseLocus("random combinations share a factor: base locus not finite")

    # two independent eliminants; their gcd drops spurious factors
    R = sympy.gcd(eliminant(), eliminant())
    xs = linear_roots(sympy.expand(R), X1) or []
    for a in xs:
        ra = sympy.Rational(a.numerator, a.denominator)
        lines = [sympy.expand(e.subs(X1, ra)) for e in affine]
        lines = [l for l in lines if l != 0]
        if not lines:
            raise InfiniteBaseLocus("a line lies in the zero set")
        g = sympy.gcd_list(lines) if len(lines) > 1 else lines[0]
        if sympy.Poly(g, X2).degree() <= 0:
            continue
        for b in linear_roots(g, X2) or []:
            pts.add(normalize_point(_QQ, (_canon_q(a), _canon_q(b), 1)))
    return sorted(pts, key=lambda t: tuple(Fraction(c) for c in t)), complete


from .arith import QQ as _QQ  # noqa: E402


def extension_fields(F: Field, bound: int) -> list[Field]:
    out = [F]
    for e in range(2, min(bound, 3) + 1):
        out.append(ExtensionField(F.characteristic, e))
    return out


@dataclass
class PointSearch:
    points: list
    complete: bool | None
    fields_scanned: list


def find_base_points(param: Parametrization, extension_bound: int = 2,
                     user_points: Sequence[Sequence] | None = None,
                     seed: int = 42) -> PointSearch:
    """Base points, one representative per Frobenius class over finite fields."""
    if param.n == 2:
        return PointSearch([], True, [])
    rng = random.Random(seed)
    F = param.field
    points: list[BasePoint] = []
    complete: bool | None
    if F.characteristic == 0:
        forms = [_form_dict(f, 3, F) for f in param.f if f]
        coords, complete = _rational_zeros_p2(forms, rng)
        points = [BasePoint(c, F) for c in coords]
        scanned = ["QQ"]
    else:
        scanned = []
        seen = set()
        for K in extension_fields(F, max(1, extension_bound)):
            scanned.append(K.name)
            forms = [_form_dict(f, 3, K) for f in param.f if f]
            for pt in zeros_p2(K, forms, rng):
                bp = BasePoint(pt, K)
                if bp.degree < (K.degree if K.is_extension else 1):
                    continue
                rep = _frobenius_rep(K, pt)
                if rep in seen:
                    continue
                seen.add(rep)
                points.append(BasePoint(rep, K))
        complete = None  # decided later by the degree check
    for raw in user_points or []:
        pt = normalize_point(F, [F(c) if not isinstance(c, int) or F.characteristic else c
                                 for c in raw])
        if len(pt) != param.n:
            raise PreconditionError("user base point has the wrong number of coordinates")
        if any(v != 0 for v in param.eval_at(pt)):
            raise PreconditionError(f"user point {list(raw)} is not a base point")
        if not any(bp.field == F and bp.coords == pt for bp in points):
            points.append(BasePoint(pt, F, user_supplied=True))
    return PointSearch(points, complete, scanned)


# ---------------------------------------------------------------------------
# local multiplicities

def _local_generators(param: Parametrization, point: BasePoint, K: Field) -> list[dict]:
    """The f_i dehomogenized at the point's chart and translated to the origin."""
    coords = point.coords
    chart = next(i for i, c in enumerate(coords) if c != 0)
    others = [i for i in range(param.n) if i != chart]
    gens = []
    for f in param.f:
        if not f:
            continue
        out: dict = {}
        for exps, c in f.exponents():
            # prod_{k in others} (c_k + w_k)^{e_k}, the chart coordinate is 1
            partial = {(): K(c) if K.characteristic == 0 else c}
            for k in others:
                e = exps[k]
                ck = coords[k]
                expanded = {}
                for t in range(e + 1):
                    coeff = K.mul(comb(e, t) % K.characteristic if K.characteristic else comb(e, t),
                                  K.pow(ck, e - t)) if (e - t == 0 or ck != 0) else K.zero
                    if coeff != 0:
                        expanded[t] = coeff
                nxt = {}
                for key, val in partial.items():
                    for t, coeff in expanded.items():
                        nk = key + (t,)
                        nxt[nk] = K.add(nxt.get(nk, K.zero), K.mul(val, coeff))
                partial = nxt
            for key, val in partial.items():
                if val != 0:
                    out[key] = K.add(out.get(key, K.zero), val)
        gens.append({k: v for k, v in out.items() if v != 0})
    return gens


def _truncated_colength(K: Field, gens: list[dict], N: int) -> int:
    """dim k[u,v] / (gens + (u,v)^N)."""
    monos = [(a, s - a) for s in range(N) for a in range(s, -1, -1)]
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for g in gens:
        for (a, b) in monos:
            row = [K.zero] * len(monos)
            nz = False
            for (i, j), c in g.items():
                if i + j + a + b < N:
                    row[index[(i + a, j + b)]] = c
                    nz = True
            if nz:
                rows.append(row)
    r = rank(ScalarMatrix(K, rows)) if rows else 0
    return len(monos) - r


def _stable_colength(K: Field, gens: list[dict], ceiling: int) -> int:
    prev = None
    for N in range(1, ceiling + 2):
        val = _truncated_colength(K, gens, N)
        if val == prev:
            return val
        prev = val
    raise MultiplicityOverflow(f"local colength did not stabilize below N = {ceiling}")


def _generic_field(K: Field) -> Field:
    if K.is_extension or K.characteristic == 0 or K.characteristic >= 50:
        return K
    return ExtensionField(K.characteristic, 2 if K.characteristic ** 2 >= 50 else 3)


def local_multiplicities(param: Parametrization, point: BasePoint,
                         seed: int = 42, retrials: int = E_RETRIALS) -> tuple[int, int]:
    """(d_x, e_x) from truncated local colengths."""
    K = point.field
    if any(v != 0 for v in param.eval_at(point.coords, K)):
        raise PreconditionError("the point is not a base point")
    ceiling = 2 * param.d * param.d
    gens = _local_generators(param, point, K)
    d_x = _stable_colength(K, gens, ceiling)
    Kg = _generic_field(K)
    rng = random.Random(seed)
    best = None
    for _ in range(retrials):
        combos = []
        for _ in range(2):
            coeffs = [Kg.random(rng) if Kg.characteristic else rng.randint(-50, 50) for _ in gens]
            h: dict = {}
            for c, g in zip(coeffs, gens):
                for key, v in g.items():
                    h[key] = Kg.add(h.get(key, Kg.zero), Kg.mul(c, v))
            combos.append({k: v for k, v in h.items() if v != 0})
        try:
            val = _stable_colength(Kg, combos, ceiling)
        except MultiplicityOverflow:
            continue  # degenerate choice (e.g. a common factor); retry
        best = val if best is None else min(best, val)
    if best is None:
        raise MultiplicityOverflow("no generic pair of local generators found")
    return d_x, best


# ---------------------------------------------------------------------------
# the linear form L_x

def _eval_x(F: Field, p: Poly, point: Sequence):
    ring = p.ring
    acc = F.zero
    for m, c in p.terms.items():
        term = c
        for e, v in zip(ring.unpack(m)[:ring.n], point):
            if e:
                term = F.mul(term, F.pow(v, e))
        acc = F.add(acc, term)
    return acc


def linear_form_at(param: Parametrization, point: BasePoint, nu: int,
                   max_extra: int | None = None) -> Poly:
    """The T-linear form every syzygy specializes to a multiple of at the point."""
    from .strands import syzygy_basis

    if point.d_x is not None and point.e_x is not None and point.e_x == point.d_x:
        raise PreconditionError("the point is a local complete intersection; L_x is undefined")
    K = point.field
    extra = param.d + 1 if max_extra is None else max_extra
    for degree in range(max(nu, 0), max(nu, 0) + extra + 1):
        vectors = []
        for tup in syzygy_basis(param, degree).basis:
            vec = [_eval_x(K, a, point.coords) for a in tup]
            if any(v != 0 for v in vec):
                vectors.append(vec)
        if not vectors:
            continue
        if rank(ScalarMatrix(K, vectors)) > 1:
            raise InconsistentLinearForms(
                "specialized syzygies are not proportional at a point with e_x > d_x")
        vec = normalize_point(K, vectors[0])
        ring = Ring(param.n, K)
        return Poly(ring, {ring.var_unit(ring.n + i): c for i, c in enumerate(vec) if c != 0})
    raise NotLocallyNGenerated(
        "every syzygy vanishes at the point: it needs n+1 local generators")


# ---------------------------------------------------------------------------
# extraneous factor and the split

@dataclass
class Decomposition:
    macrae: Poly
    G: Poly
    H: Poly
    deg_lambda: int
    P: Poly | None = None


def norm_form(L: Poly, point: BasePoint, base_ring: Ring) -> Poly:
    """Product of the Frobenius conjugates of L, as a form over the base field."""
    K = point.field
    if not K.is_extension:
        return L.change_ring(base_ring) if L.ring != base_ring else L
    prod = None
    for k in range(point.degree):
        conj = Poly(L.ring, {m: K.frobenius(c, k) for m, c in L.terms.items()})
        prod = conj if prod is None else prod * conj
    for c in prod.terms.values():
        if c >= K.characteristic:
            raise InconsistentLinearForms("norm of L_x is not defined over the base field")
    return Poly(base_ring, dict(prod.terms))


def extraneous_factor(points: Sequence[BasePoint], ring: Ring) -> Poly:
    G = ring.one()
    for pt in points:
        if pt.e_x is None or pt.d_x is None:
            raise PreconditionError("multiplicities missing")
        k = pt.e_x - pt.d_x
        if k > 0:
            if pt.L_x is None:
                raise PreconditionError("L_x missing at a non-LCI point")
            G = G * norm_form(pt.L_x, pt, ring) ** k
    return G.normalize()


def _pth_root(P: Poly) -> Poly:
    ring = P.ring
    p = ring.field.characteristic
    terms = {}
    for m, c in P.terms.items():
        exps = ring.unpack(m)
        terms[ring.pack([e // p for e in exps])] = c  # c^(1/p) = c in GF(p)
    return Poly(ring, terms)


def radical_of_power(P: Poly) -> tuple[Poly, int]:
    """(H, e) with P = c * H^e and H squarefree, via gcd with a partial derivative."""
    ring = P.ring
    P = P.normalize()
    if P.is_constant():
        raise DecompositionFailure("nothing left after removing the extraneous factor")
    H = P
    mult = 1
    while True:
        partial = next((H.derivative(v) for v in H.variables() if H.derivative(v)), None)
        if partial is None:
            # every partial vanishes: H is a p-th power in characteristic p
            H = _pth_root(H)
            mult *= ring.field.characteristic
            continue
        H = H.exact_div(multivariate_gcd(H, partial)).normalize()
        break
    deg = H.degree()
    if P.degree() % deg:
        raise DecompositionFailure("degree of the quotient is not a multiple of its radical")
    e = P.degree() // deg
    if (H ** e).normalize() != P:
        raise DecompositionFailure("the quotient is not a power of an irreducible form")
    return H, e


def extraneous_and_split(param: Parametrization, macrae: Poly,
                         points: Sequence[BasePoint]) -> Decomposition:
    if not macrae:
        raise PreconditionError("the MacRae generator is zero")
    G = extraneous_factor(points, param.ring)
    try:
        P = macrae.exact_div(G)
    except DivisibilityError as exc:
        raise DecompositionFailure(
            "G does not divide the MacRae generator (incomplete base points?)") from exc
    H, e = radical_of_power(P)
    return Decomposition(macrae=macrae.normalize(), G=G, H=H, deg_lambda=e, P=P.normalize())


# ---------------------------------------------------------------------------
# full analysis

@dataclass
class BaseLocus:
    points: list
    complete: bool | None
    sum_d: int
    sum_e: int
    fields_scanned: list
    warnings: list = dc_field(default_factory=list)


def analyze_base_points(param: Parametrization, nu: int, extension_bound: int = 2,
                        user_points=None, seed: int = 42) -> BaseLocus:
    search = find_base_points(param, extension_bound, user_points, seed)
    warnings = []
    for pt in search.points:
        pt.d_x, pt.e_x = local_multiplicities(param, pt, seed)
        if pt.e_x > pt.d_x:
            pt.L_x = linear_form_at(param, pt, nu)
        elif pt.e_x < pt.d_x:
            raise InconsistentLinearForms("computed e_x < d_x")
    sum_d = sum(pt.d_x * pt.orbit_size for pt in search.points)
    sum_e = sum(pt.e_x * pt.orbit_size for pt in search.points)
    if search.complete is False:
        warnings.append("rational point search found irrational candidates; "
                        "the point list may be incomplete")
    return BaseLocus(search.points, search.complete, sum_d, sum_e, search.fields_scanned,
                     warnings)


# ---------------------------------------------------------------------------
# fiber degree

def fiber_degree_check(param: Parametrization, trials: int = 3, extension_bound: int = 2,
                       seed: int = 7) -> dict:
    """Most frequent number of preimages of random image points (advisory)."""
    F = param.field
    if not F.is_finite or F.is_extension:
        raise PreconditionError("the fiber check needs a prime field")
    rng = random.Random(seed)
    K = extension_fields(F, extension_bound)[-1]
    n = param.n
    forms_f = [_form_dict(f, n, K) for f in param.f]
    counts = []
    attempts = 0
    while len(counts) < trials and attempts < 20 * trials:
        attempts += 1
        x0 = [F.random(rng) for _ in range(n)]
        if not any(x0):
            continue
        y = param.eval_at(x0)
        if not any(y):
            continue
        minors = []
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                form: dict = {}
                for e, c in forms_f[i].items():
                    form[e] = K.add(form.get(e, K.zero), K.mul(y[j], c))
                for e, c in forms_f[j].items():
                    form[e] = K.sub(form.get(e, K.zero), K.mul(y[i], c))
                form = {e: c for e, c in form.items() if c != 0}
                if form:
                    minors.append(form)
        zeros = zeros_p1(K, minors) if n == 2 else zeros_p2(K, minors, rng)
        fiber = [z for z in zeros if any(_eval_dict(K, f, z) != 0 for f in forms_f if f)]
        counts.append(len(fiber))
    value, freq = Counter(counts).most_common(1)[0] if counts else (0, 0)
    return {"deg_lambda": value, "samples": counts,
            "note": f"{freq}/{len(counts)} samples agree; preimages counted over {K.name}"}
