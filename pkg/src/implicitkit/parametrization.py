"""The input map: n+1 forms of a common degree d in X1..Xn."""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

from .arith import field_from_spec
from .errors import DimensionMismatch, InfiniteBaseLocus, PreconditionError
from .linalg import ScalarMatrix
from .poly import Poly, Ring, gcd_many, monomial_basis


class Parametrization:
    """f = (f_1, ..., f_{n+1}) homogeneous of degree d, with no common factor."""

    def __init__(self, ring: Ring, f: Sequence[Poly]):
        self.ring = ring
        self.n = ring.n
        self.field = ring.field
        self.f = list(f)
        if len(self.f) != self.n + 1:
            raise DimensionMismatch(f"expected {self.n + 1} forms, got {len(self.f)}")
        degrees = set()
        for p in self.f:
            if p.ring != ring:
                raise DimensionMismatch("forms live in different rings")
            if not p:
                continue
            if not p.in_x_only():
                raise PreconditionError("parametrizing forms must not involve T")
            bd = p.bidegree()
            if bd is None:
                raise PreconditionError(f"{p} is not homogeneous")
            degrees.add(bd[0])
        if not degrees:
            raise PreconditionError("all forms are zero")
        if len(degrees) > 1:
            raise PreconditionError(f"forms have different degrees {sorted(degrees)}")
        self.d = degrees.pop()
        if self.d < 1:
            raise PreconditionError("forms must have positive degree")
        common = gcd_many(p for p in self.f if p)
        if not common.is_constant():
            raise InfiniteBaseLocus(f"the forms share the factor {common}")

    @classmethod
    def parse(cls, field, n: int, texts: Sequence[str]) -> "Parametrization":
        ring = Ring(n, field_from_spec(field))
        return cls(ring, [ring.parse(t) for t in texts])

    def __repr__(self):
        return f"Parametrization(n={self.n}, d={self.d}, f={[str(p) for p in self.f]})"

    # -- graded pieces ----------------------------------------------------
    def monomials(self, degree: int) -> list[int]:
        return _basis(self.ring, degree)

    def index(self, degree: int) -> dict[int, int]:
        return _index(self.ring, degree)

    def vector(self, p: Poly, degree: int) -> list:
        """Coefficient vector of an X-form over monomial_basis(degree)."""
        idx = self.index(degree)
        vec = [self.field.zero] * len(idx)
        for m, c in p.terms.items():
            if m not in idx:
                raise DimensionMismatch(f"{p} is not a form of degree {degree}")
            vec[idx[m]] = c
        return vec

    def from_vector(self, vec: Sequence, degree: int) -> Poly:
        return Poly(self.ring, {m: c for m, c in zip(self.monomials(degree), vec) if c})

    def multiplication_matrix(self, p: Poly, degree: int) -> ScalarMatrix:
        """Matrix of g -> p*g from A_degree to A_{degree + deg p}."""
        target = degree + max(p.degree(), 0)
        idx = self.index(target)
        F = self.field
        cols = []
        for m in self.monomials(degree):
            col = [F.zero] * len(idx)
            for mp, c in p.terms.items():
                col[idx[m + mp]] = c
            cols.append(col)
        rows = [list(r) for r in zip(*cols)] if cols else [[] for _ in idx]
        return ScalarMatrix(F, rows)

    @cached_property
    def x_vars(self) -> list[Poly]:
        return [self.ring.X(i + 1) for i in range(self.n)]

    def eval_at(self, point: Sequence, field=None) -> list:
        """(f_1(x), ..., f_{n+1}(x)) for a point over ``field`` (default: base field)."""
        F = field or self.field
        out = []
        for p in self.f:
            acc = F.zero
            for m, c in p.terms.items():
                term = c
                for e, v in zip(self.ring.unpack(m)[:self.n], point):
                    if e:
                        term = F.mul(term, F.pow(v, e))
                acc = F.add(acc, term)
            out.append(acc)
        return out

    def substitute(self, g: Poly) -> Poly:
        """g(T -> f): the image test used throughout."""
        return g.compose_t(self.f)


_BASIS_CACHE: dict = {}


def _basis(ring: Ring, degree: int) -> list[int]:
    key = (ring.n, degree)
    out = _BASIS_CACHE.get(key)
    if out is None:
        out = _BASIS_CACHE[key] = monomial_basis(ring, degree)
    return out


def _index(ring: Ring, degree: int) -> dict[int, int]:
    key = (ring.n, degree, "index")
    out = _BASIS_CACHE.get(key)
    if out is None:
        out = _BASIS_CACHE[key] = {m: i for i, m in enumerate(_basis(ring, degree))}
    return out
