"""Sparse polynomials in X1..Xn, T1..T(n+1) over an exact field.

Monomials are packed into a single integer: one 16-bit field per variable
plus a leading total-degree field, so monomial multiplication is integer
addition and integer comparison is graded-lex order with
X1 > ... > Xn > T1 > ... > T(n+1).  Exponents must stay below 2**15.
"""

from __future__ import annotations

import heapq
import math
import random
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import univariate as uni
from .arith import Field, field_from_spec, _canon_q
from .errors import (DimensionMismatch, DivisibilityError, ParseError,
                     PreconditionError)

BITS = 16
MASK = (1 << BITS) - 1
MAX_EXP = (1 << (BITS - 1)) - 1


@lru_cache(maxsize=None)
def exponent_tuples(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of the given total degree, descending lex order."""
    if nvars == 0:
        return ((),) if degree == 0 else ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in exponent_tuples(nvars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


class Ring:
    """k[X1..Xn, T1..T(n+1)] with n in {2, 3}."""

    def __init__(self, n: int, field):
        if n not in (2, 3):
            raise PreconditionError("only n = 2 or n = 3 is supported")
        self.n = n
        self.field: Field = field_from_spec(field)
        self.nvars = 2 * n + 1
        self.names = [f"X{i + 1}" for i in range(n)] + [f"T{i + 1}" for i in range(n + 1)]
        self._index = {name: i for i, name in enumerate(self.names)}
        self._unit = [1 << (BITS * (self.nvars - 1 - i)) for i in range(self.nvars)]
        self._deg_unit = 1 << (BITS * self.nvars)
        self._guard = sum(1 << (BITS * k + BITS - 1) for k in range(self.nvars + 1))
        self._unpack_cache: dict[int, tuple[int, ...]] = {}

    # -- identity -----------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Ring) and self.n == other.n and self.field == other.field

    def __hash__(self):
        return hash((self.n, self.field))

    def __repr__(self):
        return f"Ring(n={self.n}, field={self.field.name})"

    def with_field(self, field) -> "Ring":
        return Ring(self.n, field)

    @property
    def x_indices(self) -> range:
        return range(self.n)

    @property
    def t_indices(self) -> range:
        return range(self.n, self.nvars)

    # -- monomials ----------------------------------------------------
    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise DimensionMismatch("exponent vector has wrong length")
        m = 0
        for e, u in zip(exps, self._unit):
            if e < 0 or e > MAX_EXP:
                raise PreconditionError(f"exponent {e} out of range")
            m += e * u
        return m + sum(exps) * self._deg_unit

    def unpack(self, m: int) -> tuple[int, ...]:
        cached = self._unpack_cache.get(m)
        if cached is None:
            out = []
            for k in range(self.nvars - 1, -1, -1):
                out.append((m >> (BITS * k)) & MASK)
            cached = tuple(out)
            if len(self._unpack_cache) < 1 << 20:
                self._unpack_cache[m] = cached
        return cached

    def mono_degree(self, m: int) -> int:
        return m >> (BITS * self.nvars)

    def divides(self, a: int, b: int) -> bool:
        """Monomial divisibility a | b."""
        g = self._guard
        return ((b | g) - a) & g == g

    def var_unit(self, i: int) -> int:
        return self._unit[i] + self._deg_unit

    def x_mono(self, exps: Sequence[int]) -> int:
        return self.pack(list(exps) + [0] * (self.n + 1))

    def t_mono(self, exps: Sequence[int]) -> int:
        return self.pack([0] * self.n + list(exps))

    # -- constructors -------------------------------------------------
    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {0: self.field.one})

    def const(self, c) -> "Poly":
        c = self.field(c) if not self.field.is_extension or isinstance(c, (Fraction,)) else c
        return Poly(self, {0: c} if c != 0 else {})

    def var(self, name: str) -> "Poly":
        if name not in self._index:
            raise ParseError(f"unknown variable {name!r}")
        return Poly(self, {self.var_unit(self._index[name]): self.field.one})

    def X(self, i: int) -> "Poly":
        return self.var(f"X{i}")

    def T(self, i: int) -> "Poly":
        return self.var(f"T{i}")

    def from_terms(self, items: Iterable[tuple[Sequence[int], object]]) -> "Poly":
        terms: dict[int, object] = {}
        F = self.field
        for exps, c in items:
            m = self.pack(exps)
            terms[m] = F.add(terms.get(m, F.zero), c)
        return Poly(self, _clean(terms, F))

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)


def _clean(terms: dict, F: Field) -> dict:
    if F.is_extension:
        return {m: c for m, c in terms.items() if c}
    p = F.characteristic
    if p:
        out = {}
        for m, c in terms.items():
            c %= p
            if c:
                out[m] = c
        return out
    return {m: _canon_q(c) for m, c in terms.items() if c}


class Poly:
    """Immutable sparse polynomial; ``terms`` maps packed monomial -> nonzero scalar."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- basic protocol -----------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"Poly({self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    def copy(self) -> "Poly":
        return Poly(self.ring, dict(self.terms))

    def _check(self, other: "Poly"):
        if self.ring != other.ring:
            raise DimensionMismatch("polynomials live in different rings")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return self.ring.const(other)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        F = self.ring.field
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        if F.is_extension:
            for m, c in small.items():
                out[m] = F.add(out.get(m, 0), c)
        else:
            for m, c in small.items():
                out[m] = out.get(m, 0) + c
        return Poly(self.ring, _clean(out, F))

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Poly(self.ring, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            F = self.ring.field
            if isinstance(other, Fraction) or (F.is_finite and not F.is_extension):
                other = F(other)
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return self.ring.zero()
        if len(a) < len(b):
            a, b = b, a
        F = self.ring.field
        out: dict[int, object] = {}
        get = out.get
        if F.is_extension:
            fadd, fmul = F.add, F.mul
            for mb, cb in b.items():
                for ma, ca in a.items():
                    m = ma + mb
                    out[m] = fadd(get(m, 0), fmul(ca, cb))
        else:
            for mb, cb in b.items():
                for ma, ca in a.items():
                    m = ma + mb
                    out[m] = get(m, 0) + ca * cb
        return Poly(self.ring, _clean(out, F))

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        F = self.ring.field
        if c == 0:
            return self.ring.zero()
        if F.is_extension:
            return Poly(self.ring, {m: F.mul(v, c) for m, v in self.terms.items()})
        return Poly(self.ring, _clean({m: v * c for m, v in self.terms.items()}, F))

    def mul_monomial(self, mono: int, c=None) -> "Poly":
        if c is None:
            return Poly(self.ring, {m + mono: v for m, v in self.terms.items()})
        return Poly(self.ring, {m + mono: v for m, v in self.scale(c).terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise PreconditionError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- structure ----------------------------------------------------
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return self.ring.mono_degree(max(self.terms))

    def leading_monomial(self) -> int:
        return max(self.terms)

    def leading_coefficient(self):
        return self.terms[max(self.terms)]

    def exponents(self):
        """Iterate (exponent tuple, coefficient) in descending monomial order."""
        unpack = self.ring.unpack
        for m in sorted(self.terms, reverse=True):
            yield unpack(m), self.terms[m]

    def bidegree(self) -> tuple[int, int] | None:
        """(X-degree, T-degree) if bihomogeneous, else None."""
        n = self.ring.n
        seen = None
        for exps, _ in self.exponents():
            bd = (sum(exps[:n]), sum(exps[n:]))
            if seen is None:
                seen = bd
            elif bd != seen:
                return None
        return seen

    def is_homogeneous(self) -> bool:
        degs = {self.ring.mono_degree(m) for m in self.terms}
        return len(degs) <= 1

    def x_degree(self) -> int:
        n = self.ring.n
        return max((sum(e[:n]) for e, _ in self.exponents()), default=-1)

    def t_degree(self) -> int:
        n = self.ring.n
        return max((sum(e[n:]) for e, _ in self.exponents()), default=-1)

    def variables(self) -> list[int]:
        """Indices of variables that occur."""
        used = [0] * self.ring.nvars
        for m in self.terms:
            for i, e in enumerate(self.ring.unpack(m)):
                if e:
                    used[i] = 1
        return [i for i, u in enumerate(used) if u]

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        return self.terms.get(0, self.ring.field.zero)

    def in_t_only(self) -> bool:
        n = self.ring.n
        return all(not any(self.ring.unpack(m)[:n]) for m in self.terms)

    def in_x_only(self) -> bool:
        n = self.ring.n
        return all(not any(self.ring.unpack(m)[n:]) for m in self.terms)

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(self.ring.pack(exps), self.ring.field.zero)

    def monomial_content(self) -> int:
        """Packed gcd of all monomials."""
        if not self.terms:
            return 0
        mins = None
        for m in self.terms:
            e = self.ring.unpack(m)
            mins = list(e) if mins is None else [min(a, b) for a, b in zip(mins, e)]
        return self.ring.pack(mins)

    def derivative(self, var: int | str) -> "Poly":
        ring = self.ring
        i = ring._index[var] if isinstance(var, str) else var
        unit = ring.var_unit(i)
        F = ring.field
        out = {}
        for m, c in self.terms.items():
            e = ring.unpack(m)[i]
            if e:
                out[m - unit] = F.mul(c, F(e)) if F.is_extension else c * e
        return Poly(ring, _clean(out, F))

    def map_coefficients(self, fn, ring: Ring | None = None) -> "Poly":
        ring = ring or self.ring
        return Poly(ring, _clean({m: fn(c) for m, c in self.terms.items()}, ring.field))

    def change_ring(self, ring: Ring) -> "Poly":
        """Reinterpret the terms in a ring with the same variables (e.g. a field extension)."""
        if ring.n != self.ring.n:
            raise DimensionMismatch("rings have different variables")
        return Poly(ring, dict(self.terms))

    # -- text ---------------------------------------------------------
    def to_text(self) -> str:
        if not self.terms:
            return "0"
        F = self.ring.field
        names = self.ring.names
        parts = []
        for exps, c in self.exponents():
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if F.is_extension:
                coeff = F.to_text(c)
                sign = "+"
                body = "*".join([coeff] + factors) if (c != 1 or not factors) else "*".join(factors)
            else:
                sign = "-" if c < 0 else "+"
                mag = -c if c < 0 else c
                if mag == 1 and factors:
                    body = "*".join(factors)
                else:
                    body = "*".join([str(mag)] + factors)
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    # -- evaluation & substitution ------------------------------------
    def eval(self, x_values=None, t_values=None):
        """Substitute X (and optionally T) values.

        With only ``x_values`` the result is a polynomial in T; with both it
        is a scalar.  Values must belong to the coefficient field (or, for an
        extension ring, to the extension).
        """
        ring, F = self.ring, self.ring.field
        n = ring.n
        if x_values is not None and len(x_values) != n:
            raise DimensionMismatch(f"expected {n} X-values")
        if t_values is not None and len(t_values) != n + 1:
            raise DimensionMismatch(f"expected {n + 1} T-values")
        values = [None] * ring.nvars
        if x_values is not None:
            values[:n] = list(x_values)
        if t_values is not None:
            values[n:] = list(t_values)
        pow_cache: dict[tuple[int, int], object] = {}
        out: dict[int, object] = {}
        for m, c in self.terms.items():
            exps = list(ring.unpack(m))
            coeff = c
            for i, v in enumerate(values):
                e = exps[i]
                if v is None or e == 0:
                    continue
                key = (i, e)
                pv = pow_cache.get(key)
                if pv is None:
                    pv = pow_cache[key] = F.pow(v, e)
                coeff = F.mul(coeff, pv)
                exps[i] = 0
                if coeff == 0:
                    break
            if coeff != 0:
                mm = ring.pack(exps)
                out[mm] = F.add(out.get(mm, F.zero), coeff)
        result = Poly(ring, _clean(out, F))
        if x_values is not None and t_values is not None:
            return result.constant_value()
        return result

    def compose_t(self, images: Sequence["Poly"]) -> "Poly":
        """Substitute T_i -> images[i] (multivariate Horner scheme)."""
        ring = self.ring
        n = ring.n
        if len(images) != n + 1:
            raise DimensionMismatch(f"expected {n + 1} images")
        items = [(ring.unpack(m), c) for m, c in self.terms.items()]

        def rec(group, k):
            if k == n + 1:
                acc = ring.zero()
                for exps, c in group:
                    acc = acc + Poly(ring, {ring.pack(list(exps[:n]) + [0] * (n + 1)): c})
                return acc
            by_exp: dict[int, list] = {}
            for exps, c in group:
                by_exp.setdefault(exps[n + k], []).append((exps, c))
            top = max(by_exp)
            acc = ring.zero()
            for e in range(top, -1, -1):
                acc = acc * images[k] if acc else acc
                if e in by_exp:
                    acc = acc + rec(by_exp[e], k + 1)
            return acc

        return rec(items, 0) if items else ring.zero()

    def homogenize_x(self, target: int) -> "Poly":
        """Homogenize in X3 with respect to X1, X2 to the given X-degree."""
        ring = self.ring
        if ring.n != 3:
            raise PreconditionError("homogenization in X3 needs n = 3")
        out = {}
        x3 = ring.var_unit(2)
        for m, c in self.terms.items():
            e = ring.unpack(m)
            if e[2]:
                raise PreconditionError("input already involves X3")
            deficit = target - e[0] - e[1]
            if deficit < 0:
                raise PreconditionError(
                    f"target degree {target} below X1,X2-degree {e[0] + e[1]}")
            out[m + deficit * x3] = c
        return Poly(ring, out)

    # -- normalization & division -------------------------------------
    def normalize(self) -> "Poly":
        """Canonical scalar multiple (see module docs of the package)."""
        if not self.terms:
            return self
        F = self.ring.field
        if F.characteristic == 0:
            den = 1
            for c in self.terms.values():
                if isinstance(c, Fraction):
                    den = den * c.denominator // math.gcd(den, c.denominator)
            ints = {m: int(c * den) for m, c in self.terms.items()}
            g = 0
            for v in ints.values():
                g = math.gcd(g, v)
            if ints[max(ints)] < 0:
                g = -g
            return Poly(self.ring, {m: v // g for m, v in ints.items()})
        return self.scale(F.inv(self.leading_coefficient()))

    def exact_div(self, divisor: "Poly") -> "Poly":
        """Quotient of an exact division; raises DivisibilityError otherwise."""
        self._check(divisor)
        if not divisor.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        ring, F = self.ring, self.ring.field
        if not self.terms:
            return ring.zero()
        lm_q = max(divisor.terms)
        inv = F.inv(divisor.terms[lm_q])
        rest = [(m, c) for m, c in divisor.terms.items() if m != lm_q]
        rem = dict(self.terms)
        heap = [-m for m in rem]
        heapq.heapify(heap)
        quotient = {}
        divides = ring.divides
        ext = F.is_extension
        p = F.characteristic
        while heap:
            m = -heapq.heappop(heap)
            c = rem.get(m)
            if c is None:
                continue
            if c == 0 or (p and not ext and c % p == 0):
                del rem[m]
                continue
            if not divides(lm_q, m):
                raise DivisibilityError("polynomial division is not exact")
            shift = m - lm_q
            qc = F.mul(c, inv) if (ext or p) else _canon_q(c * inv)
            quotient[shift] = qc
            del rem[m]
            for mq, cq in rest:
                t = mq + shift
                old = rem.get(t)
                if ext:
                    new = F.sub(old if old is not None else 0, F.mul(qc, cq))
                elif p:
                    new = ((old or 0) - qc * cq) % p
                else:
                    new = (old or 0) - qc * cq
                if old is None:
                    heapq.heappush(heap, -t)
                rem[t] = new
        return Poly(ring, _clean(quotient, F))

    def divides(self, other: "Poly") -> bool:
        try:
            other.exact_div(self)
            return True
        except DivisibilityError:
            return False


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([XT])(\d+)|(\^)|(\*)|(/)|(\+)|(-))")


def parse_poly(text: str, ring: Ring) -> Poly:
    """Parse the polynomial text grammar.

    poly := term (('+'|'-') term)* ; term := [coeff '*'] factor ('*' factor)* | coeff
    factor := var ['^' natural] ; coeff := integer | integer '/' integer
    A leading sign is accepted.
    """
    tokens = []
    pos = 0
    stripped = text.strip()
    while pos < len(stripped):
        mt = _TOKEN.match(stripped, pos)
        if not mt or mt.end() == pos:
            bad = stripped[pos:].strip()[:8]
            if re.match(r"[A-Za-z]", bad):
                raise ParseError(f"unknown variable near {bad!r}")
            raise ParseError(f"unexpected input near {bad!r}")
        pos = mt.end()
        if mt.group(1) is not None:
            tokens.append(("int", int(mt.group(1))))
        elif mt.group(2):
            tokens.append(("var", mt.group(2) + mt.group(3)))
        else:
            tokens.append(("op", next(g for g in mt.groups()[3:] if g)))
    if not tokens:
        raise ParseError("empty polynomial")
    F = ring.field
    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else (None, None)

    def take():
        nonlocal idx
        tok = tokens[idx] if idx < len(tokens) else (None, None)
        idx += 1
        return tok

    def factor():
        kind, val = take()
        if kind != "var":
            raise ParseError(f"expected a variable, got {val!r}")
        if val not in ring._index:
            raise ParseError(f"unknown variable {val!r}")
        exp = 1
        if peek() == ("op", "^"):
            take()
            kind, e = take()
            if kind != "int":
                raise ParseError(f"malformed exponent after {val}")
            exp = e
        return ring._index[val], exp

    def term():
        exps = [0] * ring.nvars
        coeff = Fraction(1)
        kind, val = peek()
        if kind == "int":
            take()
            num, den = val, 1
            if peek() == ("op", "/"):
                take()
                kind, den = take()
                if kind != "int":
                    raise ParseError("malformed rational coefficient")
                if den == 0:
                    raise ParseError("zero denominator")
            coeff = Fraction(num, den)
            if peek() != ("op", "*"):
                return exps, coeff
            take()
        while True:
            i, e = factor()
            exps[i] += e
            if peek() == ("op", "*"):
                take()
                continue
            break
        return exps, coeff

    terms: dict[int, object] = {}
    sign = 1
    if peek()[0] == "op" and peek()[1] in "+-":
        sign = -1 if take()[1] == "-" else 1
    while True:
        exps, coeff = term()
        c = coeff * sign
        try:
            value = F(c) if F.characteristic else _canon_q(c)
        except Exception as exc:
            raise ParseError(str(exc)) from exc
        m = ring.pack(exps)
        terms[m] = F.add(terms.get(m, F.zero), value)
        kind, val = peek()
        if kind is None:
            break
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
            continue
        raise ParseError(f"unexpected token {val!r}")
    return Poly(ring, _clean(terms, F))


# ---------------------------------------------------------------------------
# free functions named after the module contract

def eval_poly(p: Poly, x_values, t_values=None):
    return p.eval(x_values, t_values)


def exact_div(p: Poly, q: Poly) -> Poly:
    return p.exact_div(q)


def homogenize_x(p: Poly, target_degree: int) -> Poly:
    return p.homogenize_x(target_degree)


def monomial_basis(ring: Ring, x_degree: int) -> list[int]:
    """Packed X-monomials of the given degree, graded-lex descending."""
    return [ring.x_mono(e) for e in exponent_tuples(ring.n, x_degree)]


def monomials_in(ring: Ring, variables: Sequence[int], degree: int,
                 homogeneous: bool = True) -> list[int]:
    """Packed monomials in the chosen variables of degree ``degree`` (or <= it)."""
    degrees = [degree] if homogeneous else range(degree, -1, -1)
    out = []
    for dd in degrees:
        for e in exponent_tuples(len(variables), dd):
            full = [0] * ring.nvars
            for v, k in zip(variables, e):
                full[v] = k
            out.append(ring.pack(full))
    return out


# ---------------------------------------------------------------------------
# gcd

def multivariate_gcd(p: Poly, q: Poly, method: str = "auto") -> Poly:
    """Normalized gcd of two polynomials.

    ``method`` is ``"prs"`` (content/primitive-part recursion with
    subresultant remainder sequences), ``"linear"`` (cofactor solve on the
    multivariate Sylvester map, certified by exact division) or ``"auto"``.
    """
    p._check(q)
    if not p and not q:
        raise PreconditionError("gcd(0, 0) is undefined")
    if not q:
        return p.normalize()
    if not p:
        return q.normalize()
    ring = p.ring
    if p.is_constant() or q.is_constant():
        return ring.one()
    # monomial factors split off: gcd(m1*A, m2*B) = gcd(m1, m2) * gcd(A, B)
    mp, mq = p.monomial_content(), q.monomial_content()
    mono = ring.pack([min(a, b) for a, b in zip(ring.unpack(mp), ring.unpack(mq))])
    a = p.exact_div(Poly(ring, {mp: ring.field.one})) if mp else p
    b = q.exact_div(Poly(ring, {mq: ring.field.one})) if mq else q
    if a.degree() > b.degree():
        a, b = b, a
    if a.is_constant():
        core = ring.one()
    elif a.divides(b):
        core = a
    elif method == "prs":
        core = _gcd_prs(a, b)
    elif ring.field.characteristic == 0:
        core = _gcd_rational(a, b)
    else:
        core = _gcd_linear(a, b)
    result = core.mul_monomial(mono) if mono else core
    return result.normalize()


def gcd_many(polys: Iterable[Poly], method: str = "auto") -> Poly:
    g = None
    for f in polys:
        if not f:
            continue
        if g is None:
            g = f.normalize()
        elif not g.divides(f):
            g = multivariate_gcd(g, f, method)
        if g.is_constant():
            break
    if g is None:
        raise PreconditionError("gcd of zero polynomials")
    return g


# -- subresultant PRS ---------------------------------------------------------

def _split(p: Poly, v: int) -> list[Poly]:
    """Coefficients of p as a polynomial in variable v (dense, low first)."""
    ring = p.ring
    unit = ring.var_unit(v)
    groups: dict[int, dict] = {}
    for m, c in p.terms.items():
        e = ring.unpack(m)[v]
        groups.setdefault(e, {})[m - e * unit] = c
    if not groups:
        return []
    out = [ring.zero()] * (max(groups) + 1)
    for e, t in groups.items():
        out[e] = Poly(ring, t)
    return out


def _join(coeffs: list[Poly], v: int, ring: Ring) -> Poly:
    unit = ring.var_unit(v)
    terms = {}
    for e, c in enumerate(coeffs):
        for m, val in c.terms.items():
            terms[m + e * unit] = val
    return Poly(ring, terms)


def _const_gcd(a: Poly, b: Poly) -> Poly:
    ring = a.ring
    if ring.field.characteristic:
        return ring.one()
    va, vb = a.constant_value(), b.constant_value()
    g = math.gcd(int(va), int(vb)) if va or vb else 1
    return ring.const(g or 1)


def _content(coeffs: list[Poly]) -> Poly:
    g = None
    for c in coeffs:
        if not c:
            continue
        g = c if g is None else _prs_core(g, c)
        if g.is_constant() and g.ring.field.characteristic:
            break
    return g


def _prem(A: list[Poly], B: list[Poly]) -> list[Poly]:
    R = list(A)
    db = len(B) - 1
    lcb = B[-1]
    e = len(A) - len(B) + 1
    while R and len(R) - 1 >= db:
        lcr = R[-1]
        shift = len(R) - 1 - db
        R = [c * lcb for c in R]
        for k, bk in enumerate(B):
            if bk:
                R[k + shift] = R[k + shift] - lcr * bk
        while R and not R[-1]:
            R.pop()
        e -= 1
    if e > 0:
        f = lcb ** e
        R = [c * f for c in R]
    return R


def _prs_core(a: Poly, b: Poly) -> Poly:
    """gcd over Z[vars] (rational case, integer coefficients) or F[vars]; unnormalized."""
    if not a:
        return b
    if not b:
        return a
    va, vb = set(a.variables()), set(b.variables())
    if not va and not vb:
        return _const_gcd(a, b)
    ring = a.ring
    # pick the variable of least combined degree as main variable
    candidates = sorted(va | vb)
    v = min(candidates, key=lambda i: len(_split(a, i)) + len(_split(b, i)))
    if v not in va:
        return _prs_core(a, _content(_split(b, v)))
    if v not in vb:
        return _prs_core(_content(_split(a, v)), b)
    A, B = _split(a, v), _split(b, v)
    ca, cb = _content(A), _content(B)
    c = _prs_core(ca, cb)
    A = [x.exact_div(ca) for x in A]
    B = [x.exact_div(cb) for x in B]
    if len(A) < len(B):
        A, B = B, A
    g = ring.one()
    h = ring.one()
    while True:
        delta = len(A) - len(B)
        R = _prem(A, B)
        if not R:
            break
        if len(R) == 1:
            B = [ring.one()]
            break
        div = g * h ** delta
        A, B = B, [x.exact_div(div) for x in R]
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = (g ** delta).exact_div(h ** (delta - 1))
    cB = _content(B)
    B = [x.exact_div(cB) for x in B]
    return c * _join(B, v, ring)


def _gcd_prs(a: Poly, b: Poly) -> Poly:
    ring = a.ring
    if ring.field.characteristic == 0:
        a, b = a.normalize(), b.normalize()
    return _prs_core(a, b)


# -- linear-algebra (cofactor) gcd -------------------------------------------

def _restrict_to_line(p: Poly, base, direction) -> list:
    ring, F = p.ring, p.ring.field
    lines = [[base[i], direction[i]] for i in range(ring.nvars)]
    cache: dict[tuple[int, int], list] = {}
    acc: list = []
    for m, c in p.terms.items():
        term = [c]
        for i, e in enumerate(ring.unpack(m)):
            if e:
                key = (i, e)
                pw = cache.get(key)
                if pw is None:
                    pw = [F.one]
                    for _ in range(e):
                        pw = uni.mul(F, pw, uni.trim(list(lines[i])))
                    cache[key] = pw
                term = uni.mul(F, term, pw)
        acc = uni.add(F, acc, term)
    return acc


def _line_field(F: Field, degree: int) -> Field:
    from .arith import ExtensionField
    if F.is_finite and not F.is_extension and F.characteristic < 4 * degree + 8:
        return ExtensionField(F.characteristic, 2 if F.characteristic ** 2 >= 4 * degree + 8 else 3)
    return F


def gcd_degree_bound(a: Poly, b: Poly, rng: random.Random, lines: int = 2) -> int:
    """Upper bound for deg gcd(a, b) from restrictions to random lines."""
    Da, Db = a.degree(), b.degree()
    F = _line_field(a.ring.field, max(Da, Db))
    best = min(Da, Db)
    found = 0
    for _ in range(8 * lines):
        base = [F.random(rng) for _ in range(a.ring.nvars)]
        direction = [F.random(rng) for _ in range(a.ring.nvars)]
        ra = _restrict_to_line(a, base, direction)
        rb = _restrict_to_line(b, base, direction)
        if len(ra) - 1 != Da or len(rb) - 1 != Db:
            continue
        best = min(best, len(uni.gcd(F, ra, rb)) - 1)
        found += 1
        if found >= lines or best == 0:
            break
    return best


def cofactor_gcd(a: Poly, b: Poly, g: int, rng: random.Random | None = None) -> Poly | None:
    """Try to find gcd(a, b) of total degree exactly ``g``.

    Solves a*V = b*U with deg U = deg a - g, deg V = deg b - g.  At the true
    gcd degree the solution space is one-dimensional and U is the cofactor
    a/gcd; the answer is certified by exact division.
    """
    from .linalg import ScalarMatrix, nullspace

    ring, F = a.ring, a.ring.field
    variables = sorted(set(a.variables()) | set(b.variables()))
    homog = a.is_homogeneous() and b.is_homogeneous()
    ubasis = monomials_in(ring, variables, a.degree() - g, homog)
    vbasis = monomials_in(ring, variables, b.degree() - g, homog)
    columns = []
    for u in ubasis:
        columns.append({m + u: F.neg(c) for m, c in b.terms.items()})
    for v in vbasis:
        columns.append({m + v: c for m, c in a.terms.items()})
    row_ids = sorted({m for col in columns for m in col}, reverse=True)
    ncols = len(columns)
    rng = rng or random.Random(len(row_ids))

    def solve(rows_used):
        index = {m: i for i, m in enumerate(rows_used)}
        grid = [[F.zero] * ncols for _ in rows_used]
        for j, col in enumerate(columns):
            for m, c in col.items():
                i = index.get(m)
                if i is not None:
                    grid[i][j] = c
        return nullspace(ScalarMatrix(F, grid))

    sample = row_ids
    if len(row_ids) > 2 * ncols + 64:
        sample = sorted(rng.sample(row_ids, ncols + 48), reverse=True)
    kernel = solve(sample)
    if len(kernel) > 1 and sample is not row_ids:
        kernel = solve(row_ids)
    for vec in kernel:
        U = Poly(ring, _clean({m: vec[j] for j, m in enumerate(ubasis)}, F))
        if not U:
            continue
        try:
            G = a.exact_div(U)
            b.exact_div(G)
        except DivisibilityError:
            continue
        return G
    return None


def _gcd_linear(a: Poly, b: Poly) -> Poly:
    rng = random.Random(0x5EED + a.degree() * 131 + b.degree())
    bound = gcd_degree_bound(a, b, rng)
    for g in range(bound, 0, -1):
        G = cofactor_gcd(a, b, g, rng)
        if G is not None:
            return G
    return a.ring.one()


# -- rational gcd through prime images ------------------------------------

def _large_primes():
    from .arith import is_prime
    q = (1 << 61) - 1
    while True:
        if is_prime(q):
            yield q
        q -= 2


def _rational_reconstruct(a: int, m: int) -> Fraction | None:
    """The fraction r/s = a mod m with |r|, s <= sqrt(m/2), if it exists."""
    bound = math.isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, s1) != 1:
        return None
    return Fraction(r1, s1)


def _gcd_rational(a: Poly, b: Poly, max_primes: int = 8) -> Poly:
    """gcd over Q from images modulo large primes, certified by exact division."""
    from .arith import PrimeField

    ring = a.ring
    a, b = a.normalize(), b.normalize()
    modulus, residues, support, best = 1, None, None, None
    for count, p in enumerate(_large_primes()):
        if count == max_primes:
            break
        Fp = PrimeField(p)
        rp = ring.with_field(Fp)
        ap, bp = a.change_ring(rp).map_coefficients(Fp), b.change_ring(rp).map_coefficients(Fp)
        if ap.degree() != a.degree() or bp.degree() != b.degree():
            continue
        gp = multivariate_gcd(ap, bp)
        deg = gp.degree()
        if best is None or deg < best:
            best, modulus, residues, support = deg, 1, None, sorted(gp.terms)
        elif deg > best or sorted(gp.terms) != support:
            continue
        if residues is None:
            residues = {m: gp.terms[m] for m in support}
            modulus = p
        else:
            for m in support:
                r = residues[m]
                r += modulus * ((gp.terms[m] - r) * pow(modulus, -1, p) % p)
                residues[m] = r
            modulus *= p
        recon = {}
        for m, r in residues.items():
            q = _rational_reconstruct(r, modulus)
            if q is None:
                break
            recon[m] = _canon_q(q)
        else:
            cand = Poly(ring, recon).normalize()
            if cand.is_constant():
                return ring.one()
            if cand.divides(a) and cand.divides(b):
                return cand
    return _gcd_prs(a, b)
