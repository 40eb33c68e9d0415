"""Exact scalar arithmetic: the rationals, prime fields and small extensions.

Field objects are stateless value types.  Elements are plain Python objects
so polynomial code can use native operators on the hot paths:

* ``Rationals``: ``int`` when integral, otherwise a reduced ``Fraction``.
* ``PrimeField``: ``int`` residue in ``[0, p)``.
* ``ExtensionField``: ``int`` code ``sum(c_k * p**k)`` of the coefficient
  vector of an element in the power basis of a fixed irreducible modulus.
  Codes below ``p`` are exactly the embedded prime-field elements.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import cached_property
from typing import Iterator

from .errors import MalformedScalar, PreconditionError

MAX_PRIME = 1 << 61


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _canon_q(value):
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


class Field:
    """Common interface; see the concrete subclasses."""

    characteristic: int = 0
    degree: int = 1
    is_extension = False
    zero = 0
    one = 1

    @property
    def p(self) -> int:
        return self.characteristic

    @property
    def is_finite(self) -> bool:
        return self.characteristic > 0

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inv(a), -k)
        result = self.one
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def __eq__(self, other):
        return (type(self) is type(other)
                and self.characteristic == other.characteristic
                and self.degree == other.degree)

    def __hash__(self):
        return hash((type(self).__name__, self.characteristic, self.degree))


class Rationals(Field):
    name = "QQ"

    def __call__(self, value):
        if isinstance(value, str):
            num, _, den = value.partition("/")
            try:
                return scalar_normalize(int(num), int(den) if den else 1)
            except ValueError as exc:
                raise MalformedScalar(f"not a rational: {value!r}") from exc
        if isinstance(value, (int, Fraction)):
            return _canon_q(Fraction(value))
        raise MalformedScalar(f"cannot coerce {value!r} to a rational")

    def add(self, a, b):
        return _canon_q(a + b)

    def sub(self, a, b):
        return _canon_q(a - b)

    def mul(self, a, b):
        return _canon_q(a * b)

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return _canon_q(Fraction(1) / a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return _canon_q(Fraction(a) / b)

    def random(self, rng: random.Random, bound: int = 50):
        return rng.randint(-bound, bound)

    def to_text(self, a) -> str:
        return str(a)

    def __repr__(self):
        return "Rationals()"


class PrimeField(Field):
    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise MalformedScalar(f"{p!r} is not a prime")
        if p >= MAX_PRIME:
            raise MalformedScalar("prime fields are limited to p < 2**61")
        self.characteristic = p

    @property
    def name(self) -> str:
        return f"GF({self.characteristic})"

    @property
    def order(self) -> int:
        return self.characteristic

    def __call__(self, value):
        p = self.characteristic
        if isinstance(value, str):
            num, _, den = value.partition("/")
            try:
                num, den = int(num), int(den) if den else 1
            except ValueError as exc:
                raise MalformedScalar(f"not a scalar: {value!r}") from exc
            value = Fraction(num, den) if den else None
            if value is None:
                raise MalformedScalar("zero denominator")
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise MalformedScalar(
                    f"characteristic {p} divides denominator of {value}")
            return value.numerator * pow(value.denominator, -1, p) % p
        if isinstance(value, int):
            return value % p
        raise MalformedScalar(f"cannot coerce {value!r} to GF({p})")

    def add(self, a, b):
        return (a + b) % self.characteristic

    def sub(self, a, b):
        return (a - b) % self.characteristic

    def mul(self, a, b):
        return a * b % self.characteristic

    def neg(self, a):
        return -a % self.characteristic

    def inv(self, a):
        if a % self.characteristic == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.characteristic)

    def pow(self, a, k):
        return pow(a, k, self.characteristic)

    def random(self, rng: random.Random, nonzero: bool = False):
        lo = 1 if nonzero else 0
        return rng.randrange(lo, self.characteristic)

    def elements(self) -> Iterator[int]:
        return iter(range(self.characteristic))

    def frobenius(self, a, k: int = 1):
        return a

    def to_text(self, a) -> str:
        return str(a)

    def __repr__(self):
        return f"PrimeField({self.characteristic})"


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    """Product of digit vectors modulo a monic modulus (low degree first)."""
    e = len(mod) - 1
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k] % p
        if c:
            for j in range(e):
                prod[k - e + j] -= c * mod[j]
        prod[k] = 0
    return [c % p for c in prod[:e]]


class ExtensionField(Field):
    """GF(p^e) for 2 <= e <= 3, with log/antilog tables when small."""

    is_extension = True
    TABLE_LIMIT = 1 << 17

    def __init__(self, p: int, e: int):
        if not is_prime(p):
            raise MalformedScalar(f"{p!r} is not a prime")
        if e not in (2, 3):
            raise PreconditionError("extension degree must be 2 or 3")
        self.characteristic = p
        self.degree = e
        self.order = p ** e
        self.modulus = self._find_modulus()
        self._build_tables()

    @property
    def name(self) -> str:
        return f"GF({self.characteristic}^{self.degree})"

    def _find_modulus(self) -> list[int]:
        # cubic or quadratic: irreducible iff it has no root in GF(p)
        p, e = self.characteristic, self.degree
        for code in range(p ** e):
            coeffs = [(code // p ** k) % p for k in range(e)] + [1]
            if coeffs[0] == 0:
                continue
            if all(sum(c * pow(x, k, p) for k, c in enumerate(coeffs)) % p
                   for x in range(p)):
                return coeffs
        raise AssertionError("no irreducible polynomial found")

    def digits(self, a: int) -> list[int]:
        p = self.characteristic
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_digits(self, digits) -> int:
        p = self.characteristic
        code = 0
        for c in reversed(list(digits)):
            code = code * p + c % p
        return code

    def _slow_mul(self, a: int, b: int) -> int:
        return self.from_digits(_poly_mulmod(
            self.digits(a), self.digits(b), self.modulus, self.characteristic))

    def _build_tables(self):
        q = self.order
        self._log = self._exp = None
        if q > self.TABLE_LIMIT:
            return
        n = q - 1
        primes = [r for r in range(2, n + 1)
                  if n % r == 0 and is_prime(r)]
        for g in range(2, q):
            if all(self._slow_pow(g, n // r) != 1 for r in primes):
                break
        exp = [0] * (2 * n)
        log = [0] * q
        x = 1
        for i in range(n):
            exp[i] = exp[i + n] = x
            log[x] = i
            x = self._slow_mul(x, g)
        self._exp, self._log = exp, log

    def _slow_pow(self, a: int, k: int) -> int:
        result = 1
        while k:
            if k & 1:
                result = self._slow_mul(result, a)
            a = self._slow_mul(a, a)
            k >>= 1
        return result

    def __call__(self, value):
        if isinstance(value, (list, tuple)):
            return self.from_digits(value)
        return PrimeField(self.characteristic)(value)

    def add(self, a, b):
        if a < self.characteristic and b < self.characteristic:
            return (a + b) % self.characteristic
        p = self.characteristic
        code, scale = 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            code += (ra + rb) % p * scale
            scale *= p
        return code

    def neg(self, a):
        p = self.characteristic
        code, scale = 0, 1
        while a:
            a, r = divmod(a, p)
            code += (-r % p) * scale
            scale *= p
        return code

    def mul(self, a, b):
        if not a or not b:
            return 0
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._slow_mul(a, b)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self._log is not None:
            n = self.order - 1
            return self._exp[(n - self._log[a]) % n]
        return self._slow_pow(a, self.order - 2)

    def pow(self, a, k):
        if not a:
            return 0 if k > 0 else 1
        if self._log is not None:
            n = self.order - 1
            return self._exp[(self._log[a] * k) % n]
        return self._slow_pow(a, k % (self.order - 1))

    def frobenius(self, a, k: int = 1):
        return self.pow(a, self.characteristic ** k)

    def random(self, rng: random.Random, nonzero: bool = False):
        return rng.randrange(1 if nonzero else 0, self.order)

    def elements(self) -> Iterator[int]:
        return iter(range(self.order))

    def element_degree(self, a: int) -> int:
        """Degree over GF(p) of the smallest subfield containing ``a``."""
        for k in range(1, self.degree + 1):
            if self.degree % k == 0 and self.frobenius(a, k) == a:
                return k
        return self.degree

    def to_text(self, a) -> str:
        return "[" + ",".join(map(str, self.digits(a))) + "]"

    @cached_property
    def generator_text(self) -> str:
        terms = [f"{c}*a^{k}" for k, c in enumerate(self.modulus) if c]
        return " + ".join(reversed(terms))

    def __repr__(self):
        return f"ExtensionField({self.characteristic}, {self.degree})"


QQ = Rationals()


def field_from_spec(spec) -> Field:
    """Accepts ``"QQ"``/``"Q"``/``"rationals"``, a prime, ``"GF(p)"`` or ``"Fp"``."""
    if isinstance(spec, Field):
        return spec
    if isinstance(spec, int):
        return PrimeField(spec)
    if isinstance(spec, str):
        s = spec.strip()
        if s.lower() in ("q", "qq", "rationals", "rational"):
            return QQ
        for prefix in ("GF(", "F(", "GF", "F"):
            if s.upper().startswith(prefix):
                body = s[len(prefix):].rstrip(")")
                if body.isdigit():
                    return PrimeField(int(body))
        if s.isdigit():
            return PrimeField(int(s))
    raise MalformedScalar(f"unknown field specification {spec!r}")


def scalar_normalize(raw_num: int, raw_den: int, field: Field = QQ):
    """Reduced canonical scalar ``raw_num / raw_den``.

    Over the rationals this is a ``Fraction`` with positive denominator.
    """
    if raw_den == 0:
        raise MalformedScalar("zero denominator")
    if field.is_finite:
        return field(Fraction(raw_num, raw_den))
    return Fraction(raw_num, raw_den)


def scalar_inverse(a, field: Field = QQ):
    if field.is_zero(a):
        raise ZeroDivisionError("inverse of zero")
    return field.inv(a)
