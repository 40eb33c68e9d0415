"""Reference inputs: two hand examples and a random corpus with planted base points."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .arith import Field, field_from_spec
from .errors import ImplicitError
from .linalg import PolyMatrix, ScalarMatrix, det_fraction_free, nullspace, rank
from .parametrization import Parametrization
from .poly import Poly, Ring, exponent_tuples

EXAMPLE_MATRIX = [
    ["X1^2+X3^2", "X2", "X2*X3"],
    ["X1^2-X1*X2", "X1+2*X2", "X1^2+X3^2"],
    ["X1*X2+X1*X3", "2*X2+X3", "X2^2"],
    ["X1*X3+X2^2", "X3", "X1*X2"],
]
EXAMPLE_G = "T2^2+2*T3*T4+T3^2+T4^2"

STEINER_AFFINE = [
    ["0", "0", "1"],
    ["X1*X2", "1+X2^2", "-X1"],
    ["1+X1^2", "X1*X2", "0"],
    ["-2*X1", "-2*X2", "0"],
]
# signed maximal minors of the homogenized Steiner matrix
STEINER_F = ["2*X1*X2", "2*X2*X3", "2*X1*X3", "X1^2+X2^2+X3^2"]


def signed_minors(m: PolyMatrix) -> list[Poly]:
    """(-1)^(i+1) times the minor with row i deleted, for an (r+1) x r matrix."""
    rows, cols = m.shape
    if rows != cols + 1:
        raise ValueError("expected an (r+1) x r matrix")
    out = []
    for i in range(rows):
        minor = det_fraction_free(m.submatrix([k for k in range(rows) if k != i], range(cols)))
        out.append(minor if i % 2 == 0 else -minor)
    return out


def example_matrix(field="GF(13)") -> PolyMatrix:
    ring = Ring(3, field_from_spec(field))
    return PolyMatrix.parse(ring, EXAMPLE_MATRIX)


def example_param(field="GF(13)") -> Parametrization:
    m = example_matrix(field)
    return Parametrization(m.ring, signed_minors(m))


def steiner_param(field="QQ") -> Parametrization:
    return Parametrization.parse(field, 3, STEINER_F)


def steiner_matrix(field="QQ") -> PolyMatrix:
    return PolyMatrix.parse(Ring(3, field_from_spec(field)), STEINER_AFFINE)


# ---------------------------------------------------------------------------
# random corpus

@dataclass
class CorpusEntry:
    name: str
    param: Parametrization
    planted: list      # list of (kind, point) with kind in {"s", "t", "double"}
    composite: int = 1  # planted degree of the map onto its image


def _random_form(ring: Ring, d: int, rng: random.Random) -> Poly:
    F = ring.field
    n = ring.n
    return ring.from_terms((e + (0,) * (n + 1), F.random(rng)) for e in exponent_tuples(n, d))


def random_curve(field: Field, d: int, rng: random.Random) -> Parametrization:
    ring = Ring(2, field)
    while True:
        try:
            return Parametrization(ring, [_random_form(ring, d, rng) for _ in range(3)])
        except ImplicitError:
            continue


def composite_curve(field: Field, d: int, rng: random.Random) -> Parametrization:
    """g(X1^2, X2^2) for a random degree-d curve g: a 2:1 map onto its image."""
    ring = Ring(2, field)
    while True:
        g = random_curve(field, d, rng)
        squares = [ring.X(1) ** 2, ring.X(2) ** 2]
        f = []
        for p in g.f:
            acc = ring.zero()
            for exps, c in p.exponents():
                acc = acc + (squares[0] ** exps[0] * squares[1] ** exps[1]).scale(c)
            f.append(acc)
        try:
            return Parametrization(ring, f)
        except ImplicitError:
            continue


def _conditions(F: Field, d: int, kind: str, point, direction=None) -> list[list]:
    """Linear conditions on the coefficients of a ternary form of degree d."""
    monos = exponent_tuples(3, d)

    def value(e, pt):
        acc = F.one
        for k, v in zip(e, pt):
            if k:
                acc = F.mul(acc, F.pow(v, k))
        return acc

    def partial(e, i, pt):
        if e[i] == 0:
            return F.zero
        lowered = list(e)
        lowered[i] -= 1
        return F.mul(F(e[i]), value(lowered, pt))

    if kind == "s":
        return [[value(e, point) for e in monos]]
    if kind == "t":
        row = []
        for e in monos:
            acc = F.zero
            for i in range(3):
                acc = F.add(acc, F.mul(direction[i], partial(e, i, point)))
            row.append(acc)
        return [[value(e, point) for e in monos], row]
    if kind == "double":
        return [[partial(e, i, point) for e in monos] for i in range(3)]
    raise ValueError(kind)


def planted_surface(field: Field, d: int, kinds: list[str], rng: random.Random,
                    attempts: int = 50) -> CorpusEntry:
    """Four random ternary forms of degree d through planted base points."""
    ring = Ring(3, field)
    F = field
    monos = exponent_tuples(3, d)
    for _ in range(attempts):
        pts = []
        while len(pts) < len(kinds):
            pt = (F.one, F.random(rng), F.random(rng))
            if pt not in pts:
                pts.append(pt)
        rows = []
        planted = []
        for kind, pt in zip(kinds, pts):
            direction = (F.zero, F.one, F.random(rng)) if kind == "t" else None
            rows += _conditions(F, d, kind, pt, direction)
            planted.append((kind, pt))
        space = nullspace(ScalarMatrix(F, rows)) if rows else [
            [F.one if i == j else F.zero for j in range(len(monos))] for i in range(len(monos))]
        if len(space) < 4:
            raise ValueError("too many conditions for four independent forms")
        forms, coeff_rows = [], []
        for _ in range(4):
            coeffs = [F.random(rng) for _ in space]
            vec = [F.zero] * len(monos)
            for c, b in zip(coeffs, space):
                vec = [F.add(v, F.mul(c, x)) for v, x in zip(vec, b)]
            forms.append(ring.from_terms((e + (0,) * 4, c) for e, c in zip(monos, vec)))
            coeff_rows.append(vec)
        if rank(ScalarMatrix(F, coeff_rows)) < 4:
            continue  # dependent forms map onto a plane
        try:
            param = Parametrization(ring, forms)
        except ImplicitError:
            continue
        return CorpusEntry(f"surface d={d} {'+'.join(kinds) or 'free'}", param, planted)
    raise RuntimeError("could not build a planted parametrization")


SURFACE_CONFIGS = [
    (2, []), (2, ["s"]), (2, ["t"]), (2, ["s", "s"]),
    (3, ["s"] * 6), (3, ["double", "s", "s", "s"]), (3, ["t"] + ["s"] * 4),
    (3, ["t", "t", "s", "s"]), (3, ["t", "t", "t"]), (3, ["s"] * 5),
    (3, ["double"]), (3, ["double", "s", "s"]),
]


def random_corpus(field="GF(101)", seed: int = 2024) -> list[CorpusEntry]:
    """Curves of degree 2..5, one composite curve, and planted surfaces of degree 2 and 3."""
    F = field_from_spec(field)
    rng = random.Random(seed)
    out = []
    for d in range(2, 6):
        for k in range(2):
            out.append(CorpusEntry(f"curve d={d} #{k}", random_curve(F, d, rng), []))
    out.append(CorpusEntry("curve composite d=4", composite_curve(F, 2, rng), [], composite=2))
    for d, kinds in SURFACE_CONFIGS:
        out.append(planted_surface(F, d, kinds, rng))
    return out
