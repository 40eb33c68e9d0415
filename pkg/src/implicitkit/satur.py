"""Degreewise pieces of I, colon ideals and the saturation I_X = I : m^inf."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb

from .linalg import ScalarMatrix, nullspace, rref
from .parametrization import Parametrization
from .poly import Poly

MAX_SWEEPS = 50


class Subspace:
    """Subspace of A_degree kept as reduced echelon rows over the monomial basis."""

    def __init__(self, F, dim_ambient: int, rows=None, pivots=None):
        self.field = F
        self.ambient = dim_ambient
        self.rows = rows or []
        self.pivots = pivots or []

    @classmethod
    def span(cls, F, dim_ambient: int, vectors) -> "Subspace":
        vectors = [v for v in vectors if any(v)]
        if not vectors:
            return cls(F, dim_ambient)
        rows, pivots = rref(ScalarMatrix(F, vectors))
        return cls(F, dim_ambient, rows, pivots)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return self.dim

    def contains(self, vec) -> bool:
        F = self.field
        v = list(vec)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if c:
                v = [F.sub(a, F.mul(c, b)) if b else a for a, b in zip(v, row)]
        return not any(v)

    def annihilator(self) -> list[list]:
        """Functionals w with w . v = 0 for every v in the subspace."""
        if not self.rows:
            F = self.field
            return [[F.one if i == j else F.zero for j in range(self.ambient)]
                    for i in range(self.ambient)]
        return nullspace(ScalarMatrix(self.field, self.rows))

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.ambient, self.rows + other.rows)


class IdealPieces:
    """Per-degree echelon bases of I_l = span{m * f_i : deg m = l - d}."""

    def __init__(self, param: Parametrization):
        self.param = param
        self._pieces: dict[int, Subspace] = {}

    def __getitem__(self, degree: int) -> Subspace:
        piece = self._pieces.get(degree)
        if piece is None:
            piece = self._pieces[degree] = ideal_piece(self.param, degree)
        return piece


def ideal_piece(param: Parametrization, degree: int) -> Subspace:
    F = param.field
    dim = comb(degree + param.n - 1, param.n - 1)
    if degree < param.d:
        return Subspace(F, dim)
    vectors = []
    for m in param.monomials(degree - param.d):
        for f in param.f:
            if f:
                vectors.append(param.vector(f.mul_monomial(m), degree))
    return Subspace.span(F, dim, vectors)


def colon_piece(param: Parametrization, upper: Subspace, degree: int) -> Subspace:
    """{g in A_degree : X_i * g in ``upper`` for all i}, ``upper`` a subspace of A_{degree+1}."""
    F = param.field
    dim = comb(degree + param.n - 1, param.n - 1)
    W = upper.annihilator()
    if not W:
        return Subspace.span(F, dim, [[F.one if i == j else F.zero for j in range(dim)]
                                      for i in range(dim)])
    constraints = []
    for x in param.x_vars:
        mult = param.multiplication_matrix(x, degree)
        for w in W:
            row = [F.zero] * dim
            for k, wk in enumerate(w):
                if wk:
                    for j, mk in enumerate(mult.entries[k]):
                        if mk:
                            row[j] = F.add(row[j], F.mul(wk, mk))
            constraints.append(row)
    return Subspace.span(F, dim, nullspace(ScalarMatrix(F, constraints)))


def colon_piece_of_ideal(param: Parametrization, degree: int) -> Subspace:
    """(I : m)_degree computed from I_{degree+1}."""
    return colon_piece(param, ideal_piece(param, degree + 1), degree)


@dataclass
class SaturationResult:
    indeg_sat: int
    eta: int
    degree_cap: int
    top: int
    sweeps: int
    converged: bool
    pieces: dict = dc_field(repr=False, default_factory=dict)
    witness: Poly | None = None

    @property
    def nu(self) -> int:
        """Default strand degree max(0, eta)."""
        return max(0, self.eta)

    @property
    def clamped(self) -> bool:
        return self.eta < 0

    @property
    def beyond_cap(self) -> bool:
        return self.indeg_sat > self.degree_cap


def saturation_indeg(param: Parametrization, degree_cap: int | None = None,
                     max_sweeps: int = MAX_SWEEPS) -> SaturationResult:
    """Compute (I_X)_l for l <= degree_cap + d by colon sweeps; return indeg and eta.

    The top degree degree_cap + d is taken from I itself; each sweep walks
    down and replaces P_l by P_l + (P_{l+1} : m) until nothing grows.
    """
    n, d = param.n, param.d
    base = (n - 1) * (d - 1)
    cap = base if degree_cap is None else degree_cap
    if cap < base:
        cap = base
    top = cap + d
    ideal = IdealPieces(param)
    pieces = {l: ideal[l] for l in range(top + 1)}
    sweeps = 0
    converged = False
    while sweeps < max_sweeps:
        sweeps += 1
        grew = False
        for l in range(top - 1, -1, -1):
            # P_l is contained in (P_{l+1} : m), so comparing dimensions suffices
            col = colon_piece(param, pieces[l + 1], l)
            if col.dim > pieces[l].dim:
                pieces[l] = col
                grew = True
        if not grew:
            converged = True
            break
    indeg = next((l for l in range(top + 1) if pieces[l].dim), top + 1)
    witness = None
    if indeg <= top:
        for row in pieces[indeg].rows:
            if not ideal[indeg].contains(row):
                witness = param.from_vector(row, indeg)
                break
    return SaturationResult(indeg_sat=indeg, eta=base - indeg, degree_cap=cap, top=top,
                            sweeps=sweeps, converged=converged, pieces=pieces,
                            witness=witness)


def hilbert_fn(param: Parametrization, degree: int, pieces=None) -> int:
    """dim (A/J)_degree for J = I, or for the supplied pieces (e.g. of I_X)."""
    dim = comb(degree + param.n - 1, param.n - 1)
    if pieces is None:
        return dim - ideal_piece(param, degree).dim
    piece = pieces[degree] if not isinstance(pieces, Subspace) else pieces
    return dim - piece.dim


def is_saturated(param: Parametrization, sat: SaturationResult | None = None) -> bool:
    """I = I_X in every degree the saturation computation tracks."""
    sat = sat or saturation_indeg(param)
    return all(sat.pieces[l].dim == ideal_piece(param, l).dim for l in sat.pieces)
