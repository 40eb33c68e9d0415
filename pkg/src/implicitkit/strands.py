"""Strands of the symmetric algebra: syzygies, presentation matrices, MacRae generators.

The degree-nu strand Sym_A(I)_nu is the cokernel of the B-linear map
B (x) Syz(f)_{nu+d} -> B (x) A_nu sending a syzygy (a_1, ..., a_{n+1}) to
sum a_i T_i.  Its MacRae invariant is computed as the gcd of the maximal
minors of that presentation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .linalg import (MinorMode, PolyMatrix, ScalarMatrix, maximal_minors_gcd,
                     nullspace, rank)
from .parametrization import Parametrization
from .poly import Poly

__all__ = [
    "Parametrization", "SyzygyBasis", "PresentationMatrix", "syzygy_basis",
    "presentation_matrix", "macrae_generator", "koszul_homology_hilbert",
    "euler_char", "series_coefficient",
]


@dataclass
class SyzygyBasis:
    param: Parametrization
    nu: int
    basis: list  # list of (n+1)-tuples of X-forms of degree nu

    def __len__(self):
        return len(self.basis)

    def forms(self) -> list[Poly]:
        """The syzygies as bihomogeneous forms sum a_i T_i."""
        ring = self.param.ring
        out = []
        for tup in self.basis:
            acc = ring.zero()
            for i, a in enumerate(tup):
                if a:
                    acc = acc + a * ring.T(i + 1)
            out.append(acc)
        return out


@dataclass
class PresentationMatrix:
    param: Parametrization
    nu: int
    matrix: PolyMatrix

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape


def _syzygy_map(param: Parametrization, nu: int) -> ScalarMatrix:
    """Matrix of (a_i) in (A_nu)^{n+1} -> sum a_i f_i in A_{nu+d}; columns (i, m)."""
    F = param.field
    target = param.index(nu + param.d)
    cols = []
    for f in param.f:
        for m in param.monomials(nu):
            col = [F.zero] * len(target)
            for mf, c in f.terms.items():
                col[target[mf + m]] = c
            cols.append(col)
    return ScalarMatrix(F, [list(r) for r in zip(*cols)])


def syzygy_basis(param: Parametrization, nu: int) -> SyzygyBasis:
    """Basis of Syz(f)_{nu+d}: echelon kernel vectors, each scaled so its first nonzero entry is 1."""
    if nu < 0:
        return SyzygyBasis(param, nu, [])
    F = param.field
    mons = param.monomials(nu)
    k = len(mons)
    basis = []
    for vec in nullspace(_syzygy_map(param, nu)):
        lead = next(c for c in vec if c)
        if lead != F.one:
            inv = F.inv(lead)
            vec = [F.mul(c, inv) if c else c for c in vec]
        basis.append(tuple(param.from_vector(vec[i * k:(i + 1) * k], nu)
                           for i in range(param.n + 1)))
    return SyzygyBasis(param, nu, basis)


def presentation_matrix(param: Parametrization, nu: int,
                        syz: SyzygyBasis | None = None) -> PresentationMatrix:
    """Rows indexed by monomial_basis(nu), one column per syzygy."""
    syz = syz or syzygy_basis(param, nu)
    ring = param.ring
    mons = param.monomials(nu)
    idx = param.index(nu)
    T = [ring.T(i + 1) for i in range(param.n + 1)]
    cols = []
    for tup in syz.basis:
        col = [dict() for _ in mons]
        for i, a in enumerate(tup):
            t = T[i].leading_monomial()
            for m, c in a.terms.items():
                col[idx[m]][t] = c
        cols.append([Poly(ring, terms) for terms in col])
    rows = [list(r) for r in zip(*cols)] if cols else [[] for _ in mons]
    return PresentationMatrix(param, nu, PolyMatrix(ring, rows))


def macrae_generator(param: Parametrization, nu: int, mode: str = MinorMode.RANDOMIZED,
                     seed: int = 42, stats: dict | None = None) -> Poly:
    """Normalized generator of the MacRae invariant of Sym_A(I)_nu (0 if not torsion)."""
    pres = presentation_matrix(param, nu)
    return maximal_minors_gcd(pres.matrix, mode=mode, seed=seed, stats=stats)


# ---------------------------------------------------------------------------
# Koszul homology and the Euler characteristic

def _koszul_matrix(param: Parametrization, j: int, l: int) -> ScalarMatrix | None:
    """Differential K_j -> K_{j-1} in degree l, where K_j = (A_{l-jd})^{C(n+1, j)}."""
    n1, d = param.n + 1, param.d
    F = param.field
    src_deg, dst_deg = l - j * d, l - (j - 1) * d
    if j < 1 or j > n1 or src_deg < 0:
        return None
    src_sets = list(itertools.combinations(range(n1), j))
    dst_sets = {s: k for k, s in enumerate(itertools.combinations(range(n1), j - 1))}
    src_mons = param.monomials(src_deg)
    dst_idx = param.index(dst_deg)
    ndst = len(dst_idx)
    rows = len(dst_sets) * ndst
    cols = []
    for S in src_sets:
        for m in src_mons:
            col = [F.zero] * rows
            for pos, i in enumerate(S):
                f = param.f[i]
                if not f:
                    continue
                rest = S[:pos] + S[pos + 1:]
                offset = dst_sets[rest] * ndst
                sign_neg = pos % 2 == 1
                for mf, c in f.terms.items():
                    k = offset + dst_idx[mf + m]
                    col[k] = F.sub(col[k], c) if sign_neg else F.add(col[k], c)
            cols.append(col)
    return ScalarMatrix(F, [list(r) for r in zip(*cols)])


def _koszul_dim(param: Parametrization, j: int, l: int) -> int:
    n1 = param.n + 1
    deg = l - j * param.d
    if j < 0 or j > n1 or deg < 0:
        return 0
    return comb(n1, j) * comb(deg + param.n - 1, param.n - 1)


def _koszul_rank(param: Parametrization, j: int, l: int) -> int:
    mat = _koszul_matrix(param, j, l)
    if mat is None or not mat.nrows or not mat.ncols:
        return 0
    return rank(mat)


def koszul_homology_hilbert(param: Parametrization, j: int, l: int) -> int:
    """dim_k H_j(f; A)_l = dim K_j - rank d_j - rank d_{j+1} in degree l."""
    return (_koszul_dim(param, j, l) - _koszul_rank(param, j, l)
            - _koszul_rank(param, j + 1, l))


def euler_char(param: Parametrization, l: int) -> int:
    """sum_j (-1)^j dim H_j(f; A)_l."""
    return sum((-1) ** j * koszul_homology_hilbert(param, j, l)
               for j in range(param.n + 2))


def series_coefficient(n: int, d: int, l: int) -> int:
    """Coefficient of t^l in (1 - t^d)^{n+1} / (1 - t)^n."""
    total = 0
    for k in range(n + 2):
        rest = l - k * d
        if rest < 0:
            break
        total += (-1) ** k * comb(n + 1, k) * comb(rest + n - 1, n - 1)
    return total
