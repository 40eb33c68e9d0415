import random
from math import comb

import pytest

from implicitkit.arith import PrimeField
from implicitkit.corpus import planted_surface
from implicitkit.parametrization import Parametrization
from implicitkit.satur import (Subspace, colon_piece, colon_piece_of_ideal, hilbert_fn,
                               ideal_piece, saturation_indeg)

E_QUAD = ["X1^2", "X1*X2", "X2^2", "X1*X3"]
CUSP = ["X1^3", "X1^2*X2", "X2^3"]


def param(texts, field="QQ"):
    return Parametrization.parse(field, 3 if len(texts) == 4 else 2, texts)


def test_ideal_piece_examples():
    assert ideal_piece(param(CUSP), 5).dim == 6
    assert ideal_piece(param(CUSP), 2).dim == 0
    assert ideal_piece(param(E_QUAD), 3).dim == 8


def test_colon_piece_examples():
    P = param(E_QUAD)
    col = colon_piece_of_ideal(P, 1)
    assert col.dim == 1 and col.contains(P.vector(P.ring.X(1), 1))
    # I_3 = span{X1^3, X1^2*X2, X2^3}; X1^2 is the only quadric with X1*g, X2*g in it
    cusp = param(CUSP)
    col = colon_piece_of_ideal(cusp, 2)
    assert col.dim == 1 and col.contains(cusp.vector(cusp.ring.X(1) ** 2, 2))
    # I = m^2 here, so every linear form is in the colon
    lin = param(["X1^2", "X2^2", "X1*X2"])
    assert colon_piece(lin, ideal_piece(lin, 2), 1).dim == 2


@pytest.mark.parametrize("texts, indeg, eta", [
    (CUSP, 0, 2), (E_QUAD, 1, 1), (["X1", "X2", "X1+X2"], 0, 0)])
def test_saturation_examples(texts, indeg, eta):
    sat = saturation_indeg(param(texts))
    assert (sat.indeg_sat, sat.eta) == (indeg, eta)
    assert sat.converged


def test_witness_lies_in_saturation():
    P = param(E_QUAD)
    sat = saturation_indeg(P)
    assert sat.witness == P.ring.X(1)
    # X_i * witness in I for every i
    for x in P.x_vars:
        assert ideal_piece(P, 2).contains(P.vector(sat.witness * x, 2))


def test_hilbert_examples():
    assert hilbert_fn(param(E_QUAD), 2) == 2
    assert hilbert_fn(param(E_QUAD), 0) == 1
    assert hilbert_fn(param(CUSP), 5) == 0


@pytest.mark.parametrize("seed", range(3))
def test_saturation_properties(seed):
    rng = random.Random(seed)
    entry = planted_surface(PrimeField(101), 3, ["s", "t", "s"], rng)
    P = entry.param
    sat = saturation_indeg(P)
    for l, piece in sat.pieces.items():
        base = ideal_piece(P, l)
        assert all(piece.contains(row) for row in base.rows)  # I_l inside (I_X)_l
        if l + 1 in sat.pieces:
            assert colon_piece(P, sat.pieces[l + 1], l).dim == piece.dim  # stable
    # the Hilbert function of A/I_X at the top degree is the length of the planted scheme
    assert hilbert_fn(P, sat.top, sat.pieces) == 4


@pytest.mark.parametrize("seed", range(3))
def test_complete_intersection_subideal(seed):
    # (I_X / J)_l vanishes exactly below indeg(I_X) for J = (g1, g2) generic in I_d
    rng = random.Random(seed)
    entry = planted_surface(PrimeField(101), 3, ["s"] * 5, rng)
    P = entry.param
    sat = saturation_indeg(P)
    F = P.field
    ring = P.ring
    gens = []
    for _ in range(2):
        g = ring.zero()
        for f in P.f:
            g = g + f.scale(F.random(rng))
        gens.append(g)
    for l in range(sat.top + 1):
        monos = P.monomials(l - P.d) if l >= P.d else []
        rows = [P.vector(g.mul_monomial(m), l) for g in gens for m in monos]
        Jl = Subspace.span(F, comb(l + 2, 2), rows)
        quotient_zero = sat.pieces[l].dim == Jl.dim
        assert quotient_zero == (l < sat.indeg_sat)
