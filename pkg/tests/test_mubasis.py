import random

import pytest

from implicitkit.arith import PrimeField
from implicitkit.corpus import (EXAMPLE_G, STEINER_AFFINE, random_curve, example_matrix,
                                example_param, steiner_param)
from implicitkit.errors import NotProjectiveDimensionOne, PreconditionError
from implicitkit.linalg import PolyMatrix
from implicitkit.mubasis import (MovingBasis, homogenize_matrix, hb_verify, macaulay_resultant,
                                 moving_forms, mu_basis, param_from_matrix, prop34_analyze,
                                 resultant_of_basis, sylvester_resultant)
from implicitkit.parametrization import Parametrization
from implicitkit.satur import saturation_indeg
from implicitkit.strands import macrae_generator

CONIC = ["X1^2", "X1*X2", "X2^2"]
LINE = ["X1", "X2", "X1+X2"]


def basis_of(texts, field="QQ"):
    return mu_basis(Parametrization.parse(field, 2, texts))


def test_mu_basis_conic():
    B = basis_of(CONIC)
    assert B.mu == (1, 1)
    assert B.M.to_text() == [["X2", "0"], ["-X1", "X2"], ["0", "-X1"]]
    assert hb_verify(B)


def test_mu_basis_line():
    B = basis_of(LINE)
    assert B.mu == (0, 1)
    assert hb_verify(B)


def test_mu_basis_matrix_example():
    P = example_param("QQ")
    B = mu_basis(P)
    assert sorted(B.mu) == [1, 2, 2]
    assert hb_verify(B)


def test_mu_basis_rejects_unsaturated():
    # no base points at all: I is m-primary, so not saturated
    P = Parametrization.parse("QQ", 3, ["X1^2", "X2^2", "X3^2", "X1*X2+X2*X3"])
    with pytest.raises(NotProjectiveDimensionOne):
        mu_basis(P)


def test_moving_forms():
    L = moving_forms(basis_of(CONIC)).L
    assert [str(l) for l in L] == ["-X1*T2 + X2*T1", "-X1*T3 + X2*T2"]
    L = moving_forms(basis_of(LINE)).L
    assert [str(l) for l in L] == ["T1 + T2 - T3", "-X1*T2 + X2*T1"]


@pytest.mark.parametrize("texts", [CONIC, LINE, ["X1^3", "X1^2*X2", "X2^3"]])
def test_moving_forms_vanish_on_image(texts):
    B = basis_of(texts)
    for L in moving_forms(B).L:
        assert not B.param.substitute(L)


def test_sylvester_examples(R2):
    L1, L2 = R2.parse("X2*T1-X1*T2"), R2.parse("X2*T2-X1*T3")
    assert str(sylvester_resultant(L1, L2).normalize()) == "T1*T3 - T2^2"
    c = R2.parse("T1+T2-T3")
    assert str(sylvester_resultant(c, L1).normalize()) == "T1 + T2 - T3"
    assert not sylvester_resultant(L1, L1)


def test_sylvester_needs_binary_forms(R3):
    with pytest.raises(PreconditionError):
        sylvester_resultant(R3.parse("X1*T1"), R3.parse("X2*T2"))


def test_macaulay_examples(R3):
    res = macaulay_resultant(R3.parse("X1*T1"), R3.parse("X2*T2"), R3.parse("X3*T3"))
    assert str(res.normalize()) == "T1*T2*T3"
    res = macaulay_resultant(R3.parse("X1*T1"), R3.parse("X2*T1"),
                             R3.parse("X1*T1+X2*T1+X3*T2"))
    assert str(res.normalize()) == "T1^2*T2"


def test_macaulay_matrix_example():
    for field in ("GF(13)", "QQ"):
        P = example_param(field)
        R = resultant_of_basis(mu_basis(P)).normalize()
        assert R.degree() == 8
        H = R.exact_div(P.ring.parse(EXAMPLE_G))
        assert H.degree() == 6
        assert not P.substitute(H)


@pytest.mark.parametrize("seed", range(4))
def test_sylvester_matches_macrae(seed):
    rng = random.Random(seed)
    F = PrimeField(101)
    P = random_curve(F, rng.randint(2, 5), rng)
    res = resultant_of_basis(mu_basis(P)).normalize()
    assert res == macrae_generator(P, saturation_indeg(P).eta)


def test_homogenize_steiner(R3):
    M = PolyMatrix.parse(R3, STEINER_AFFINE)
    Mh, degrees = homogenize_matrix(M)
    assert degrees == (2, 2, 1)
    assert [Mh[i, 2] for i in range(4)] == [R3.parse(t) for t in ("X3", "-X1", "0", "0")]
    assert [Mh[i, 0] for i in range(4)] == \
        [R3.parse(t) for t in ("0", "X1*X2", "X3^2+X1^2", "-2*X1*X3")]


def test_homogenize_keeps_homogeneous_column(R3):
    M = PolyMatrix.parse(R3, [["X1", "X1"], ["X2", "1"], ["X3", "X2"], ["0", "0"]])
    Mh, degrees = homogenize_matrix(M)
    assert degrees == (1, 1)
    assert Mh.column(0) == M.column(0)
    assert Mh[1, 1] == R3.parse("X3")


def test_hb_verify_matrix_example_and_perturbed():
    M = example_matrix("QQ")
    P = param_from_matrix(M)
    assert hb_verify(MovingBasis(P, M, (2, 1, 2)))
    rows = [list(r) for r in M.to_text()]
    rows[0][1] = "X2+X3"
    bad = PolyMatrix.parse(M.ring, rows)
    assert not hb_verify(MovingBasis(P, bad, (2, 1, 2)))
    conic = basis_of(CONIC)
    rows = conic.M.to_text()
    rows[0][0] = "X1"
    assert not hb_verify(MovingBasis(conic.param, PolyMatrix.parse(conic.param.ring, rows),
                                     conic.mu))


def test_infinity_conditions_steiner(R3):
    rep = prop34_analyze(PolyMatrix.parse(R3, STEINER_AFFINE), steiner_param())
    assert rep.cond_a and not rep.cond_b
    assert rep.cond_a_parts == (True, True)
    assert rep.consistent
    H = rep.resultant.exact_div(R3.parse("T2^4"))
    assert H.degree() == 4
    assert not steiner_param().substitute(H)
    assert rep.factor_budget == 4


def test_infinity_conditions_condition_b(R3):
    M = PolyMatrix.parse(R3, [["X1", "X2", "X1+X2"], ["0", "0", "X3"],
                              ["0", "0", "0"], ["0", "0", "0"]])
    rep = prop34_analyze(M)
    assert not rep.cond_a and rep.cond_b
    assert [str(p) for p in rep.P] == ["X1", "X2", "X1 + X2"]
    assert str(rep.Q) == "T1"
    assert str(rep.resultant) == "T1^2*T2"


def test_infinity_conditions_neither(R3):
    M = PolyMatrix.parse(R3, [["X1", "0", "0"], ["0", "X1", "0"],
                              ["0", "0", "X1"], ["0", "0", "0"]])
    rep = prop34_analyze(M)
    assert not rep.cond_a and not rep.cond_b
    assert not rep.resultant
    assert rep.consistent
