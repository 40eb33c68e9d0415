import random

import pytest

from implicitkit.arith import PrimeField
from implicitkit.corpus import random_curve, planted_surface
from implicitkit.parametrization import Parametrization
from implicitkit.poly import Ring
from implicitkit.strands import (euler_char, koszul_homology_hilbert, macrae_generator,
                                 presentation_matrix, series_coefficient, syzygy_basis)

E_QUAD = ["X1^2", "X1*X2", "X2^2", "X1*X3"]
CUSP = ["X1^3", "X1^2*X2", "X2^3"]
LINE = ["X1", "X2", "X1+X2"]


def param(texts, field="QQ"):
    return Parametrization.parse(field, 3 if len(texts) == 4 else 2, texts)


def as_text(tuples):
    return [[str(a) for a in t] for t in tuples]


def test_syzygy_examples():
    assert as_text(syzygy_basis(param(LINE), 0).basis) == [["1", "1", "-1"]]
    assert as_text(syzygy_basis(param(CUSP), 1).basis) == [["X2", "-X1", "0"]]
    basis = syzygy_basis(param(E_QUAD), 1)
    assert len(basis) == 4
    P = param(E_QUAD)
    for tup in basis.basis:
        assert not sum((a * f for a, f in zip(tup, P.f)), P.ring.zero())
    expected = [["X2", "-X1", "0", "0"], ["0", "X2", "-X1", "0"],
                ["X3", "0", "0", "-X1"], ["0", "X3", "0", "-X2"]]
    assert sorted(as_text(basis.basis)) == sorted(expected)


def test_presentation_examples():
    M = presentation_matrix(param(LINE), 0).matrix
    assert M.to_text() == [["T1 + T2 - T3"]]
    M = presentation_matrix(param(E_QUAD), 1).matrix
    assert M.shape == (3, 4)
    cols = sorted(tuple(c) for c in zip(*M.to_text()))
    assert cols == sorted([("-T2", "T1", "0"), ("-T3", "T2", "0"),
                           ("-T4", "0", "T1"), ("0", "-T4", "T2")])
    assert presentation_matrix(param(CUSP), 2).shape == (3, 3)


def test_presentation_entries_are_t_linear():
    M = presentation_matrix(param(E_QUAD), 2).matrix
    assert M.is_t_linear()


def test_macrae_examples():
    assert str(macrae_generator(param(LINE), 0)) == "T1 + T2 - T3"
    assert str(macrae_generator(param(E_QUAD), 1)) == "T1*T3 - T2^2"
    assert not macrae_generator(param(CUSP), 1)
    assert str(macrae_generator(param(CUSP), 2)) == "T1^2*T3 - T2^3"


def test_koszul_examples():
    P = param(E_QUAD)
    assert koszul_homology_hilbert(P, 0, 0) == 1
    assert koszul_homology_hilbert(P, 0, 2) == 2
    for l in range(6):
        assert koszul_homology_hilbert(P, 4, l) == 0


def test_series_examples():
    assert series_coefficient(2, 3, 0) == 1
    assert series_coefficient(2, 3, 3) == 1
    assert series_coefficient(3, 2, 2) == 2


@pytest.mark.parametrize("texts", [CUSP, E_QUAD, LINE])
def test_euler_matches_series(texts):
    P = param(texts)
    for l in range(3 * P.d + 1):
        assert euler_char(P, l) == series_coefficient(P.n, P.d, l)


@pytest.mark.parametrize("seed", range(2))
def test_macrae_vanishes_on_image(seed):
    rng = random.Random(seed)
    F = PrimeField(101)
    for P in (random_curve(F, 3, rng), planted_surface(F, 2, ["s"], rng).param):
        from implicitkit.satur import saturation_indeg
        nu = saturation_indeg(P).nu
        for v in (nu, nu + 1):
            m = macrae_generator(P, v)
            assert m and not P.substitute(m)
