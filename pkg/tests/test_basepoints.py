import random

import pytest

from implicitkit.arith import PrimeField
from implicitkit.basepoints import (BasePoint, analyze_base_points, extraneous_and_split,
                                    fiber_degree_check, find_base_points, linear_form_at,
                                    local_multiplicities, normalize_point, radical_of_power,
                                    zeros_p2, _form_dict)
from implicitkit.corpus import EXAMPLE_G, composite_curve, example_param
from implicitkit.errors import (DecompositionFailure, InfiniteBaseLocus, NotLocallyNGenerated,
                                PreconditionError)
from implicitkit.parametrization import Parametrization
from implicitkit.poly import Ring
from implicitkit.strands import macrae_generator

E_QUAD = ["X1^2", "X1*X2", "X2^2", "X1*X3"]
FREE = ["X1^2", "X2^2", "X3^2", "X1^2+X2^2+X3^2+2*X1*X2+2*X1*X3+2*X2*X3"]
GF101 = PrimeField(101)


@pytest.fixture(scope="module")
def example_locus():
    P = example_param("GF(13)")
    return P, analyze_base_points(P, 3, extension_bound=1)


def test_single_lci_point():
    P = Parametrization.parse("QQ", 3, E_QUAD)
    locus = analyze_base_points(P, 1)
    assert locus.complete
    [pt] = locus.points
    assert pt.coords == (0, 0, 1)
    assert (pt.d_x, pt.e_x, pt.lci) == (2, 2, True)
    assert pt.L_x is None


def test_base_point_free():
    assert find_base_points(Parametrization.parse("QQ", 3, FREE)).points == []
    assert find_base_points(Parametrization.parse("GF(101)", 3, FREE)).points == []


def test_matrix_example_points(example_locus):
    P, locus = example_locus
    F = P.field
    found = {pt.coords: pt for pt in locus.points}
    for eps in (5, 8):  # the two square roots of -1 mod 13
        pt = found[(F.one, F.zero, eps)]
        assert pt.e_x - pt.d_x == 1
        assert str(pt.L_x) == f"T2 + {eps}*T3 + {eps}*T4"


def test_matrix_example_split(example_locus):
    P, locus = example_locus
    macrae = macrae_generator(P, 3)
    split = extraneous_and_split(P, macrae, locus.points)
    assert split.G == P.ring.parse(EXAMPLE_G).normalize()
    assert split.H.degree() == 6
    assert split.deg_lambda == 1
    assert not P.substitute(split.H)


def test_user_point_must_be_a_base_point():
    P = Parametrization.parse("QQ", 3, E_QUAD)
    with pytest.raises(PreconditionError):
        find_base_points(P, user_points=[[1, 0, 0]])
    with pytest.raises(PreconditionError):
        local_multiplicities(P, BasePoint((1, 0, 0), P.field))


def test_lci_point_has_no_linear_form():
    P = Parametrization.parse("QQ", 3, E_QUAD)
    pt = BasePoint((0, 0, 1), P.field, d_x=2, e_x=2)
    with pytest.raises(PreconditionError):
        linear_form_at(P, pt, 1)


def test_infinite_base_locus():
    with pytest.raises(InfiniteBaseLocus):
        Parametrization.parse("QQ", 3, ["X1^2", "X1*X2", "X1*X3", "X1^2+X1*X2"])
    # forms sharing the line X1 = X3 only after restriction are caught by the zero search
    ring = Ring(3, GF101)
    forms = [_form_dict(ring.parse(t), 3, GF101) for t in ["X1*X2-X2*X3", "X1^2-X1*X3"]]
    with pytest.raises(InfiniteBaseLocus):
        zeros_p2(GF101, forms, random.Random(0))


def test_four_generated_point():
    # cubic parts span all of m^3 at (0:0:1), so the local ideal needs four generators
    rng = random.Random(3)
    quartic = lambda: "+".join(f"{rng.randrange(1, 101)}*X1^{4 - k}*X2^{k}" for k in range(5))
    cubics = ["X1^3", "X1^2*X2", "X1*X2^2", "X2^3"]
    P = Parametrization.parse("GF(101)", 3, [f"X3*{c}+{quartic()}" for c in cubics])
    pt = BasePoint(normalize_point(GF101, [0, 0, 1]), GF101)
    pt.d_x, pt.e_x = local_multiplicities(P, pt)
    assert pt.e_x > pt.d_x >= 6
    with pytest.raises(NotLocallyNGenerated):
        linear_form_at(P, pt, 4)


def test_split_simple():
    P = Parametrization.parse("QQ", 3, E_QUAD)
    split = extraneous_and_split(P, macrae_generator(P, 1), [])
    assert str(split.G) == "1"
    assert str(split.H) == "T1*T3 - T2^2"
    assert split.deg_lambda == 1


def test_root_extraction_of_square(R3):
    ring = Ring(3, PrimeField(101))
    H, e = radical_of_power(ring.parse("T1+T2-T3") ** 2)
    assert (str(H), e) == ("T1 + T2 + 100*T3", 2)
    H, e = radical_of_power(R3.parse("T1+T2-T3") ** 2)
    assert (str(H), e) == ("T1 + T2 - T3", 2)


def test_split_rejects_non_power(R3):
    ring = R3
    P = Parametrization.parse("QQ", 3, E_QUAD)
    with pytest.raises(DecompositionFailure):
        extraneous_and_split(P, ring.parse("T1*T2"), [])
    with pytest.raises(PreconditionError):
        extraneous_and_split(P, ring.zero(), [])


@pytest.mark.parametrize("texts", [["X1^3", "X1^2*X2", "X2^3"], ["X1^2", "X1*X2", "X2^2"]])
def test_fiber_degree_birational(texts):
    assert fiber_degree_check(Parametrization.parse("GF(101)", 2, texts))["deg_lambda"] == 1


def test_fiber_degree_composite():
    P = composite_curve(GF101, 2, random.Random(1))
    assert fiber_degree_check(P)["deg_lambda"] == 2


def test_fiber_check_needs_prime_field():
    with pytest.raises(PreconditionError):
        fiber_degree_check(Parametrization.parse("QQ", 2, ["X1", "X2", "X1+X2"]))


def test_degree_identities_on_planted(corpus_results):
    for out in corpus_results:
        if out.entry.param.n != 3 or out.locus is None:
            continue
        P = out.entry.param
        deg_m = out.macrae[out.eta].degree()
        assert out.locus.sum_d == P.d ** 2 - deg_m, out.entry.name
        assert out.split.deg_lambda * out.split.H.degree() == P.d ** 2 - out.locus.sum_e
