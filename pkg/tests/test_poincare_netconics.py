import pytest

from poincare.algebra import IdealPresentation, LocalAlgebra, build_quotient_algebra
from poincare.config import EngineOptions
from poincare.exactmath import span_rank
from poincare.exceptions import (
    CharacteristicError,
    PreconditionError,
    SearchExhaustedError,
)
from poincare.families import FamilySpec, FamilyTag, family_ideal
from poincare.netconics import (
    DiscriminantClass,
    TernaryCubic,
    classify,
    discriminant,
    discriminant_classify,
    find_square_generators,
    linear_factors,
    net_classification,
    quadratic_class,
    relation_net,
)
from poincare.netconics.discriminant import l1, l2, l3


def family_algebra(tag: FamilyTag, n: int = 3, **params) -> LocalAlgebra:
    return build_quotient_algebra(family_ideal(FamilySpec(tag, n, **params)))


@pytest.fixture
def i2_algebra():
    return family_algebra(FamilyTag.I2)


@pytest.fixture
def i3_algebra():
    return family_algebra(FamilyTag.I3)


def test_netconics_square_generators_are_variables():
    a = family_algebra(FamilyTag.I4)
    assert find_square_generators(a) == tuple(a.generators)


@pytest.mark.parametrize("tag", [FamilyTag.I1, FamilyTag.I3, FamilyTag.I6])
def test_netconics_square_generators_span(tag: FamilyTag):
    a = family_algebra(tag)
    gens = find_square_generators(a, seed=7)
    squares = [quadratic_class(a, a.multiply(g, g)) for g in gens]
    assert span_rank(squares, a.field, 3) == 3


def test_netconics_square_generators_outer_variables():
    a = family_algebra(FamilyTag.I4, 4)
    gens = find_square_generators(a)
    assert gens == tuple(a.generators[:3])


def test_netconics_wrong_hilbert_function():
    a = family_algebra(FamilyTag.ALMOST_STRETCHED)
    with pytest.raises(PreconditionError):
        find_square_generators(a)


def test_netconics_characteristic_three():
    p = IdealPresentation(3, 3, ("x2^3-x1^3", "x3^3-x1^3", "x1*x2", "x1*x3", "x2*x3"))
    with pytest.raises(CharacteristicError):
        find_square_generators(build_quotient_algebra(p))


def test_netconics_search_budget(i3_algebra: LocalAlgebra):
    # every x_i^2 vanishes in I3, so the variables alone never suffice
    options = EngineOptions(trial_budget=0)
    with pytest.raises(SearchExhaustedError):
        find_square_generators(i3_algebra, options=options)


def test_netconics_i3_net(i3_algebra: LocalAlgebra):
    net = relation_net(i3_algebra, i3_algebra.generators)
    assert net.to_list() == [
        ["1", "0", "0", "0", "0", "0", "0", "0", "0"],
        ["0", "0", "0", "0", "1", "0", "0", "0", "0"],
        ["0", "0", "0", "0", "0", "0", "0", "0", "1"],
    ]
    assert net.generator_strings() == ["x1", "x2", "x3"]


def test_netconics_i3_discriminant(i3_algebra: LocalAlgebra):
    result = discriminant_classify(relation_net(i3_algebra, i3_algebra.generators))
    expected = ["0", "0", "0", "0", "1", "0", "0", "0", "0", "0"]
    assert result.discriminant.to_list() == expected
    assert result.label is DiscriminantClass.REDUCIBLE


def test_netconics_i2_net(i2_algebra: LocalAlgebra):
    net = relation_net(i2_algebra, i2_algebra.generators)
    assert net.to_list() == [
        ["1", "0", "0", "0", "0", "0", "0", "0", "0"],
        ["0", "0", "0", "0", "1", "0", "0", "0", "0"],
        ["0", "1", "0", "1", "0", "0", "0", "0", "1"],
    ]
    cubic = discriminant(net)
    assert cubic.to_list() == ["0", "0", "0", "0", "1", "0", "0", "0", "0", "-1"]
    assert classify(cubic) is DiscriminantClass.REDUCIBLE


def test_netconics_i2_over_prime_field():
    a = family_algebra(FamilyTag.I2, characteristic=101)
    result = discriminant_classify(relation_net(a, a.generators))
    expected = ["0", "0", "0", "0", "1", "0", "0", "0", "0", "100"]
    assert result.discriminant.to_list() == expected
    assert result.label is DiscriminantClass.REDUCIBLE


def test_netconics_i1_discriminant():
    a = family_algebra(FamilyTag.I1)
    result = net_classification(a, seed=0)
    assert result.label is DiscriminantClass.IRREDUCIBLE
    assert result.to_dict()["class"] == "irreducible-over-base-field"


@pytest.mark.parametrize("seed", range(5))
def test_netconics_seed_independence(seed: int):
    a = family_algebra(FamilyTag.I1)
    assert net_classification(a, seed=seed).label is DiscriminantClass.IRREDUCIBLE


def test_netconics_dependent_products(i3_algebra: LocalAlgebra):
    x1, x2, _ = i3_algebra.generators
    with pytest.raises(PreconditionError):
        relation_net(i3_algebra, [x1, x1, x2])


def test_netconics_classify_shapes():
    assert classify(TernaryCubic.from_expr(0)) is DiscriminantClass.IDENTICALLY_ZERO
    assert classify(TernaryCubic.from_expr(l1**2 * l2)) is DiscriminantClass.NON_REDUCED
    assert classify(TernaryCubic.from_expr(l1 * l2 * l3)) is DiscriminantClass.REDUCIBLE
    smooth = l1 * l3**2 - l1**3 / 4 - l2**2 * l3 / 4
    assert classify(TernaryCubic.from_expr(smooth)) is DiscriminantClass.IRREDUCIBLE


def test_netconics_linear_factors():
    factors = linear_factors(TernaryCubic.from_expr(l1 * l2 * l3))
    assert sorted(m for _, m in factors) == [1, 1, 1]
    assert {str(form) for form, _ in factors} == {"l1", "l2", "l3"}


def test_netconics_cubic_over_prime_field():
    cubic = TernaryCubic.from_expr(l1 * l2 * l3 - l3**3, 7)
    assert cubic.to_list()[-1] == "6"
    assert classify(cubic) is DiscriminantClass.REDUCIBLE


def test_netconics_classify_conic_times_line():
    assert classify(TernaryCubic.from_expr(l1 * (l2**2 + l1 * l3))) is DiscriminantClass.REDUCIBLE
    assert classify(TernaryCubic.from_expr(l1 * l2 * (l1 + l2))) is DiscriminantClass.REDUCIBLE
    assert classify(TernaryCubic.from_expr(l1**3)) is DiscriminantClass.NON_REDUCED


@pytest.mark.parametrize("seed", [0, 3, 11])
def test_netconics_variables_tried_first(seed: int):
    a = family_algebra(FamilyTag.I4)
    assert find_square_generators(a, seed=seed) == tuple(a.generators)


H1331_TAGS = [FamilyTag.I1, FamilyTag.I2, FamilyTag.I3, FamilyTag.I4, FamilyTag.I5, FamilyTag.I6]


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("tag", H1331_TAGS)
def test_netconics_class_independent_of_seed(tag: FamilyTag, n: int):
    a = family_algebra(tag, n)
    results = [net_classification(a, seed=seed) for seed in range(3)]
    assert len({r.label for r in results}) == 1
    for r in results:
        if not r.discriminant.is_zero:
            poly = r.discriminant.as_poly()
            assert poly.is_homogeneous
            assert poly.total_degree() == 3


@pytest.mark.parametrize(
    "tag,label",
    [
        (FamilyTag.I1, DiscriminantClass.IRREDUCIBLE),
        (FamilyTag.I2, DiscriminantClass.REDUCIBLE),
        (FamilyTag.I3, DiscriminantClass.REDUCIBLE),
    ],
)
def test_netconics_class_of_families(tag: FamilyTag, label: DiscriminantClass):
    assert net_classification(family_algebra(tag), seed=1).label is label
