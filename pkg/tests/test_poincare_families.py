import pytest

from poincare.algebra import (
    algebra_invariants,
    build_quotient_algebra,
    minimal_generator_count,
)
from poincare.exceptions import CharacteristicError, MalformedInputError
from poincare.families import (
    DualPolynomial,
    FamilySpec,
    FamilyTag,
    annihilator_basis,
    ci_ideal,
    differentiate,
    family_ideal,
    inverse_system_ideal,
)

H1331_VARIANTS = [
    (FamilyTag.I1, {"alpha": 0}),
    (FamilyTag.I1, {"alpha": 1}),
    (FamilyTag.I2, {}),
    (FamilyTag.I3, {}),
    (FamilyTag.I4, {}),
    (FamilyTag.I5, {}),
    (FamilyTag.I6, {}),
]


def invariants_of(presentation):
    return algebra_invariants(build_quotient_algebra(presentation))


def test_family_i1_generators():
    assert family_ideal(FamilySpec(FamilyTag.I1, 3)).generators == (
        "x1*x2+x3^2",
        "x1*x3",
        "x1^2+x2^2",
    )


def test_family_i1_alpha():
    assert family_ideal(FamilySpec(FamilyTag.I1, 3, alpha=1)).generators[2] == (
        "x1^2+x2^2-x3^2"
    )
    assert family_ideal(FamilySpec(FamilyTag.I1, 3, alpha=-2)).generators[2] == (
        "x1^2+x2^2+2*x3^2"
    )


def test_family_i2_generators():
    assert family_ideal(FamilySpec(FamilyTag.I2, 3)).generators == (
        "x1^2",
        "x2^2",
        "x3^2+2*x1*x2",
    )


def test_family_i3_outer_variables():
    assert family_ideal(FamilySpec(FamilyTag.I3, 4)).generators == (
        "x1^2",
        "x2^2",
        "x3^2",
        "x1*x4",
        "x2*x4",
        "x3*x4",
        "x4^2-x1*x2*x3",
    )


def test_family_i4_generators():
    assert family_ideal(FamilySpec(FamilyTag.I4, 3)).generators == (
        "x2^3-x1^3",
        "x3^3-x1^3",
        "x1*x2",
        "x1*x3",
        "x2*x3",
    )


def test_family_i6_generator_count():
    p = family_ideal(FamilySpec(FamilyTag.I6, 5))
    assert len(p.generators) == 14
    assert p.generators[-2:] == ("x4^2-x1*x3^2", "x5^2-x1*x3^2")


def test_family_tag_properties():
    assert FamilyTag.I5.index == 5
    assert FamilyTag.I5.is_h1331
    assert FamilyTag.CI.index is None
    assert not FamilyTag.STRETCHED.is_h1331


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("tag,params", H1331_VARIANTS)
def test_family_hilbert_function(tag: FamilyTag, params: dict, n: int):
    inv = invariants_of(family_ideal(FamilySpec(tag, n, **params)))
    assert inv.hilbert == (1, n, 3, 1)
    assert inv.length == n + 5
    assert inv.gorenstein


def test_family_over_prime_field():
    p = family_ideal(FamilySpec(FamilyTag.I6, 3, characteristic=101))
    assert p.characteristic == 101
    assert invariants_of(p).hilbert == (1, 3, 3, 1)


def test_family_minimal_generators():
    assert minimal_generator_count(family_ideal(FamilySpec(FamilyTag.I6, 3))) == 5
    assert minimal_generator_count(family_ideal(FamilySpec(FamilyTag.I6, 5))) == 14
    assert minimal_generator_count(family_ideal(FamilySpec(FamilyTag.I1, 3))) == 3


def test_family_rejects_small_characteristic():
    with pytest.raises(CharacteristicError):
        FamilySpec(FamilyTag.I1, 3, characteristic=3)
    with pytest.raises(CharacteristicError):
        FamilySpec(FamilyTag.I6, 4, characteristic=2)


def test_family_rejects_small_n():
    with pytest.raises(MalformedInputError):
        FamilySpec(FamilyTag.I4, 2)


def test_family_i2_parameter():
    assert FamilySpec(FamilyTag.I2, 3, p=1).p == 1
    with pytest.raises(MalformedInputError):
        FamilySpec(FamilyTag.I2, 3, p=0)


def test_family_ci():
    p = family_ideal(FamilySpec(FamilyTag.CI, 3, exponents=[3, 2, 2]))
    assert p.generators == ("x1^3", "x2^2", "x3^2")
    inv = invariants_of(p)
    assert inv.hilbert == (1, 3, 4, 3, 1)
    assert inv.length == 12


def test_family_ci_errors():
    with pytest.raises(MalformedInputError):
        FamilySpec(FamilyTag.CI, 3, exponents=[2, 2])
    with pytest.raises(MalformedInputError):
        FamilySpec(FamilyTag.CI, 2)
    with pytest.raises(MalformedInputError):
        ci_ideal([2, 1])


def test_family_stretched():
    p = family_ideal(FamilySpec(FamilyTag.STRETCHED, 3))
    inv = invariants_of(p)
    assert inv.hilbert == (1, 3, 1, 1)
    assert inv.gorenstein
    assert minimal_generator_count(p) == 5


def test_family_stretched_socle_degree():
    spec = FamilySpec(FamilyTag.STRETCHED, 2, socle_degree=5)
    inv = invariants_of(family_ideal(spec))
    assert inv.hilbert == (1, 2, 1, 1, 1, 1)
    assert inv.gorenstein


def test_family_almost_stretched():
    inv = invariants_of(family_ideal(FamilySpec(FamilyTag.ALMOST_STRETCHED, 3)))
    assert inv.hilbert == (1, 3, 2, 1)
    assert inv.gorenstein


def test_family_stretched_needs_characteristic_zero():
    with pytest.raises(CharacteristicError):
        FamilySpec(FamilyTag.STRETCHED, 3, characteristic=101)


def test_inverse_differentiate():
    assert differentiate((1, 0), (3, 1)) == (3, (2, 1))
    assert differentiate((2, 0), (1, 1))[0] == 0


def test_inverse_zero_polynomial():
    with pytest.raises(MalformedInputError):
        DualPolynomial.parse("x1^2-x1^2", 1)


def test_inverse_one_variable():
    F = DualPolynomial.parse("x1^2", 1)
    assert annihilator_basis(F, 3) == [{(3,): 1}]
    assert inverse_system_ideal(F, 1, 3).generators == ("x1^3",)


def test_inverse_stretched_hilbert():
    F = DualPolynomial.parse("x1^3+x2^2+x3^2", 3)
    inv = invariants_of(inverse_system_ideal(F, 3, 4))
    assert inv.hilbert == (1, 3, 1, 1)
    assert inv.gorenstein


@pytest.mark.parametrize(
    "dual,hilbert",
    [
        ("x1^4+x2^3+x3^2", (1, 3, 2, 1, 1)),
        # length 7: x1^2*x2 adds no new quadratic partial
        ("x1^4+x1^2*x2+x3^2", (1, 3, 1, 1, 1)),
    ],
)
def test_inverse_quartic_hilbert(dual: str, hilbert: tuple):
    F = DualPolynomial.parse(dual, 3)
    inv = invariants_of(inverse_system_ideal(F, 3, 5))
    assert inv.hilbert == hilbert
    assert inv.length == sum(hilbert)
    assert inv.gorenstein


def test_inverse_missing_variable():
    F = DualPolynomial.parse("x1^3+x2^2", 3)
    with pytest.raises(MalformedInputError):
        annihilator_basis(F, 4)


def test_inverse_degree_bound():
    F = DualPolynomial.parse("x1^3+x2^2", 2)
    with pytest.raises(MalformedInputError):
        inverse_system_ideal(F, 2, 3)
    with pytest.raises(MalformedInputError):
        inverse_system_ideal(F, 3, 4)
