import json
from pathlib import Path

import pytest

from poincare.algebra import (
    IdealPresentation,
    PolynomialGrammar,
    algebra_invariants,
    build_quotient_algebra,
    dump_presentation,
    hilbert_function,
    load_presentation,
    minimal_generator_count,
    minimal_generators,
    quotient_by_ideal,
    quotient_by_socle,
    samuel_function,
    socle_basis,
    socle_linear_part,
)
from poincare.exceptions import (
    CharacteristicError,
    MalformedInputError,
    PolynomialParseError,
    TruncationTooSmallError,
)
from poincare.families import FamilySpec, FamilyTag, family_ideal

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def grammar():
    return PolynomialGrammar(3)


@pytest.fixture
def ci_xy():
    """k[x1, x2]/(x1^2, x2^2)"""
    return build_quotient_algebra(IdealPresentation(2, 0, ("x1^2", "x2^2")))


@pytest.fixture
def ci_322():
    return build_quotient_algebra(IdealPresentation(3, 0, ("x1^3", "x2^2", "x3^2")))


def test_grammar_parse(grammar: PolynomialGrammar):
    assert grammar.parse("x1*x2 + x3^2") == {(1, 1, 0): 1, (0, 0, 2): 1}
    assert grammar.parse("2*x1*x3+x2^2") == {(1, 0, 1): 2, (0, 2, 0): 1}
    assert grammar.parse("x2^3-x3^3") == {(0, 3, 0): 1, (0, 0, 3): -1}


def test_grammar_cancellation(grammar: PolynomialGrammar):
    assert grammar.parse("x1^2 - x1^2") == {}


def test_grammar_repeated_variable(grammar: PolynomialGrammar):
    assert grammar.parse("x1*x1^2") == {(3, 0, 0): 1}


@pytest.mark.parametrize(
    "text", ["", "x1**2", "x4^2", "x0*x1", "x1^0", "x1 x2", "y1^2"]
)
def test_grammar_parse_errors(grammar: PolynomialGrammar, text: str):
    with pytest.raises(PolynomialParseError):
        grammar.parse(text)


def test_grammar_error_position(grammar: PolynomialGrammar):
    with pytest.raises(PolynomialParseError) as excinfo:
        grammar.parse("x1^2+x2^2x3")
    assert excinfo.value.position == 9


def test_grammar_format_listing_order():
    assert PolynomialGrammar.format({(0, 0, 2): 1, (1, 1, 0): 1}) == "x1*x2+x3^2"
    assert PolynomialGrammar.format({(0, 0, 3): -1, (0, 3, 0): 1}) == "x2^3-x3^3"
    assert PolynomialGrammar.format({(1, 0, 1): 2, (0, 2, 0): 1}) == "2*x1*x3+x2^2"
    assert PolynomialGrammar.format({}) == "0"


def test_presentation_rejects_linear_terms():
    with pytest.raises(MalformedInputError):
        IdealPresentation(2, 0, ("x1+x2^2",))
    with pytest.raises(MalformedInputError):
        IdealPresentation(2, 0, ("1+x1^2",))


def test_presentation_rejects_bad_characteristic():
    with pytest.raises(CharacteristicError):
        IdealPresentation(2, 4, ("x1^2", "x2^2"))


def test_presentation_needs_generators():
    with pytest.raises(MalformedInputError):
        IdealPresentation(2, 0, ())


def test_presentation_reduces_mod_p():
    p = IdealPresentation(2, 3, ("x1^2+3*x1*x2", "x2^2"))
    assert p.polynomials[0] == {(2, 0): 1}


def test_presentation_from_dict_decimal_strings():
    p = IdealPresentation.from_dict(
        {"vars": "2", "char": "0", "truncation": "4", "generators": ["x1^2", "x2^2"]}
    )
    assert p == IdealPresentation(2, 0, ("x1^2", "x2^2"), 4)


def test_presentation_from_dict_unknown_field():
    with pytest.raises(MalformedInputError):
        IdealPresentation.from_dict({"vars": 2, "generators": ["x1^2"], "ring": "Q"})


def test_presentation_file_roundtrip(tmp_path):
    p = IdealPresentation(3, 101, ("x1^2", "x1*x2", "2*x1*x3+x2^2", "x3^3", "x2*x3^2"))
    path = tmp_path / "i6.json"
    dump_presentation(p, path)
    assert json.loads(path.read_text())["char"] == 101
    assert load_presentation(path) == p


def test_presentation_invalid_json():
    with pytest.raises(MalformedInputError):
        load_presentation(FIXTURES / "malformed.json")


def test_quotient_ci_xy(ci_xy):
    assert ci_xy.length == 4
    assert hilbert_function(ci_xy) == (1, 2, 1)
    assert ci_xy.level == 2


def test_quotient_ci_322(ci_322):
    inv = algebra_invariants(ci_322)
    assert inv.length == 12
    assert inv.hilbert == (1, 3, 4, 3, 1)
    assert inv.emdim == 3
    assert inv.gorenstein
    assert samuel_function(ci_322) == (1, 4, 8, 11, 12)


def test_quotient_square_of_maximal_ideal():
    p = load_presentation(FIXTURES / "square_of_maximal_ideal.json")
    a = build_quotient_algebra(p)
    inv = algebra_invariants(a)
    assert inv.hilbert == (1, 2)
    assert inv.socle_dimension == 2
    assert not inv.gorenstein


def test_quotient_not_artinian():
    with pytest.raises(TruncationTooSmallError):
        build_quotient_algebra(IdealPresentation(2, 0, ("x1*x2",)))


def test_quotient_explicit_truncation_too_small():
    with pytest.raises(TruncationTooSmallError) as excinfo:
        build_quotient_algebra(IdealPresentation(1, 0, ("x1^3",), truncation=2))
    assert excinfo.value.hilbert == (1, 1)
    assert excinfo.value.hilbert_next == (1, 1, 1)


def test_quotient_over_prime_field():
    a = build_quotient_algebra(IdealPresentation(2, 101, ("x1^2", "x2^2")))
    assert a.field.name == "F101"
    assert hilbert_function(a) == (1, 2, 1)


def test_local_multiplication(ci_xy):
    x1, x2 = ci_xy.generators
    product = ci_xy.multiply(x1, x2)
    assert ci_xy.filtration_degree(product) == 2
    assert ci_xy.format_element(product) == "x1*x2"
    assert ci_xy.filtration_degree(ci_xy.multiply(x1, x1)) is None
    assert ci_xy.multiply(ci_xy.unit(), x2) == x2


def test_local_linear_part(ci_322):
    assert len(ci_322.linear_part) == 3


def test_minimal_generators_drops_redundant():
    p = IdealPresentation(2, 0, ("x1^2", "x2^2", "x1^2*x2"))
    assert minimal_generators(p) == ["x1^2", "x2^2"]


def test_minimal_generators_linear_dependence():
    p = IdealPresentation(2, 0, ("x1^2+x2^2", "x1^2-x2^2", "x1^2"))
    assert minimal_generators(p) == ["x1^2+x2^2", "x1^2-x2^2"]


def test_minimal_generator_count_i6():
    p = IdealPresentation(3, 0, ("x1^2", "x1*x2", "2*x1*x3+x2^2", "x3^3", "x2*x3^2"))
    assert minimal_generator_count(p) == 5


def test_socle_gorenstein(ci_xy):
    socle = socle_basis(ci_xy)
    assert len(socle) == 1
    assert ci_xy.format_element(socle[0]) == "x1*x2"
    assert socle_linear_part(ci_xy) == 0


def test_socle_quotient(ci_xy):
    b = quotient_by_socle(ci_xy)
    assert b.length == 3
    assert hilbert_function(b) == (1, 2)
    assert socle_linear_part(b) == 2


def test_quotient_by_unit(ci_xy):
    with pytest.raises(MalformedInputError):
        quotient_by_ideal(ci_xy, [ci_xy.unit()])


H1331_TAGS = [FamilyTag.I1, FamilyTag.I2, FamilyTag.I3, FamilyTag.I4, FamilyTag.I5, FamilyTag.I6]


def _presentation_id(p: IdealPresentation) -> str:
    return f"F{p.characteristic}:" + ",".join(p.generators)


def _built_algebras():
    presentations = [
        IdealPresentation(2, 0, ("x1^2", "x2^2")),
        IdealPresentation(3, 0, ("x1^3", "x2^2", "x3^2")),
        IdealPresentation(2, 0, ("x1^2", "x1*x2", "x2^2")),
        IdealPresentation(3, 0, ("x1^2", "x1*x2", "2*x1*x3+x2^2", "x3^3", "x2*x3^2")),
        IdealPresentation(2, 101, ("x1^3+x2^3", "x1*x2")),
    ]
    presentations.extend(family_ideal(FamilySpec(tag, n)) for tag in H1331_TAGS for n in (3, 4))
    return presentations


@pytest.mark.parametrize("p", _built_algebras(), ids=_presentation_id)
def test_local_commutative_and_associative(p: IdealPresentation):
    a = build_quotient_algebra(p)
    basis = [a.basis_vector(i) for i in range(a.length)]
    for i, u in enumerate(basis):
        assert a.multiply(a.unit(), u) == u
        for v in basis[i:]:
            uv = a.multiply(u, v)
            assert uv == a.multiply(v, u)
            for w in basis:
                assert a.multiply(uv, w) == a.multiply(u, a.multiply(v, w))


@pytest.mark.parametrize("p", _built_algebras(), ids=_presentation_id)
def test_quotient_stable_under_larger_truncation(p: IdealPresentation):
    a = build_quotient_algebra(p)
    for extra in (1, 2):
        larger = IdealPresentation(
            p.nvars, p.characteristic, p.generators, truncation=p.effective_truncation + extra
        )
        b = build_quotient_algebra(larger)
        assert hilbert_function(b) == hilbert_function(a)
        assert b.length == a.length
