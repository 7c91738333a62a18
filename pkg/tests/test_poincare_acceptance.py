from math import comb
from pathlib import Path

import pytest

from poincare.algebra import (
    algebra_invariants,
    build_quotient_algebra,
    load_presentation,
    minimal_generator_count,
    quotient_by_socle,
)
from poincare.cli import core_series, verify_family
from poincare.config import EngineOptions
from poincare.exactmath import Field
from poincare.families import FamilySpec, FamilyTag, family_ideal
from poincare.resolution import betti_numbers
from poincare.series import RationalFunction, pipeline_base

FIXTURES = Path(__file__).parent / "fixtures"

CODIM3_FAMILIES = [
    (FamilyTag.I1, "ci(n=3)"),
    (FamilyTag.I2, "ci(n=3)"),
    (FamilyTag.I3, "ci(n=3)"),
    (FamilyTag.I4, "codim3(eps=5, n=3)"),
    (FamilyTag.I5, "codim3(eps=5, n=3)"),
    (FamilyTag.I6, "codim3(eps=5, n=3)"),
]


def assert_socle_identity(a, max_step: int, options=None):
    """a_t + sum_{i+j=t-2} a_i b_j = b_t for A and B = A/Soc(A)."""
    betti_a = betti_numbers(a, max_step, options)
    betti_b = betti_numbers(quotient_by_socle(a), max_step, options)
    for t in range(max_step + 1):
        convolution = sum(betti_a[i] * betti_b[t - 2 - i] for i in range(t - 1))
        assert betti_a[t] + convolution == betti_b[t], f"mismatch at b_{t}"


@pytest.mark.parametrize("tag,label", CODIM3_FAMILIES)
def test_acceptance_codim3_families(tag: FamilyTag, label: str):
    report = verify_family(tag, 3, 5)
    assert report.hilbert == [1, 3, 3, 1]
    assert label in report.matched
    assert report.findings == []


@pytest.mark.parametrize(
    "tag,eps0",
    [
        (FamilyTag.I1, 3),
        (FamilyTag.I2, 3),
        (FamilyTag.I3, 3),
        (FamilyTag.I4, 5),
        (FamilyTag.I5, 5),
        (FamilyTag.I6, 5),
    ],
)
def test_acceptance_pipeline_at_five(tag: FamilyTag, eps0: int):
    report = verify_family(tag, 5, 4)
    assert f"h1331-pipeline(eps0={eps0}, n=5)" in report.matched
    assert report.core_epsilon == report.core_epsilon_from_b2 == eps0


def test_acceptance_pipeline_disagrees_with_printed_form():
    report = verify_family(FamilyTag.I6, 5, 4)
    assert report.betti[4] == 551
    assert "h1331-printed(t>=4, n=5)" not in report.matched
    assert report.adjudication
    assert "confirmed: h1331-pipeline(eps0=5, n=5)" in report.adjudication[0]


def test_acceptance_socle_identity_complete_intersection():
    a = build_quotient_algebra(load_presentation(FIXTURES / "ci_x2_y2.json"))
    assert_socle_identity(a, 5)


def test_acceptance_socle_identity_i6():
    a = build_quotient_algebra(family_ideal(FamilySpec(FamilyTag.I6, 3)))
    assert_socle_identity(a, 5)


def test_acceptance_socle_identity_i1_at_four():
    a = build_quotient_algebra(family_ideal(FamilySpec(FamilyTag.I1, 4)))
    assert_socle_identity(a, 5)


@pytest.mark.parametrize("tag", [FamilyTag.STRETCHED, FamilyTag.ALMOST_STRETCHED])
def test_acceptance_stretched(tag: FamilyTag):
    report = verify_family(tag, 3, 6)
    assert "stretched(n=3)" in report.matched
    assert report.betti == [1, 3, 8, 21, 55, 144, 377]


@pytest.mark.slow
@pytest.mark.parametrize("tag", [FamilyTag.STRETCHED, FamilyTag.ALMOST_STRETCHED])
def test_acceptance_stretched_at_four(tag: FamilyTag):
    options = EngineOptions(column_budget=30000)
    report = verify_family(tag, 4, 6, options=options)
    assert "stretched(n=4)" in report.matched


@pytest.mark.parametrize(
    "fixture",
    [
        "ci_x2_y2.json",
        "i3_n3.json",
        "i6_n3.json",
        "square_of_maximal_ideal.json",
    ],
)
def test_acceptance_second_betti_number(fixture: str):
    p = load_presentation(FIXTURES / fixture)
    a = build_quotient_algebra(p)
    n = algebra_invariants(a).emdim
    assert betti_numbers(a, 2)[2] == comb(n, 2) + minimal_generator_count(p)


def test_acceptance_large_prime_field():
    report = verify_family(FamilyTag.I6, 3, 4, Field.prime(32003))
    assert report.field_name == "F32003"
    assert report.findings == []
    assert "codim3(eps=5, n=3)" in report.matched


def test_acceptance_complete_intersection_322():
    report = verify_family(FamilyTag.CI, 3, 6, exponents=(3, 2, 2))
    assert report.case == "complete-intersection"
    assert "ci(n=3)" in report.matched
    assert report.betti == [comb(p + 2, 2) for p in range(7)]


def test_acceptance_large_prime_field_at_five():
    report = verify_family(FamilyTag.I6, 5, 4, Field.prime(32003))
    assert report.betti[4] == 551
    assert "h1331-pipeline(eps0=5, n=5)" in report.matched
    assert report.findings == []
    i6 = build_quotient_algebra(family_ideal(FamilySpec(FamilyTag.I6, 5)))
    over_q = betti_numbers(i6, 3)
    assert report.betti[2:4] == over_q[2:4]


@pytest.mark.parametrize("n", [3, 5])
def test_acceptance_pipeline_uses_resolved_core(n: int):
    report = verify_family(FamilyTag.I6, n, 4)
    assert report.core_betti == [1, 3, 8, 21, 55]
    assert report.findings == []
    assert report.to_dict()["core_betti"] == ["1", "3", "8", "21", "55"]


def test_acceptance_core_series_confirms_catalog():
    findings = []
    assert core_series([1, 3, 8, 21, 55], 5, findings) == pipeline_base(5)
    assert findings == []


def test_acceptance_core_series_falls_back_to_fit():
    findings = []
    fitted = core_series([1, 3, 8, 21, 55], 3, findings)
    assert fitted == RationalFunction.of([1], [1, -3, 1])
    assert len(findings) == 1
    assert "b_2" in findings[0]
