from pathlib import Path

import pytest

from poincare.algebra import IdealPresentation, build_quotient_algebra, load_presentation
from poincare.config import EngineOptions
from poincare.exceptions import MalformedInputError, ResourceLimitError
from poincare.resolution import (
    BettiResult,
    betti_numbers,
    betti_numbers_dual_field,
    resolve,
)

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def hypersurface():
    """k[x]/(x^2)"""
    return build_quotient_algebra(IdealPresentation(1, 0, ("x1^2",)))


@pytest.fixture
def ci_xy():
    return build_quotient_algebra(IdealPresentation(2, 0, ("x1^2", "x2^2")))


@pytest.fixture
def golod():
    """k[x, y]/m^2 is not Gorenstein; its Poincare series is 1/(1 - 2z)."""
    return build_quotient_algebra(IdealPresentation(2, 0, ("x1^2", "x1*x2", "x2^2")))


def test_resolution_hypersurface(hypersurface):
    assert betti_numbers(hypersurface, 5) == [1, 1, 1, 1, 1, 1]


def test_resolution_ci_xy(ci_xy):
    assert betti_numbers(ci_xy, 8) == [1, 2, 3, 4, 5, 6, 7, 8, 9]


def test_resolution_ci_322():
    a = build_quotient_algebra(IdealPresentation(3, 0, ("x1^3", "x2^2", "x3^2")))
    assert betti_numbers(a, 5) == [1, 3, 6, 10, 15, 21]


def test_resolution_golod(golod):
    assert betti_numbers(golod, 5) == [1, 2, 4, 8, 16, 32]


def test_resolution_over_prime_field():
    a = build_quotient_algebra(IdealPresentation(2, 32003, ("x1^2", "x2^2")))
    assert betti_numbers(a, 4) == [1, 2, 3, 4, 5]


def test_resolution_step_zero(ci_xy):
    assert betti_numbers(ci_xy, 0) == [1]


def test_resolution_negative_step(ci_xy):
    with pytest.raises(MalformedInputError):
        betti_numbers(ci_xy, -1)


def test_resolution_maps_are_minimal(ci_xy):
    state = resolve(ci_xy, 4, EngineOptions())
    assert state.steps == 4
    assert all(m.is_minimal() for m in state.maps)
    assert [m.source for m in state.maps] == [2, 3, 4, 5]


def test_resolution_without_exactness_checks(ci_xy):
    options = EngineOptions(verify_exactness=False)
    assert betti_numbers(ci_xy, 4, options) == [1, 2, 3, 4, 5]


def test_resolution_column_budget(ci_xy):
    with pytest.raises(ResourceLimitError) as excinfo:
        betti_numbers(ci_xy, 5, EngineOptions(column_budget=4))
    assert excinfo.value.partial_betti == [1, 2]


def test_resolution_result_dict():
    assert BettiResult("F101", (1, 2, 3)).to_dict() == {
        "field": "F101",
        "betti": ["1", "2", "3"],
        "steps": "2",
        "minimal": True,
    }


def test_resolution_dual_field():
    p = IdealPresentation(2, 0, ("x1^2", "x2^2"))
    report = betti_numbers_dual_field(p, 3)
    assert report.consistent
    assert report.betti == {
        "Q": [1, 2, 3, 4],
        "F101": [1, 2, 3, 4],
        "F32003": [1, 2, 3, 4],
    }


@pytest.mark.parametrize(
    "fixture", ["ci_x2_y2", "i3_n3", "i6_n3", "square_of_maximal_ideal"]
)
def test_resolution_same_over_q_and_f32003(fixture: str):
    p = load_presentation(FIXTURES / f"{fixture}.json")
    over_q = betti_numbers(build_quotient_algebra(p.with_characteristic(0)), 4)
    over_p = betti_numbers(build_quotient_algebra(p.with_characteristic(32003)), 4)
    assert over_q == over_p
    assert over_q[0] == 1
