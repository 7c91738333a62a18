import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..algebra import IdealPresentation, LocalAlgebra, build_quotient_algebra
from ..config import EngineOptions
from ..exceptions import MalformedInputError, MinimalityError
from .base import ResolutionState, check_last_exactness, resolution_step

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BettiResult:
    field_name: str
    betti: Tuple[int, ...]
    minimal: bool = True

    @property
    def steps(self) -> int:
        return len(self.betti) - 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "field": self.field_name,
            "betti": [str(b) for b in self.betti],
            "steps": str(self.steps),
            "minimal": self.minimal,
        }


def resolve(
    a: LocalAlgebra, max_step: int, options: Optional[EngineOptions] = None
) -> ResolutionState:
    """Run :func:`resolution_step` until b_max_step is known and check the newest map."""
    if max_step < 0:
        raise MalformedInputError(f"max step must be >= 0, got {max_step}")
    options = options or EngineOptions.from_env()
    state = ResolutionState(a, options=options)
    while state.steps < max_step:
        state = resolution_step(state)

    if options.verify_exactness and state.maps:
        exact = check_last_exactness(state)
        if exact is False:
            raise MinimalityError(f"the resolution is not exact at step {state.steps - 1}")
    if not all(m.is_minimal() for m in state.maps):
        raise MinimalityError("a differential has an entry outside the maximal ideal")

    logger.info("Betti numbers over %s: %s", a.field.name, list(state.betti))
    return state


def betti_numbers(
    a: LocalAlgebra, max_step: int, options: Optional[EngineOptions] = None
) -> List[int]:
    """
    Betti numbers b_0..b_max_step of the minimal free resolution of k over ``a``.

    Raises:
        ResourceLimitError: a step exceeded the column budget; ``partial_betti`` holds the
            Betti numbers computed before it.
    """
    return list(resolve(a, max_step, options).betti)


# ----------------------------------------------------------------------------------------------------------
# Field independence


@dataclass
class DualFieldReport:
    """Betti vectors of one presentation over Q and several prime fields."""

    betti: Dict[str, List[int]] = field(default_factory=dict)
    findings: List[str] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.findings


def betti_numbers_dual_field(
    p: IdealPresentation,
    max_step: int,
    primes: Sequence[int] = (101, 32003),
    options: Optional[EngineOptions] = None,
) -> DualFieldReport:
    """
    Compute the Betti prefix of ``p`` over Q and over F_q for each q in ``primes``.

    A mismatch is recorded as a characteristic-dependence finding and logged; it is never raised.
    """
    report = DualFieldReport()
    reference = betti_numbers(
        build_quotient_algebra(p.with_characteristic(0)), max_step, options
    )
    report.betti["Q"] = reference
    for q in primes:
        algebra = build_quotient_algebra(p.with_characteristic(q))
        values = betti_numbers(algebra, max_step, options)
        report.betti[algebra.field.name] = values
        if values != reference:
            finding = f"{algebra.field.name}: Betti numbers {values} differ from Q: {reference}"
            logger.info("characteristic dependence: %s", finding)
            report.findings.append(finding)
    return report
