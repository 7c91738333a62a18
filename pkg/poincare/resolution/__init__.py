from .base import (
    ModuleMap,
    ResolutionState,
    check_last_exactness,
    first_differential,
    multiply_by_basis,
    resolution_step,
)
from .betti import (
    BettiResult,
    DualFieldReport,
    betti_numbers,
    betti_numbers_dual_field,
    resolve,
)

__all__ = [
    "BettiResult",
    "DualFieldReport",
    "ModuleMap",
    "ResolutionState",
    "betti_numbers",
    "betti_numbers_dual_field",
    "check_last_exactness",
    "first_differential",
    "multiply_by_basis",
    "resolution_step",
    "resolve",
]
