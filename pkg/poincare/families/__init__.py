from .inverse_system import (
    DualPolynomial,
    almost_stretched_polynomial,
    annihilator_basis,
    differentiate,
    inverse_system_ideal,
    stretched_polynomial,
)
from .theorem import FamilyBuilder, FamilySpec, FamilyTag, ci_ideal, family_ideal

__all__ = [
    "DualPolynomial",
    "FamilyBuilder",
    "FamilySpec",
    "FamilyTag",
    "almost_stretched_polynomial",
    "annihilator_basis",
    "ci_ideal",
    "differentiate",
    "family_ideal",
    "inverse_system_ideal",
    "stretched_polynomial",
]
