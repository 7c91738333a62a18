from .invariants import (
    AlgebraInvariants,
    algebra_invariants,
    hilbert_function,
    quotient_by_socle,
    samuel_function,
    socle_basis,
    socle_linear_part,
)
from .local import LocalAlgebra, SubspaceReducer, quotient_by_ideal
from .polynomials import Monomial, Polynomial, PolynomialGrammar
from .presentation import IdealPresentation, dump_presentation, load_presentation
from .quotient import (
    TruncatedRing,
    build_quotient_algebra,
    minimal_generator_count,
    minimal_generators,
)

__all__ = [
    "AlgebraInvariants",
    "IdealPresentation",
    "LocalAlgebra",
    "Monomial",
    "Polynomial",
    "PolynomialGrammar",
    "SubspaceReducer",
    "TruncatedRing",
    "algebra_invariants",
    "build_quotient_algebra",
    "dump_presentation",
    "hilbert_function",
    "load_presentation",
    "minimal_generator_count",
    "minimal_generators",
    "quotient_by_ideal",
    "quotient_by_socle",
    "samuel_function",
    "socle_basis",
    "socle_linear_part",
]
