import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd, lcm
from typing import Dict, List, Tuple

from ..algebra import (
    IdealPresentation,
    Monomial,
    Polynomial,
    PolynomialGrammar,
    TruncatedRing,
    minimal_generators,
)
from ..algebra.polynomials import monomials_below, poly_degree
from ..exactmath import (
    Field,
    SparseRow,
    complement_indices_sparse,
    kernel_from_echelon,
    row_reduce,
)
from ..exceptions import MalformedInputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DualPolynomial:
    """A nonzero polynomial F with integer coefficients, acted on by partial derivatives."""

    nvars: int
    terms: Tuple[Tuple[Monomial, int], ...]

    def __post_init__(self):
        terms = tuple(sorted((tuple(m), c) for m, c in self.terms if c != 0))
        object.__setattr__(self, "terms", terms)
        if self.nvars < 1:
            raise MalformedInputError(f"vars must be >= 1, got {self.nvars}")
        if not terms:
            raise MalformedInputError("the dual polynomial F must be nonzero")
        for m, _ in terms:
            if len(m) != self.nvars:
                raise MalformedInputError(
                    f"monomial {m} does not have {self.nvars} exponents"
                )

    @classmethod
    def parse(cls, text: str, nvars: int) -> "DualPolynomial":
        return cls(nvars, tuple(PolynomialGrammar(nvars).parse(text).items()))

    @property
    def degree(self) -> int:
        return max(sum(m) for m, _ in self.terms)

    def as_polynomial(self) -> Polynomial:
        return dict(self.terms)

    def __str__(self) -> str:
        return PolynomialGrammar.format(self.as_polynomial())


def stretched_polynomial(n: int, socle_degree: int) -> DualPolynomial:
    """x1^e + x2^2 + ... + xn^2: H = (1, n, 1, ..., 1)."""
    return DualPolynomial.parse(
        "+".join([f"x1^{socle_degree}"] + [f"x{i}^2" for i in range(2, n + 1)]), n
    )


def almost_stretched_polynomial(n: int, socle_degree: int) -> DualPolynomial:
    """x1^e + x2^3 + x3^2 + ... + xn^2: H = (1, n, 2, 1, ..., 1)."""
    return DualPolynomial.parse(
        "+".join(
            [f"x1^{socle_degree}", "x2^3"] + [f"x{i}^2" for i in range(3, n + 1)]
        ),
        n,
    )


def differentiate(operator: Monomial, target: Monomial) -> Tuple[int, Monomial]:
    """The partial derivative d^operator applied to x^target: (coefficient, monomial)."""
    coefficient = 1
    for a, b in zip(operator, target):
        if a > b:
            return 0, target
        coefficient *= factorial(b) // factorial(b - a)
    return coefficient, tuple(b - a for a, b in zip(operator, target))


def _integral(coordinates: Dict[Monomial, Fraction]) -> Polynomial:
    """Scale to coprime integer coefficients."""
    scale = lcm(*(c.denominator for c in coordinates.values()))
    values = {m: int(c * scale) for m, c in coordinates.items()}
    common = gcd(*values.values())
    return {m: c // common for m, c in values.items()}


def annihilator_basis(F: DualPolynomial, degree_bound: int) -> List[Polynomial]:
    """
    A basis of Ann(F) inside the polynomials of degree <= ``degree_bound``.

    This is the kernel of the catalecticant matrix whose column for the monomial m holds
    the coefficients of the derivative of F by m. Basis elements are ordered by the
    degree of their highest term.
    """
    field = Field.rationals()
    columns = monomials_below(F.nvars, degree_bound + 1)
    targets: Dict[Monomial, int] = {}
    sparse: Dict[int, SparseRow] = {}
    for j, m in enumerate(columns):
        for term, c in F.terms:
            coefficient, result = differentiate(m, term)
            if coefficient == 0:
                continue
            i = targets.setdefault(result, len(targets))
            row = sparse.setdefault(i, {})
            row[j] = row.get(j, field.zero) + field.convert(coefficient * c)

    ech = row_reduce(sparse, (len(targets), len(columns)), field)
    logger.debug(
        "catalecticant of %s up to degree %d: %d columns, rank %d",
        F,
        degree_bound,
        len(columns),
        len(ech.pivots),
    )

    basis = []
    for vector in kernel_from_echelon(ech, field):
        coordinates = {
            columns[j]: field.to_fraction(v)
            for j, v in enumerate(vector)
            if not field.is_zero(v)
        }
        low = [m for m in coordinates if sum(m) < 2]
        if low:
            raise MalformedInputError(
                f"F = {F} is annihilated by an element of order {min(map(sum, low))}; "
                f"it does not need all {F.nvars} variables"
            )
        basis.append(_integral(coordinates))
    return basis


def inverse_system_ideal(
    F: DualPolynomial, n: int, degree_bound: int
) -> IdealPresentation:
    """
    Ann(F) as an ideal presentation over Q.

    Annihilator elements are taken degree by degree (by their highest term) and kept only if
    they are not already in the ideal generated by those kept before, working modulo
    m^(D+1); :func:`minimal_generators` then removes what remains redundant.
    """
    if F.nvars != n:
        raise MalformedInputError(f"F is written in {F.nvars} variables, expected {n}")
    if degree_bound < F.degree + 1:
        raise MalformedInputError(
            f"the degree bound must be >= deg F + 1 = {F.degree + 1}, got {degree_bound}"
        )

    field = Field.rationals()
    ring = TruncatedRing(n, degree_bound + 1, field)
    unit = tuple([0] * n)

    by_degree: Dict[int, List[Polynomial]] = {}
    for poly in annihilator_basis(F, degree_bound):
        by_degree.setdefault(poly_degree(poly), []).append(poly)

    chosen: List[Polynomial] = []
    for d in sorted(by_degree):
        span = ring.ideal_rows(tuple(chosen))
        candidates = [ring.product(poly, unit) for poly in by_degree[d]]
        picked = complement_indices_sparse(span, candidates, field, ring.dimension)
        chosen.extend(by_degree[d][i] for i in picked)
        logger.debug("degree %d: kept %d of %d annihilators", d, len(picked), len(candidates))

    presentation = IdealPresentation(
        n, 0, tuple(PolynomialGrammar.format(poly) for poly in chosen)
    )
    minimal = minimal_generators(presentation)
    logger.debug("Ann(%s) has %d minimal generators", F, len(minimal))
    return IdealPresentation(n, 0, tuple(minimal))
