import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Any, Dict, List, Optional, Tuple

from sympy import Matrix, Poly, Rational, expand, symbols
from sympy.polys.domains import QQ

from ..algebra import LocalAlgebra
from ..algebra.polynomials import listing_key, monomials_of_degree
from ..config import EngineOptions
from ..exactmath import Field, FieldScalar
from .net import ConicNet, find_square_generators, relation_net

logger = logging.getLogger(__name__)

l1, l2, l3 = LAMBDAS = symbols("l1 l2 l3")

# lambda1^3, lambda1^2*lambda2, ..., lambda3^3
CUBIC_MONOMIALS: Tuple[Tuple[int, int, int], ...] = tuple(
    sorted(monomials_of_degree(3, 3), key=listing_key)
)


class DiscriminantClass(Enum):
    IDENTICALLY_ZERO = "identically-zero"
    NON_REDUCED = "non-reduced"
    REDUCIBLE = "reducible-over-base-field"
    IRREDUCIBLE = "irreducible-over-base-field"


def _poly(expr: Any, characteristic: int, *gens) -> Poly:
    gens = gens or LAMBDAS
    if characteristic == 0:
        return Poly(expr, *gens, domain=QQ)
    return Poly(expr, *gens, modulus=characteristic)


def _to_sympy(value: FieldScalar, field: Field):
    f = field.to_fraction(value)
    return Rational(f.numerator, f.denominator)


@dataclass(frozen=True)
class TernaryCubic:
    """A cubic form in l1, l2, l3; coefficients follow :data:`CUBIC_MONOMIALS`."""

    coefficients: Tuple[Fraction, ...]
    characteristic: int = 0

    @classmethod
    def from_expr(cls, expr: Any, characteristic: int = 0) -> "TernaryCubic":
        poly = _poly(expand(expr), characteristic)
        by_monomial = dict(poly.terms())
        coefficients = []
        for m in CUBIC_MONOMIALS:
            c = Rational(by_monomial.get(m, 0))
            if characteristic == 0:
                coefficients.append(Fraction(int(c.p), int(c.q)))
            else:
                coefficients.append(Fraction(int(c) % characteristic))
        return cls(tuple(coefficients), characteristic)

    @property
    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def as_expr(self):
        return sum(
            Rational(value.numerator, value.denominator) * l1**a * l2**b * l3**c
            for value, (a, b, c) in zip(self.coefficients, CUBIC_MONOMIALS)
        )

    def as_poly(self) -> Poly:
        return _poly(self.as_expr(), self.characteristic)

    def __str__(self) -> str:
        return str(self.as_expr()) if not self.is_zero else "0"

    def to_list(self) -> List[str]:
        return [
            str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
            for c in self.coefficients
        ]


def discriminant(net: ConicNet) -> TernaryCubic:
    """det(l1*Q1 + l2*Q2 + l3*Q3), expanded exactly."""
    field = net.field
    pencil = Matrix.zeros(3, 3)
    for weight, q in zip(LAMBDAS, net.matrices):
        pencil += weight * Matrix(3, 3, [_to_sympy(v, field) for row in q for v in row])
    return TernaryCubic.from_expr(pencil.det(method="berkowitz"), field.characteristic)


# ----------------------------------------------------------------------------------------------------------
# Linear factors


def _normalize(value: Any, characteristic: int) -> Any:
    if characteristic == 0:
        return value
    r = Rational(value)
    return int(r.p) * pow(int(r.q), -1, characteristic) % characteristic


def _linear_roots(expr: Any, variable, characteristic: int) -> List[Any]:
    """Roots in the base field of a univariate polynomial."""
    poly = _poly(expr, characteristic, variable)
    if poly.is_zero:
        return []
    roots = []
    for factor, _ in poly.factor_list()[1]:
        if factor.degree() != 1:
            continue
        slope, constant = factor.nth(1), factor.nth(0)
        if characteristic == 0:
            roots.append(-Rational(constant) / Rational(slope))
        else:
            inverse = pow(int(slope) % characteristic, -1, characteristic)
            roots.append((-int(constant) * inverse) % characteristic)
    return roots


def _nonvanishing_point(cubic: TernaryCubic) -> Tuple[int, int, int]:
    # a nonzero cubic cannot vanish on all of S^3 for |S| = 4 points of the field
    for point in product(range(4), repeat=3):
        value = sum(
            c * point[0] ** a * point[1] ** b * point[2] ** e
            for c, (a, b, e) in zip(cubic.coefficients, CUBIC_MONOMIALS)
        )
        if cubic.characteristic:
            value %= cubic.characteristic
        if value != 0:
            return point
    raise ValueError("the cubic vanishes on the whole test grid")


def _change_of_basis(point: Tuple[int, int, int]) -> Matrix:
    """An invertible matrix whose third column is ``point``."""
    column = Matrix(point)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        g = Matrix.hstack(Matrix.eye(3)[:, i], Matrix.eye(3)[:, j], column)
        if g.det() != 0:
            return g
    raise ValueError(f"{point} is the zero vector")


def linear_factors(cubic: TernaryCubic) -> List[Tuple[Any, int]]:
    """
    The linear factors of a nonzero cubic over its base field, with multiplicities.

    After a change of coordinates making the coefficient of l3^3 nonzero, every linear factor
    is l3 - a*l1 - b*l2 with a a root of C(1, 0, s) and b a root of C(0, 1, s), so the
    candidates are finite and each one is tested by substituting l3 = a*l1 + b*l2.
    """
    p = cubic.characteristic
    g = _change_of_basis(_nonvanishing_point(cubic))
    mu = Matrix(LAMBDAS)
    changed = expand(cubic.as_expr().subs(dict(zip(LAMBDAS, g * mu)), simultaneous=True))

    a_roots = _linear_roots(changed.subs({l1: 1, l2: 0}), l3, p)
    b_roots = _linear_roots(changed.subs({l1: 0, l2: 1}), l3, p)

    out: List[Tuple[Any, int]] = []
    inverse = g.inv()
    for a, b in product(a_roots, b_roots):
        # multiplicity = order of vanishing along l3 = a*l1 + b*l2
        shifted = _poly(changed.subs(l3, l3 + a * l1 + b * l2), p)
        multiplicity = min(m[2] for m in shifted.monoms())
        if multiplicity == 0:
            continue
        # back to the original coordinates: the form is (l3 - a*l1 - b*l2) composed with g^-1
        row = Matrix([[-a, -b, 1]]) * inverse
        form = expand(sum(_normalize(c, p) * x for c, x in zip(row, LAMBDAS)))
        out.append((form, multiplicity))
    return out


def classify(cubic: TernaryCubic) -> DiscriminantClass:
    """
    Class of a ternary cubic over its coefficient field, read off its linear factors.

    A reducible cubic has a linear factor and a repeated factor of a cubic is linear, so the
    multiplicities of the linear factors stand in for a squarefree test against the partial
    derivatives.
    """
    if cubic.is_zero:
        return DiscriminantClass.IDENTICALLY_ZERO
    factors = linear_factors(cubic)
    if any(multiplicity > 1 for _, multiplicity in factors):
        return DiscriminantClass.NON_REDUCED
    if factors:
        return DiscriminantClass.REDUCIBLE
    return DiscriminantClass.IRREDUCIBLE


@dataclass(frozen=True)
class NetClassification:
    net: ConicNet
    discriminant: TernaryCubic
    label: DiscriminantClass

    def to_dict(self) -> Dict[str, Any]:
        return {
            "generators": self.net.generator_strings(),
            "net": self.net.to_list(),
            "discriminant": self.discriminant.to_list(),
            "class": self.label.value,
        }


def discriminant_classify(net: ConicNet) -> NetClassification:
    """Delta = det(l1*Q1 + l2*Q2 + l3*Q3) and its class over the coefficient field."""
    cubic = discriminant(net)
    label = classify(cubic)
    logger.info("discriminant %s: %s", cubic, label.value)
    return NetClassification(net, cubic, label)


def net_classification(
    a: LocalAlgebra,
    seed: Optional[int] = None,
    options: Optional[EngineOptions] = None,
) -> NetClassification:
    """find_square_generators, relation_net and discriminant_classify in one call."""
    gens = find_square_generators(a, seed=seed, options=options)
    return discriminant_classify(relation_net(a, gens))
