import logging
from enum import Enum
from typing import Iterable, Union

from sympy import Poly

from ..exceptions import ConsistencyError, MalformedInputError, PreconditionError
from .rational import RationalFunction, expand_rational, to_poly

logger = logging.getLogger(__name__)


class TateKind(Enum):
    """Order of the element r one divides by: r in N minus N^2, or r in N^2."""

    NONSQUARE = "nonsquare"
    SQUARE = "square"


class SocleDirection(Enum):
    TO_A = "toA"
    FROM_A = "fromA"


ONE_PLUS_Z = to_poly([1, 1])
ONE_MINUS_Z2 = to_poly([1, 0, -1])
Z = to_poly([0, 1])
Z2 = to_poly([0, 0, 1])


def transform_tate(P: RationalFunction, kind: Union[TateKind, str]) -> RationalFunction:
    """
    P_R from P_(R/(r)) for a regular element r: a factor (1+z) when r is not in the square of
    the maximal ideal, (1-z^2) when it is.
    """
    kind = TateKind(kind)
    factor = ONE_PLUS_Z if kind is TateKind.NONSQUARE else ONE_MINUS_Z2
    return RationalFunction.from_polys(P.numerator * factor, P.denominator)


def transform_tate_chain(
    P: RationalFunction, kinds: Iterable[Union[TateKind, str]]
) -> RationalFunction:
    """Successive Tate transforms along a regular sequence; an empty sequence is the identity."""
    for kind in kinds:
        P = transform_tate(P, kind)
    return P


def _emdim(P: RationalFunction) -> int:
    return expand_rational(P, 1)[1]


def transform_socle(
    P: RationalFunction, direction: Union[SocleDirection, str]
) -> RationalFunction:
    """
    Relate the Poincare series of a Gorenstein ring A and of B = A/Soc(A).

    toA: P_A = P_B / (1 + z^2 P_B), i.e. N/(D + z^2 N); fromA is the inverse N/(D - z^2 N).
    The relation fails for hypersurfaces, so the embedding dimension read off the series
    (its z coefficient) must be at least 2.
    """
    direction = SocleDirection(direction)
    emdim = _emdim(P)
    if emdim < 2:
        raise PreconditionError(
            f"the socle transform needs embedding dimension >= 2, the series has {emdim}"
        )
    N, D = P.numerator, P.denominator
    shifted = Z2 * N
    if direction is SocleDirection.TO_A:
        return RationalFunction.from_polys(N, D + shifted)
    return RationalFunction.from_polys(N, D - shifted)


def transform_golod_socle_vars(P: RationalFunction, m: int) -> RationalFunction:
    """Add m variables lying in the socle: P / (1 - m z P) = N/(D - m z N)."""
    if m < 0:
        raise MalformedInputError(f"the number of socle variables must be >= 0, got {m}")
    N, D = P.numerator, P.denominator
    return RationalFunction.from_polys(N, D - Z * N * m)


# ----------------------------------------------------------------------------------------------------------
# The H = (1, n, 3, 1) reduction


def lift_numerator(base: RationalFunction, numerator: Poly) -> Poly:
    """
    The denominator D0 with base = numerator/D0.

    Normalization cancels common factors, e.g. (1+z)^3/(1-z^2)^3 is stored as 1/(1-z)^3;
    this undoes it as long as the stored numerator divides ``numerator``.
    """
    quotient, remainder = numerator.div(base.numerator)
    if not remainder.is_zero:
        raise MalformedInputError(
            f"the base {base} cannot be written over the numerator {numerator.as_expr()}"
        )
    return base.denominator * quotient


def compose_h1331_pipeline(base: RationalFunction, n: int) -> RationalFunction:
    """
    Poincare series of an H = (1, n, 3, 1) algebra from the series of its n = 3 core.

    The base is (1+z)^3/D0. Removing the socle of the core, adding n - 3 socle variables and
    putting a socle back gives (1+z)^3/(D0 - (n-3) z (1+z)^3): the z^2 terms cancel. The three
    transforms are also applied literally and must agree with the closed form.
    """
    if n < 3:
        raise MalformedInputError(f"the reduction needs n >= 3, got {n}")
    cube = ONE_PLUS_Z**3
    D0 = lift_numerator(base, cube)

    closed = RationalFunction.from_polys(cube, D0 - Z * cube * (n - 3))

    literal = transform_socle(base, SocleDirection.FROM_A)
    literal = transform_golod_socle_vars(literal, n - 3)
    literal = transform_socle(literal, SocleDirection.TO_A)
    if literal != closed:
        raise ConsistencyError(
            f"the transforms give {literal}, the closed form gives {closed}"
        )
    logger.debug("pipeline at n=%d: %s", n, closed)
    return closed
