import logging
import random
from dataclasses import dataclass
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

from ..algebra import LocalAlgebra, hilbert_function
from ..config import EngineOptions
from ..exactmath import (
    DenseMatrix,
    Field,
    FieldScalar,
    Vector,
    nullspace_basis,
    span_rank,
)
from ..exceptions import CharacteristicError, PreconditionError, SearchExhaustedError

logger = logging.getLogger(__name__)

# Products a_i*a_j in the order used for net coordinates.
PRODUCT_ORDER: Tuple[Tuple[int, int], ...] = ((0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1))


def _check_h1331(a: LocalAlgebra) -> Tuple[int, ...]:
    if a.field.characteristic in (2, 3):
        raise CharacteristicError(
            f"nets of conics need characteristic other than 2 and 3, got {a.field.name}"
        )
    hilbert = hilbert_function(a)
    if len(hilbert) != 4 or hilbert[2:] != (3, 1) or hilbert[1] < 3:
        raise PreconditionError(
            f"a net of conics needs Hilbert function (1, n, 3, 1), got {hilbert}"
        )
    return hilbert


def quadratic_class(a: LocalAlgebra, v: Sequence[FieldScalar]) -> Vector:
    """Coordinates in m^2/m^3 of an element of m^2."""
    return tuple(v[i] for i, d in enumerate(a.filt_degree) if d == 2)


def find_square_generators(
    a: LocalAlgebra,
    seed: Optional[int] = None,
    options: Optional[EngineOptions] = None,
) -> Tuple[Vector, Vector, Vector]:
    """
    Three elements of m, independent modulo m^2, whose squares span m^2/m^3.

    They are chosen one at a time, each square extending the span of the previous ones.
    The classes of x1..xn are tried first, then seeded random combinations of them with
    coefficients in [-b, b]; b starts at the configured bound and grows with every quarter
    of the trial budget spent. The seed only matters when the variables do not suffice, and
    the classification of the resulting net does not depend on it.
    """
    _check_h1331(a)
    options = options or EngineOptions.from_env()
    seed = options.seed if seed is None else seed
    field = a.field

    chosen: List[Vector] = []
    linears: List[Vector] = []
    squares: List[Vector] = []
    width = len(a.linear_part)

    def offer(candidate: Vector) -> bool:
        linear = tuple(candidate[i] for i in a.linear_part)
        if span_rank(linears + [linear], field, width) == len(linears):
            return False
        square = quadratic_class(a, a.multiply(candidate, candidate))
        if span_rank(squares + [square], field, 3) > len(squares):
            chosen.append(candidate)
            linears.append(linear)
            squares.append(square)
            return True
        return False

    for g in a.generators:
        if len(chosen) == 3:
            break
        offer(g)

    rng = random.Random(seed)
    widen_every = max(1, options.trial_budget // 4)
    trial = 0
    while len(chosen) < 3:
        if trial >= options.trial_budget:
            raise SearchExhaustedError(
                f"no square generators after {options.trial_budget} trials "
                f"(found {len(chosen)} of 3)"
            )
        bound = options.coefficient_bound * (1 + trial // widen_every)
        coefficients = [rng.randint(-bound, bound) for _ in a.generators]
        trial += 1
        if not any(coefficients):
            continue
        if offer(a.combine(zip(coefficients, a.generators))):
            logger.debug("trial %d found a square generator (bound %d)", trial, bound)

    logger.debug(
        "square generators: %s", ", ".join(a.format_element(v) for v in chosen)
    )
    return chosen[0], chosen[1], chosen[2]


@dataclass(frozen=True)
class ConicNet:
    """
    The quadratic relations among three generators a1, a2, a3 modulo m^3.

    ``relations`` holds three coefficient vectors over the products (a1^2, a2^2, a3^2,
    a2*a3, a1*a3, a1*a2); :attr:`matrices` gives the symmetric matrices Q with
    a^T Q a = relation, so an off-diagonal entry is half the product coefficient.
    """

    algebra: LocalAlgebra
    generators: Tuple[Vector, Vector, Vector]
    relations: Tuple[Vector, Vector, Vector]

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def matrices(self) -> Tuple[Tuple[Tuple[FieldScalar, ...], ...], ...]:
        half = self.field.fraction(1, 2)
        out = []
        for relation in self.relations:
            q = [[self.field.zero] * 3 for _ in range(3)]
            for (i, j), c in zip(PRODUCT_ORDER, relation):
                if i == j:
                    q[i][i] = c
                else:
                    q[i][j] = q[j][i] = c * half
            out.append(tuple(tuple(row) for row in q))
        return tuple(out)

    def generator_strings(self) -> List[str]:
        return [self.algebra.format_element(g) for g in self.generators]

    def to_list(self) -> List[List[str]]:
        return [
            [self.field.to_json(v) for row in q for v in row] for q in self.matrices
        ]


def _primitive(vector: Vector, field: Field) -> Vector:
    """Scale to coprime integers over Q, to a leading 1 over F_p."""
    nonzero = [v for v in vector if not field.is_zero(v)]
    if field.characteristic == 0:
        fractions = [field.to_fraction(v) for v in nonzero]
        scale = lcm(*(f.denominator for f in fractions))
        common = gcd(*(int(f * scale) for f in fractions))
        factor = field.fraction(scale, common)
    else:
        factor = field.one / nonzero[0]
    return tuple(v * factor for v in vector)


def relation_net(
    a: LocalAlgebra, gens: Sequence[Sequence[FieldScalar]]
) -> ConicNet:
    """
    The kernel of the map k^6 -> m^2/m^3 sending the products a_i*a_j to their classes.

    The three generators need not be the ones from :func:`find_square_generators`; any
    elements of m whose products span m^2/m^3 give a three-dimensional kernel.
    """
    _check_h1331(a)
    if len(gens) != 3:
        raise PreconditionError(f"a net needs three generators, got {len(gens)}")
    gens = tuple(a.element(g) for g in gens)
    columns = [quadratic_class(a, a.multiply(gens[i], gens[j])) for i, j in PRODUCT_ORDER]
    m = DenseMatrix.from_columns(columns, a.field, rows=3)
    kernel = nullspace_basis(m)
    if len(kernel) != 3:
        raise PreconditionError(
            f"the quadratic relations among the generators have dimension {len(kernel)}, "
            f"expected 3"
        )
    relations = tuple(_primitive(v, a.field) for v in kernel)
    logger.debug("relation net of dimension 3 over %s", a.field.name)
    return ConicNet(a, gens, relations)
