import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from ..exactmath import SparseRow, Vector, kernel_from_echelon, row_reduce, span_rank
from .local import LocalAlgebra, quotient_by_ideal

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AlgebraInvariants:
    length: int
    hilbert: Tuple[int, ...]
    emdim: int
    level: int
    gorenstein: bool
    socle_basis: Tuple[Vector, ...]
    multiplicity: int

    @property
    def socle_dimension(self) -> int:
        return len(self.socle_basis)

    @property
    def samuel(self) -> Tuple[int, ...]:
        """chi(t) = dim A/m^(t+1) for t = 0..level."""
        out: List[int] = []
        total = 0
        for h in self.hilbert:
            total += h
            out.append(total)
        return tuple(out)


def hilbert_function(a: LocalAlgebra) -> Tuple[int, ...]:
    counts = [0] * (a.level + 1)
    for d in a.filt_degree:
        counts[d] += 1
    return tuple(counts)


def socle_basis(a: LocalAlgebra) -> List[Vector]:
    """
    Basis of Soc(A) = {v in m : x_l * v = 0 for every l}.

    The joint map v -> (x1*v, ..., xn*v) is stacked with the unit coordinate functional, so
    its kernel is the socle directly.
    """
    sparse: Dict[int, SparseRow] = {0: {0: a.field.one}}
    row = 1
    for matrix in a.generator_matrices:
        for i, entries in matrix.sparse_rows().items():
            sparse[row + i] = entries
        row += matrix.rows
    ech = row_reduce(sparse, (row, a.length), a.field)
    return kernel_from_echelon(ech, a.field)


def algebra_invariants(a: LocalAlgebra) -> AlgebraInvariants:
    hilbert = hilbert_function(a)
    socle = socle_basis(a)
    invariants = AlgebraInvariants(
        length=a.length,
        hilbert=hilbert,
        emdim=hilbert[1] if len(hilbert) > 1 else 0,
        level=len(hilbert) - 1,
        gorenstein=len(socle) == 1,
        socle_basis=tuple(socle),
        multiplicity=a.length,
    )
    logger.debug(
        "invariants: hilbert %s, socle dimension %d", hilbert, invariants.socle_dimension
    )
    return invariants


def samuel_function(a: LocalAlgebra) -> Tuple[int, ...]:
    return algebra_invariants(a).samuel


def quotient_by_socle(a: LocalAlgebra) -> LocalAlgebra:
    return quotient_by_ideal(a, socle_basis(a))


def socle_linear_part(a: LocalAlgebra) -> int:
    """dim (Soc(A) + m^2)/m^2: how many minimal generators of m can be taken in the socle."""
    projected = [tuple(v[i] for i in a.linear_part) for v in socle_basis(a)]
    return span_rank(projected, a.field, len(a.linear_part))
