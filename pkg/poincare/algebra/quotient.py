import logging
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from ..exactmath import Field, SparseRow, complement_indices_sparse
from ..exceptions import MalformedInputError, TruncationTooSmallError
from .local import LocalAlgebra, SubspaceReducer
from .polynomials import (
    Monomial,
    Polynomial,
    elimination_key,
    monomials_below,
    multiply_monomials,
    poly_order,
    variable,
)
from .presentation import IdealPresentation

logger = logging.getLogger(__name__)


class TruncatedRing:
    """
    T = k[x1..xn]/m^N with its monomial basis in listing order.

    The ideal generated by a list of polynomials is the subspace I_T spanned by the products
    g*m (m a monomial of degree < N); it is reduced with :func:`elimination_key` as pivot
    preference, so each relation pivots on its lowest-order term.
    """

    def __init__(self, nvars: int, truncation: int, field: Field):
        self.nvars = nvars
        self.truncation = truncation
        self.field = field
        self.monomials: List[Monomial] = monomials_below(nvars, truncation)
        self.index: Dict[Monomial, int] = {m: i for i, m in enumerate(self.monomials)}
        self.column_order: List[int] = sorted(
            range(len(self.monomials)), key=lambda i: elimination_key(self.monomials[i])
        )

    @property
    def dimension(self) -> int:
        return len(self.monomials)

    def product(self, poly: Polynomial, monomial: Monomial) -> SparseRow:
        """Coordinates of poly * monomial in T."""
        row: SparseRow = {}
        for m, c in poly.items():
            shifted = multiply_monomials(m, monomial)
            if sum(shifted) >= self.truncation:
                continue
            value = self.field.convert(c)
            if not self.field.is_zero(value):
                j = self.index[shifted]
                row[j] = row.get(j, self.field.zero) + value
        return {j: v for j, v in row.items() if not self.field.is_zero(v)}

    def ideal_rows(
        self, polys: Tuple[Polynomial, ...], min_multiplier_degree: int = 0
    ) -> List[SparseRow]:
        """The spanning set {g*m} of I_T, optionally only with deg(m) >= ``min_multiplier_degree``."""
        rows = []
        for poly in polys:
            order = poly_order(poly)
            if order is None:
                continue
            for m in self.monomials:
                d = sum(m)
                if d < min_multiplier_degree or d + order >= self.truncation:
                    continue
                row = self.product(poly, m)
                if row:
                    rows.append(row)
        return rows

    def reduce_ideal(self, polys: Tuple[Polynomial, ...]) -> SubspaceReducer:
        return SubspaceReducer(
            self.ideal_rows(polys), self.dimension, self.field, self.column_order
        )

    def hilbert_of(self, reducer: SubspaceReducer) -> Tuple[int, ...]:
        counts: Dict[int, int] = {}
        for c in reducer.kept:
            d = sum(self.monomials[c])
            counts[d] = counts.get(d, 0) + 1
        return tuple(counts.get(d, 0) for d in range(max(counts) + 1))


def _quotient(ring: TruncatedRing, reducer: SubspaceReducer) -> LocalAlgebra:
    field = ring.field
    kept = reducer.kept
    position = {c: pos for pos, c in enumerate(kept)}

    def coordinates(monomial: Monomial) -> Tuple:
        out = [field.zero] * len(kept)
        if sum(monomial) < ring.truncation:
            for c, value in reducer.normal_form({ring.index[monomial]: field.one}).items():
                out[position[c]] = value
        return tuple(out)

    table: List[List[Tuple]] = [[()] * len(kept) for _ in kept]
    for a, i in enumerate(kept):
        for b in range(a, len(kept)):
            product = coordinates(multiply_monomials(ring.monomials[i], ring.monomials[kept[b]]))
            table[a][b] = product
            table[b][a] = product

    generators = []
    for k in range(ring.nvars):
        x = ring.index[variable(ring.nvars, k)]
        if x not in position:
            raise MalformedInputError(f"x{k + 1} is congruent to an element of m^2")
        generators.append(coordinates(variable(ring.nvars, k)))

    return LocalAlgebra(
        field=field,
        nvars=ring.nvars,
        basis=tuple(ring.monomials[c] for c in kept),
        mult_table=tuple(tuple(row) for row in table),
        filt_degree=tuple(sum(ring.monomials[c]) for c in kept),
        generators=tuple(generators),
    )


def build_quotient_algebra(p: IdealPresentation) -> LocalAlgebra:
    """
    Build A = k[x1..xn]/I from a presentation by linear algebra in k[x]/m^N.

    The truncation is validated by rebuilding at N+1: if the Hilbert function moves, m^N was
    not contained in I + m^(N+1) and :class:`TruncationTooSmallError` is raised.
    """
    return _build_validated(p)


@lru_cache(maxsize=32)
def _build_validated(p: IdealPresentation) -> LocalAlgebra:
    nvars, polys, truncation = p.nvars, p.polynomials, p.effective_truncation
    field = p.field
    ring = TruncatedRing(nvars, truncation, field)
    reducer = ring.reduce_ideal(polys)
    hilbert = ring.hilbert_of(reducer)

    larger = TruncatedRing(nvars, truncation + 1, field)
    hilbert_next = larger.hilbert_of(larger.reduce_ideal(polys))
    logger.debug(
        "truncation %d gives Hilbert function %s, truncation %d gives %s",
        truncation,
        hilbert,
        truncation + 1,
        hilbert_next,
    )
    if hilbert != hilbert_next:
        raise TruncationTooSmallError(truncation, hilbert, hilbert_next)

    algebra = _quotient(ring, reducer)
    logger.debug("built algebra of length %d over %s", algebra.length, field.name)
    return algebra


def minimal_generators(
    p: IdealPresentation, algebra: Optional[LocalAlgebra] = None
) -> List[str]:
    """
    A deterministic subset of the generators of ``p`` whose classes form a basis of I/mI.

    Computed as a complement of m*I_T + (I_T meet m^(N'-1)) inside I_T, at a truncation
    N' >= (largest generator degree) + level + 2 where the count is exact. The generators
    are scanned in the given order and each one is kept if it is not already in the span.
    """
    if algebra is None:
        algebra = build_quotient_algebra(p)
    truncation = max(p.effective_truncation, p.max_degree + algebra.level + 2)
    ring = TruncatedRing(p.nvars, truncation, p.field)
    polys = p.polynomials

    reducer = ring.reduce_ideal(polys)
    top = [
        row
        for pivot, row in reducer.pivot_rows.items()
        if sum(ring.monomials[pivot]) >= truncation - 1
    ]
    span = ring.ideal_rows(polys, min_multiplier_degree=1) + top
    unit = tuple([0] * p.nvars)
    candidates = [ring.product(poly, unit) for poly in polys]

    chosen = complement_indices_sparse(span, candidates, ring.field, ring.dimension)
    logger.debug(
        "%d of %d generators are minimal (truncation %d)",
        len(chosen),
        len(polys),
        truncation,
    )
    return [p.generators[i] for i in chosen]


def minimal_generator_count(p: IdealPresentation) -> int:
    return len(minimal_generators(p))
