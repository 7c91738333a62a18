import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..exactmath import DenseMatrix, Field, FieldScalar, SparseRow, Vector, row_reduce
from ..exceptions import MalformedInputError
from .polynomials import Monomial, PolynomialGrammar

logger = logging.getLogger(__name__)


class SubspaceReducer:
    """
    Row-reduced spanning set of a subspace of k^size, with normal forms modulo it.

    ``column_order`` lists the coordinates from most to least preferred pivot. Every
    coordinate that does not become a pivot is *kept*; normal forms are supported on
    the kept coordinates and give a basis of the quotient space.
    """

    def __init__(
        self,
        rows: Iterable[Mapping[int, FieldScalar]],
        size: int,
        field: Field,
        column_order: Sequence[int],
    ):
        self.size = size
        self.field = field
        position = {c: pos for pos, c in enumerate(column_order)}
        sparse: Dict[int, SparseRow] = {}
        for i, row in enumerate(rows):
            permuted = {position[c]: v for c, v in row.items() if not field.is_zero(v)}
            if permuted:
                sparse[i] = permuted
        nrows = max(sparse) + 1 if sparse else 0
        ech = row_reduce(sparse, (nrows, size), field)

        self.pivot_rows: Dict[int, SparseRow] = {}
        for pivot, row in zip(ech.pivots, ech.rows):
            self.pivot_rows[column_order[pivot]] = {
                column_order[j]: v for j, v in row.items()
            }
        self.kept: Tuple[int, ...] = tuple(
            c for c in range(size) if c not in self.pivot_rows
        )
        logger.debug(
            "subspace of dimension %d in k^%d, quotient dimension %d",
            len(self.pivot_rows),
            size,
            len(self.kept),
        )

    @property
    def dimension(self) -> int:
        return len(self.pivot_rows)

    def normal_form(self, vector: Mapping[int, FieldScalar]) -> SparseRow:
        out: SparseRow = {}
        for c, value in vector.items():
            if self.field.is_zero(value):
                continue
            row = self.pivot_rows.get(c)
            if row is None:
                out[c] = out.get(c, self.field.zero) + value
                continue
            for j, entry in row.items():
                if j != c:
                    out[j] = out.get(j, self.field.zero) - value * entry
        return {c: v for c, v in out.items() if not self.field.is_zero(v)}

    def contains(self, vector: Mapping[int, FieldScalar]) -> bool:
        return not self.normal_form(vector)


@dataclass(frozen=True, eq=False)
class LocalAlgebra:
    """
    A finite-dimensional local algebra given by an ordered k-basis and its multiplication table.

    Basis element 0 is the unit. ``mult_table[i][j]`` holds the coordinates of e_i * e_j and
    ``filt_degree[i]`` the largest t with e_i in m^t; the basis is adapted to the m-adic
    filtration, so m^t is spanned by the basis elements of filtration degree >= t.
    ``generators`` holds the classes of x1..xn.
    """

    field: Field
    nvars: int
    basis: Tuple[Monomial, ...]
    mult_table: Tuple[Tuple[Vector, ...], ...]
    filt_degree: Tuple[int, ...]
    generators: Tuple[Vector, ...]

    def __post_init__(self):
        size = len(self.basis)
        if size == 0 or len(self.filt_degree) != size or len(self.mult_table) != size:
            raise MalformedInputError("basis, filtration and multiplication table disagree")
        if self.filt_degree[0] != 0:
            raise MalformedInputError("basis element 0 must be the unit")
        if len(self.generators) != self.nvars:
            raise MalformedInputError(
                f"expected {self.nvars} generator classes, got {len(self.generators)}"
            )

    @property
    def length(self) -> int:
        return len(self.basis)

    @property
    def level(self) -> int:
        return max(self.filt_degree)

    # ----------------------------------------------------------------------------------------------------------
    # Elements

    def zero(self) -> Vector:
        return (self.field.zero,) * self.length

    def unit(self) -> Vector:
        return self.basis_vector(0)

    def basis_vector(self, i: int) -> Vector:
        v = [self.field.zero] * self.length
        v[i] = self.field.one
        return tuple(v)

    def element(self, coordinates: Sequence) -> Vector:
        if len(coordinates) != self.length:
            raise MalformedInputError(
                f"an element needs {self.length} coordinates, got {len(coordinates)}"
            )
        return tuple(self.field.convert(c) for c in coordinates)

    def combine(self, terms: Iterable[Tuple[FieldScalar, Vector]]) -> Vector:
        """Linear combination sum(c * v) of (c, v) pairs."""
        out = [self.field.zero] * self.length
        for c, v in terms:
            c = self.field.convert(c)
            if self.field.is_zero(c):
                continue
            for i, value in enumerate(v):
                out[i] += c * value
        return tuple(out)

    def multiply(self, u: Sequence[FieldScalar], v: Sequence[FieldScalar]) -> Vector:
        is_zero = self.field.is_zero
        out = [self.field.zero] * self.length
        v_support = [(j, b) for j, b in enumerate(v) if not is_zero(b)]
        for i, a in enumerate(u):
            if is_zero(a):
                continue
            row = self.mult_table[i]
            for j, b in v_support:
                coefficient = a * b
                for k, value in enumerate(row[j]):
                    if not is_zero(value):
                        out[k] += coefficient * value
        return tuple(out)

    def multiplication_matrix(self, u: Sequence[FieldScalar]) -> DenseMatrix:
        """Matrix of w -> u*w; column s holds u * e_s."""
        columns = [self.multiply(u, self.basis_vector(s)) for s in range(self.length)]
        return DenseMatrix.from_columns(columns, self.field, rows=self.length)

    @cached_property
    def generator_matrices(self) -> Tuple[DenseMatrix, ...]:
        return tuple(self.multiplication_matrix(g) for g in self.generators)

    @cached_property
    def structure_constants(self) -> Tuple[Tuple[Tuple[int, int, FieldScalar], ...], ...]:
        """For each basis element r, the nonzero (s, t, c) with e_r * e_s = ... + c * e_t."""
        out = []
        for r in range(self.length):
            entries = []
            for s in range(self.length):
                for t, c in enumerate(self.mult_table[r][s]):
                    if not self.field.is_zero(c):
                        entries.append((s, t, c))
            out.append(tuple(entries))
        return tuple(out)

    @cached_property
    def action_by_source(self) -> Tuple[Dict[int, Tuple[Tuple[int, FieldScalar], ...]], ...]:
        """:attr:`structure_constants` grouped by s: for each r, s -> ((t, c), ...)."""
        out = []
        for entries in self.structure_constants:
            grouped: Dict[int, List[Tuple[int, FieldScalar]]] = {}
            for s, t, c in entries:
                grouped.setdefault(s, []).append((t, c))
            out.append({s: tuple(pairs) for s, pairs in grouped.items()})
        return tuple(out)

    @cached_property
    def linear_part(self) -> Tuple[int, ...]:
        """Indices of the basis elements of filtration degree 1; they minimally generate m."""
        return tuple(i for i, d in enumerate(self.filt_degree) if d == 1)

    def filtration_degree(self, v: Sequence[FieldScalar]) -> Optional[int]:
        """Largest t with v in m^t; None for the zero element."""
        degrees = [
            self.filt_degree[i] for i, c in enumerate(v) if not self.field.is_zero(c)
        ]
        return min(degrees) if degrees else None

    def format_element(self, v: Sequence[FieldScalar]) -> str:
        terms = {
            self.basis[i]: self.field.to_fraction(c)
            for i, c in enumerate(v)
            if not self.field.is_zero(c)
        }
        return PolynomialGrammar.format(terms)


def quotient_by_ideal(algebra: LocalAlgebra, ideal: Sequence[Sequence[FieldScalar]]) -> LocalAlgebra:
    """
    The quotient of ``algebra`` by the ideal spanned (as a vector space) by ``ideal``.

    Pivots are taken at the lowest filtration degree, and inside one degree at the basis
    elements listed last, so the surviving basis stays adapted to the filtration.
    """
    field = algebra.field
    order = sorted(range(algebra.length), key=lambda i: (algebra.filt_degree[i], -i))
    rows = [{i: c for i, c in enumerate(v) if not field.is_zero(c)} for v in ideal]
    reducer = SubspaceReducer(rows, algebra.length, field, order)
    if 0 in reducer.pivot_rows:
        raise MalformedInputError("the ideal contains a unit")

    kept = reducer.kept
    position = {c: pos for pos, c in enumerate(kept)}

    def reduce(v: Sequence[FieldScalar]) -> Vector:
        nf = reducer.normal_form({i: c for i, c in enumerate(v)})
        out = [field.zero] * len(kept)
        for c, value in nf.items():
            out[position[c]] = value
        return tuple(out)

    table: List[List[Vector]] = [[()] * len(kept) for _ in kept]
    for a, i in enumerate(kept):
        for b in range(a, len(kept)):
            product = reduce(algebra.mult_table[i][kept[b]])
            table[a][b] = product
            table[b][a] = product

    return LocalAlgebra(
        field=field,
        nvars=algebra.nvars,
        basis=tuple(algebra.basis[i] for i in kept),
        mult_table=tuple(tuple(row) for row in table),
        filt_degree=tuple(algebra.filt_degree[i] for i in kept),
        generators=tuple(reduce(g) for g in algebra.generators),
    )
