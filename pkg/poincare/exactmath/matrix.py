import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from ..exceptions import MalformedInputError
from .fields import Field, FieldScalar

logger = logging.getLogger(__name__)

Vector = Tuple[FieldScalar, ...]
SparseRow = Dict[int, FieldScalar]


@dataclass(frozen=True)
class DenseMatrix:
    """Row-major exact matrix; every entry is an element of ``field``."""

    rows: int
    cols: int
    entries: Tuple[FieldScalar, ...]
    field: Field

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise MalformedInputError(f"invalid shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise MalformedInputError(
                f"a {self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )
        domain = self.field.domain
        for tp in {type(e) for e in self.entries}:
            sample = next(e for e in self.entries if type(e) is tp)
            if domain.of_type(sample):
                continue
            other = Field.of_element(sample)
            if other is not None:
                check_same_field(self.field, other)
            raise MalformedInputError(
                f"matrix entries must be elements of {self.field.name}, got {tp.__name__}"
            )

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence], field: Field, cols: Optional[int] = None
    ) -> "DenseMatrix":
        """
        Build a matrix from nested sequences, converting every entry into ``field``.

        Args:
            rows: Row-major entries (ints, Fractions or elements of ``field``).
            field: Coefficient field; elements of any other field are rejected.
            cols: Column count; only needed when ``rows`` is empty.

        Returns:
            The matrix.
        """
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        entries: List[FieldScalar] = []
        for r in rows:
            if len(r) != width:
                raise MalformedInputError(
                    f"ragged matrix: expected rows of length {width}, got {len(r)}"
                )
            entries.extend(field.convert(v) for v in r)
        return cls(len(rows), width, tuple(entries), field)

    @classmethod
    def from_columns(
        cls, columns: Sequence[Sequence], field: Field, rows: Optional[int] = None
    ) -> "DenseMatrix":
        height = rows if rows is not None else (len(columns[0]) if columns else 0)
        return cls.from_rows(
            [[column[i] for column in columns] for i in range(height)],
            field,
            cols=len(columns),
        )

    @classmethod
    def identity(cls, size: int, field: Field) -> "DenseMatrix":
        return cls.from_rows(
            [[1 if i == j else 0 for j in range(size)] for i in range(size)], field, size
        )

    def entry(self, i: int, j: int) -> FieldScalar:
        return self.entries[i * self.cols + j]

    def apply(self, vector: Sequence[FieldScalar]) -> Vector:
        """Matrix-vector product ``self @ vector``."""
        if len(vector) != self.cols:
            raise MalformedInputError(
                f"cannot apply a {self.rows}x{self.cols} matrix to a vector of length {len(vector)}"
            )
        support = [(j, v) for j, v in enumerate(vector) if not self.field.is_zero(v)]
        zero = self.field.zero
        result = []
        for i in range(self.rows):
            base = i * self.cols
            acc = zero
            for j, v in support:
                acc += self.entries[base + j] * v
            result.append(acc)
        return tuple(result)

    def sparse_rows(self) -> Dict[int, SparseRow]:
        out: Dict[int, SparseRow] = {}
        is_zero = self.field.is_zero
        for i in range(self.rows):
            base = i * self.cols
            row = {
                j: self.entries[base + j]
                for j in range(self.cols)
                if not is_zero(self.entries[base + j])
            }
            if row:
                out[i] = row
        return out


# ----------------------------------------------------------------------------------------------------------
# Elimination


@dataclass(frozen=True)
class Echelon:
    """Reduced row echelon form: pivot columns and the normalized pivot rows (pivot entry 1)."""

    pivots: Tuple[int, ...]
    rows: Tuple[SparseRow, ...]
    cols: int


def row_reduce(
    sparse: Mapping[int, Mapping[int, FieldScalar]], shape: Tuple[int, int], field: Field
) -> Echelon:
    """
    Reduce a matrix given as ``{row: {col: value}}`` with leftmost pivoting.

    Over Q the matrix is scaled to integers and reduced fraction-free, so intermediate
    entries stay bounded by minors; over F_p plain Gauss-Jordan is used. The reduced
    row echelon form is unique, so the result does not depend on the elimination strategy.
    """
    nrows, ncols = shape
    if nrows == 0 or ncols == 0 or not any(sparse.values()):
        return Echelon((), (), ncols)

    dod = {i: dict(row) for i, row in sparse.items() if row}
    matrix = DomainMatrix(dod, shape, field.domain)
    logger.debug("row reducing %dx%d matrix over %s", nrows, ncols, field.name)

    if field.characteristic == 0:
        _, integral = matrix.clear_denoms(convert=True)
        reduced, den, pivots = integral.rref_den()
        den_q = field.from_integer_ring(den)
        raw_rows = reduced.to_sparse().rep
        rows = tuple(
            {j: field.from_integer_ring(v) / den_q for j, v in raw_rows.get(i, {}).items()}
            for i in range(len(pivots))
        )
    else:
        reduced, pivots = matrix.rref()
        raw_rows = reduced.to_sparse().rep
        rows = tuple(dict(raw_rows.get(i, {})) for i in range(len(pivots)))

    return Echelon(tuple(pivots), rows, ncols)


def echelon(m: DenseMatrix) -> Echelon:
    return row_reduce(m.sparse_rows(), (m.rows, m.cols), m.field)


def rank(m: DenseMatrix) -> int:
    return len(echelon(m).pivots)


def nullspace_basis(m: DenseMatrix) -> List[Vector]:
    """
    Basis of the right kernel of ``m``.

    One vector per free column, in increasing column order; the vector for free column f
    has coordinate 1 at f and 0 at every other free column.
    """
    return kernel_from_echelon(echelon(m), m.field)


def kernel_from_echelon(ech: Echelon, field: Field) -> List[Vector]:
    pivot_set = set(ech.pivots)
    by_column: Dict[int, List[Tuple[int, FieldScalar]]] = {}
    for row, c in zip(ech.rows, ech.pivots):
        for j, value in row.items():
            if j != c and not field.is_zero(value):
                by_column.setdefault(j, []).append((c, value))

    zero, one = field.zero, field.one
    basis: List[Vector] = []
    for f in range(ech.cols):
        if f in pivot_set:
            continue
        v = [zero] * ech.cols
        v[f] = one
        for c, value in by_column.get(f, ()):
            v[c] = -value
        basis.append(tuple(v))
    return basis


def solve_linear(m: DenseMatrix, rhs: Sequence) -> Optional[Vector]:
    """
    Solve ``m @ x = rhs``.

    Returns:
        A solution with every free variable set to 0, or None if the system is inconsistent.
    """
    if len(rhs) != m.rows:
        raise MalformedInputError(
            f"right-hand side has length {len(rhs)}, matrix has {m.rows} rows"
        )
    rhs_values = [m.field.convert(v) for v in rhs]
    augmented = m.sparse_rows()
    for i, value in enumerate(rhs_values):
        if not m.field.is_zero(value):
            augmented.setdefault(i, {})[m.cols] = value
    ech = row_reduce(augmented, (m.rows, m.cols + 1), m.field)
    if ech.pivots and ech.pivots[-1] == m.cols:
        return None
    x = [m.field.zero] * m.cols
    for row, c in zip(ech.rows, ech.pivots):
        x[c] = row.get(m.cols, m.field.zero)
    return tuple(x)


def complement_indices(
    span: Iterable[Sequence[FieldScalar]],
    candidates: Sequence[Sequence[FieldScalar]],
    field: Field,
    length: int,
) -> List[int]:
    """
    Greedily pick candidates that extend ``span``.

    The vectors of ``span`` followed by ``candidates`` become the columns of one matrix; the
    pivot columns that fall among the candidates are exactly the candidates not in the span of
    ``span`` and the earlier candidates. Their indices (into ``candidates``) are returned.
    """
    def to_sparse(vector: Sequence[FieldScalar]) -> SparseRow:
        if len(vector) != length:
            raise MalformedInputError(
                f"vector of length {len(vector)} where {length} was expected"
            )
        return {i: v for i, v in enumerate(vector) if not field.is_zero(v)}

    return complement_indices_sparse(
        [to_sparse(v) for v in span], [to_sparse(v) for v in candidates], field, length
    )


def complement_indices_sparse(
    span: Sequence[Mapping[int, FieldScalar]],
    candidates: Sequence[Mapping[int, FieldScalar]],
    field: Field,
    length: int,
) -> List[int]:
    """:func:`complement_indices` for vectors given as ``{coordinate: value}``."""
    sparse: Dict[int, SparseRow] = {}
    for j, column in enumerate(list(span) + list(candidates)):
        for i, value in column.items():
            if not field.is_zero(value):
                sparse.setdefault(i, {})[j] = value
    offset = len(span)
    ech = row_reduce(sparse, (length, offset + len(candidates)), field)
    return [c - offset for c in ech.pivots if c >= offset]


def span_rank(vectors: Sequence[Sequence[FieldScalar]], field: Field, length: int) -> int:
    sparse: Dict[int, SparseRow] = {}
    for i, vector in enumerate(vectors):
        row = {j: v for j, v in enumerate(vector) if not field.is_zero(v)}
        if row:
            sparse[i] = row
    return len(row_reduce(sparse, (len(vectors), length), field).pivots)


def check_same_field(*fields: Field) -> Field:
    first = fields[0]
    for other in fields[1:]:
        if other != first:
            raise MalformedInputError(
                f"mixed field tags: {first.name} and {other.name}"
            )
    return first
