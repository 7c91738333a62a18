from .fields import Field, FieldScalar
from .matrix import (
    DenseMatrix,
    Echelon,
    SparseRow,
    Vector,
    check_same_field,
    complement_indices,
    complement_indices_sparse,
    echelon,
    kernel_from_echelon,
    nullspace_basis,
    rank,
    row_reduce,
    solve_linear,
    span_rank,
)

__all__ = [
    "DenseMatrix",
    "Echelon",
    "Field",
    "FieldScalar",
    "SparseRow",
    "Vector",
    "check_same_field",
    "complement_indices",
    "complement_indices_sparse",
    "echelon",
    "kernel_from_echelon",
    "nullspace_basis",
    "rank",
    "row_reduce",
    "solve_linear",
    "span_rank",
]
