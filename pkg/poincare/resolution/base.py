import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Optional, Sequence, Tuple

from ..algebra import LocalAlgebra
from ..config import EngineOptions
from ..exactmath import (
    Echelon,
    SparseRow,
    Vector,
    complement_indices_sparse,
    kernel_from_echelon,
    row_reduce,
)
from ..exceptions import MalformedInputError, MinimalityError, ResourceLimitError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ModuleMap:
    """
    A differential d_p: A^source -> A^target as a target x source grid of algebra elements.

    The k-linear expansion indexes A^r by (component, basis element): coordinate j*L + s is
    basis element e_s in component j, L = length of the algebra.
    """

    algebra: LocalAlgebra
    entries: Tuple[Tuple[Vector, ...], ...]
    source: int
    target: int

    def __post_init__(self):
        if len(self.entries) != self.target or any(
            len(row) != self.source for row in self.entries
        ):
            raise MalformedInputError(
                f"a map A^{self.source} -> A^{self.target} needs a "
                f"{self.target}x{self.source} grid of entries"
            )

    @classmethod
    def from_columns(
        cls, algebra: LocalAlgebra, columns: Sequence[Sequence], target: int
    ) -> "ModuleMap":
        """Build the map whose j-th column is the element of A^target given as a flat k-vector."""
        length = algebra.length
        entries = tuple(
            tuple(tuple(column[i * length : (i + 1) * length]) for column in columns)
            for i in range(target)
        )
        return cls(algebra, entries, len(columns), target)

    @property
    def shape(self) -> Tuple[int, int]:
        length = self.algebra.length
        return (length * self.target, length * self.source)

    @cached_property
    def expansion(self) -> Dict[int, SparseRow]:
        """The k-linear matrix of the map as ``{row: {col: value}}``."""
        a = self.algebra
        length = a.length
        structure = a.structure_constants
        rows: Dict[int, SparseRow] = {}
        for i, row in enumerate(self.entries):
            for j, entry in enumerate(row):
                for r, coefficient in enumerate(entry):
                    if a.field.is_zero(coefficient):
                        continue
                    for s, t, c in structure[r]:
                        target_row = rows.setdefault(i * length + t, {})
                        col = j * length + s
                        target_row[col] = target_row.get(col, a.field.zero) + coefficient * c
        return {
            i: {j: v for j, v in row.items() if not a.field.is_zero(v)}
            for i, row in rows.items()
        }

    @cached_property
    def echelon(self) -> Echelon:
        return row_reduce(self.expansion, self.shape, self.algebra.field)

    @property
    def rank(self) -> int:
        return len(self.echelon.pivots)

    def apply(self, vector: SparseRow) -> SparseRow:
        zero = self.algebra.field.zero
        out: SparseRow = {}
        for i, row in self.expansion.items():
            acc = zero
            for j, v in row.items():
                x = vector.get(j)
                if x is not None:
                    acc += v * x
            if not self.algebra.field.is_zero(acc):
                out[i] = acc
        return out

    def is_minimal(self) -> bool:
        """Every entry lies in m, i.e. has zero unit coordinate."""
        return all(self.algebra.field.is_zero(e[0]) for row in self.entries for e in row)


@dataclass(frozen=True, eq=False)
class ResolutionState:
    """
    The first P differentials of the minimal free resolution of k over ``algebra``.

    ``kernel_dims[p]`` is dim_k ker d_p, with d_0 the augmentation A -> k (its kernel is m);
    it is compared with the rank of d_(p+1) when the next kernel is taken.
    """

    algebra: LocalAlgebra
    maps: Tuple[ModuleMap, ...] = ()
    betti: Tuple[int, ...] = (1,)
    kernel_dims: Tuple[int, ...] = ()
    options: EngineOptions = field(default_factory=EngineOptions.from_env)

    @property
    def steps(self) -> int:
        return len(self.betti) - 1


# ----------------------------------------------------------------------------------------------------------
# Steps


def multiply_by_basis(
    algebra: LocalAlgebra, r: int, vector: SparseRow
) -> SparseRow:
    """e_r * vector, componentwise on a flat element of A^b."""
    length = algebra.length
    zero = algebra.field.zero
    by_source = algebra.action_by_source[r]
    out: SparseRow = {}
    for index, value in vector.items():
        block, s = divmod(index, length)
        for t, c in by_source.get(s, ()):
            k = block * length + t
            out[k] = out.get(k, zero) + value * c
    return {k: v for k, v in out.items() if not algebra.field.is_zero(v)}


def first_differential(algebra: LocalAlgebra) -> ModuleMap:
    """d_1: A^emdim -> A, with the minimal generators of m as entries."""
    columns = [algebra.basis_vector(i) for i in algebra.linear_part]
    return ModuleMap(algebra, (tuple(columns),), len(columns), 1)


def _leading_key(algebra: LocalAlgebra, vector: SparseRow, index: int) -> Tuple[int, int]:
    leading = min(vector)
    return (algebra.filt_degree[leading % algebra.length], index)


def resolution_step(state: ResolutionState) -> ResolutionState:
    """
    Extend a partial minimal resolution by one differential.

    K = ker d_p is taken from the reduced k-expansion; the candidate kernel vectors are ordered by
    (filtration degree of their leading coordinate, index), and the greedy complement of mK
    among them gives the columns of d_(p+1).
    """
    a = state.algebra
    options = state.options
    if not state.maps:
        d1 = first_differential(a)
        logger.debug("d1 has %d columns", d1.source)
        return ResolutionState(a, (d1,), (1, d1.source), (a.length - 1,), options)

    last = state.maps[-1]
    rows, cols = last.shape
    if cols > options.column_budget:
        logger.warning(
            "step %d needs a %dx%d expansion, over the column budget %d; Betti numbers so far: %s",
            state.steps + 1,
            rows,
            cols,
            options.column_budget,
            list(state.betti),
        )
        raise ResourceLimitError(
            f"step {state.steps + 1} needs {cols} columns, budget is {options.column_budget}",
            state.betti,
        )

    ech = last.echelon
    if options.verify_exactness and state.kernel_dims:
        expected = state.kernel_dims[-1]
        if len(ech.pivots) != expected:
            raise MinimalityError(
                f"not exact at step {state.steps - 1}: rank of d_{state.steps} is "
                f"{len(ech.pivots)}, kernel of d_{state.steps - 1} has dimension {expected}"
            )

    kernel = [
        {i: v for i, v in enumerate(vector) if not a.field.is_zero(v)}
        for vector in kernel_from_echelon(ech, a.field)
    ]
    logger.debug(
        "step %d: %dx%d expansion of rank %d, kernel dimension %d",
        state.steps + 1,
        rows,
        cols,
        len(ech.pivots),
        len(kernel),
    )

    m_kernel = [
        product
        for vector in kernel
        for r in a.linear_part
        if (product := multiply_by_basis(a, r, vector))
    ]
    order = sorted(range(len(kernel)), key=lambda i: _leading_key(a, kernel[i], i))
    candidates = [kernel[i] for i in order]
    chosen = [
        candidates[i]
        for i in complement_indices_sparse(m_kernel, candidates, a.field, cols)
    ]

    length = a.length
    for j, vector in enumerate(chosen):
        for block in range(last.source):
            if block * length in vector:
                raise MinimalityError(
                    f"generator {j} of d_{state.steps + 1} has a unit coordinate in component {block}"
                )
        if options.verify_exactness and last.apply(vector):
            raise MinimalityError(f"d_{state.steps} does not annihilate generator {j}")

    flat_columns = []
    for vector in chosen:
        dense = [a.field.zero] * cols
        for i, v in vector.items():
            dense[i] = v
        flat_columns.append(dense)
    new_map = ModuleMap.from_columns(a, flat_columns, last.source)

    logger.debug("b_%d = %d", state.steps + 1, new_map.source)
    return ResolutionState(
        a,
        state.maps + (new_map,),
        state.betti + (new_map.source,),
        state.kernel_dims + (len(kernel),),
        options,
    )


def check_last_exactness(state: ResolutionState) -> Optional[bool]:
    """
    Compare rank d_P with dim ker d_(P-1) for the newest map.

    Returns None when the check was skipped because the expansion exceeds the column budget.
    """
    if not state.kernel_dims:
        return True
    last = state.maps[-1]
    if last.shape[1] > state.options.column_budget:
        logger.debug("skipping the final exactness check: %dx%d", *last.shape)
        return None
    return last.rank == state.kernel_dims[-1]
