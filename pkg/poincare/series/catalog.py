import logging
from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import List, Optional, Sequence

from ..exceptions import MalformedInputError
from .rational import RationalFunction, to_poly
from .transforms import compose_h1331_pipeline

logger = logging.getLogger(__name__)


class CatalogEntry(Enum):
    COMPLETE_INTERSECTION = "ci"
    CODIM3 = "codim3"
    CODIM4_FIRST = "codim4-i"
    CODIM4_SECOND = "codim4-ii"
    CODIM4_THIRD = "codim4-iii"
    STRETCHED = "stretched"
    H1331_PRINTED = "h1331-printed"
    H1331_PIPELINE = "h1331-pipeline"


class CaseTag(Enum):
    COMPLETE_INTERSECTION = "complete-intersection"
    CODIM3 = "codim-3"
    CODIM4 = "codim-4"
    STRETCHED = "stretched"
    ALMOST_STRETCHED = "almost-stretched"
    H1331 = "h1331"
    NOT_GORENSTEIN = "not-gorenstein"
    OTHER = "other"


@dataclass(frozen=True)
class FormulaParams:
    """
    Parameters of one catalog entry.

    ``epsilon`` is the minimal number of generators of I (for the pipeline entry: the count of
    the n = 3 core), ``p`` the codim-4 structure parameter, ``t`` the family index 1..6.
    """

    family: CatalogEntry
    n: int
    epsilon: Optional[int] = None
    p: Optional[int] = None
    t: Optional[int] = None

    def label(self) -> str:
        details = []
        if self.family is CatalogEntry.H1331_PRINTED:
            details.append("t<=3" if self.t is not None and self.t <= 3 else "t>=4")
        if self.epsilon is not None and self.family is not CatalogEntry.H1331_PRINTED:
            name = "eps0" if self.family is CatalogEntry.H1331_PIPELINE else "eps"
            details.append(f"{name}={self.epsilon}")
        if self.p is not None:
            details.append(f"p={self.p}")
        details.append(f"n={self.n}")
        return f"{self.family.value}({', '.join(details)})"


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise MalformedInputError(message)


def _codim3(epsilon: int) -> RationalFunction:
    return RationalFunction.of([1, 3, 3, 1], [1, 0, -epsilon, -epsilon, 0, 1])


def pipeline_base(epsilon: int) -> RationalFunction:
    """The catalog series of an n = 3 Gorenstein core with ``epsilon`` minimal generators."""
    _require(epsilon >= 3, f"epsilon of the core must be >= 3, got {epsilon}")
    if epsilon == 3:
        return RationalFunction.of([1], [1, -3, 3, -1])
    return _codim3(epsilon)


def catalog_formula(params: FormulaParams) -> RationalFunction:
    """The closed-form Poincare series of one catalog entry."""
    entry, n, eps = params.family, params.n, params.epsilon

    if entry is CatalogEntry.COMPLETE_INTERSECTION:
        _require(n >= 1, f"complete intersections need n >= 1, got {n}")
        return RationalFunction.from_polys(to_poly([1]), to_poly([1, -1]) ** n)

    if entry is CatalogEntry.CODIM3:
        _require(n == 3, f"the codimension-3 formula needs n = 3, got {n}")
        _require(eps is not None and eps >= 3, f"epsilon must be >= 3, got {eps}")
        return _codim3(eps)

    if entry in (
        CatalogEntry.CODIM4_FIRST,
        CatalogEntry.CODIM4_SECOND,
        CatalogEntry.CODIM4_THIRD,
    ):
        _require(n == 4, f"the codimension-4 formulas need n = 4, got {n}")
        _require(eps is not None and eps >= 4, f"epsilon must be >= 4, got {eps}")
        if entry is CatalogEntry.CODIM4_FIRST:
            f_A = [1, 0, -eps, -(2 * eps - 2), -eps, 0, 1]
        elif entry is CatalogEntry.CODIM4_SECOND:
            f_A = [1, 0, -eps, -(2 * eps - 5), -(eps - 6), 2, -1, -1]
        else:
            p = params.p
            _require(
                p is not None and 1 <= p <= eps, f"p must lie in 1..{eps}, got {p}"
            )
            f_A = [1, 0, -eps, -(2 * eps - 2 - p), -(eps - 1 - 2 * p), p + 1, 0, -1]
        return RationalFunction.of([1, 4, 6, 4, 1], f_A)

    if entry is CatalogEntry.STRETCHED:
        _require(n >= 2, f"the stretched formula needs n >= 2, got {n}")
        return RationalFunction.of([1], [1, -n, 1])

    if entry is CatalogEntry.H1331_PRINTED:
        _require(n >= 3, f"H = (1, n, 3, 1) needs n >= 3, got {n}")
        t = params.t
        _require(t is not None and 1 <= t <= 6, f"t must lie in 1..6, got {t}")
        if t <= 3:
            return RationalFunction.of([1], [1, -n, 3, -1])
        printed_eps = comb(n, 2) + 1
        return RationalFunction.of(
            [1, 3, 3, 1], [1, -(n - 3), -printed_eps, -printed_eps, 0, 1]
        )

    if entry is CatalogEntry.H1331_PIPELINE:
        _require(n >= 3, f"H = (1, n, 3, 1) needs n >= 3, got {n}")
        _require(eps is not None and eps >= 3, f"epsilon of the core must be >= 3, got {eps}")
        return compose_h1331_pipeline(pipeline_base(eps), n)

    raise NotImplementedError(f"catalog entry {entry} is not supported")


# ----------------------------------------------------------------------------------------------------------
# Case analysis


def _is_stretched(hilbert: Sequence[int]) -> bool:
    return len(hilbert) >= 3 and all(h == 1 for h in hilbert[2:])


def _is_almost_stretched(hilbert: Sequence[int]) -> bool:
    return len(hilbert) >= 4 and hilbert[2] == 2 and all(h == 1 for h in hilbert[3:])


def is_h1331(hilbert: Sequence[int]) -> bool:
    return len(hilbert) == 4 and hilbert[0] == 1 and tuple(hilbert[2:]) == (3, 1)


def classify_case(hilbert: Sequence[int], epsilon: int, gorenstein: bool) -> CaseTag:
    """
    Which closed formula the reduction theory predicts for a Gorenstein algebra.

    Checked in order: complete intersection (epsilon = n), embedding dimension 3, embedding
    dimension 4, then the Hilbert function shapes (1,n,1,...,1), (1,n,2,1,...,1), (1,n,3,1).
    """
    if not gorenstein:
        return CaseTag.NOT_GORENSTEIN
    n = hilbert[1] if len(hilbert) > 1 else 0
    if epsilon == n:
        return CaseTag.COMPLETE_INTERSECTION
    if n == 3:
        return CaseTag.CODIM3
    if n == 4:
        return CaseTag.CODIM4
    if _is_stretched(hilbert):
        return CaseTag.STRETCHED
    if _is_almost_stretched(hilbert):
        return CaseTag.ALMOST_STRETCHED
    if is_h1331(hilbert):
        return CaseTag.H1331
    return CaseTag.OTHER


@dataclass(frozen=True)
class Candidate:
    label: str
    params: FormulaParams
    formula: RationalFunction


def infer_core_epsilon(n: int, b2: int) -> int:
    """
    epsilon of the n = 3 core implied by b_2 under the pipeline form.

    The pipeline series has b_2 = n^2 - 6 + eps0.
    """
    return b2 - n * n + 6


def catalog_candidates(
    hilbert: Sequence[int],
    epsilon: int,
    n: Optional[int] = None,
    base_epsilon: Optional[int] = None,
    b2: Optional[int] = None,
    core_series: Optional[RationalFunction] = None,
) -> List[Candidate]:
    """
    Every catalog entry whose parameters are fixed by (H, epsilon).

    For H = (1, n, 3, 1) both printed forms and the pipeline form are returned; the core's
    epsilon for the pipeline comes from ``base_epsilon`` or, failing that, from ``b2``.
    When ``core_series`` is given (the series measured on the n = 3 core) the pipeline is
    applied to it instead of to the catalog series of the core.
    """
    if n is None:
        n = hilbert[1] if len(hilbert) > 1 else 0
    params: List[FormulaParams] = []
    if n >= 1:
        params.append(FormulaParams(CatalogEntry.COMPLETE_INTERSECTION, n))
    if n == 3 and epsilon >= 3:
        params.append(FormulaParams(CatalogEntry.CODIM3, 3, epsilon))
    if n == 4 and epsilon >= 4:
        params.append(FormulaParams(CatalogEntry.CODIM4_FIRST, 4, epsilon))
        params.append(FormulaParams(CatalogEntry.CODIM4_SECOND, 4, epsilon))
        params.extend(
            FormulaParams(CatalogEntry.CODIM4_THIRD, 4, epsilon, p=p)
            for p in range(1, epsilon + 1)
        )
    if n >= 2 and (_is_stretched(hilbert) or _is_almost_stretched(hilbert)):
        params.append(FormulaParams(CatalogEntry.STRETCHED, n))
    if n >= 3 and is_h1331(hilbert):
        params.append(FormulaParams(CatalogEntry.H1331_PRINTED, n, t=1))
        params.append(FormulaParams(CatalogEntry.H1331_PRINTED, n, t=4))
        core = base_epsilon
        if core is None and b2 is not None:
            core = infer_core_epsilon(n, b2)
        if core is not None and core >= 3:
            params.append(FormulaParams(CatalogEntry.H1331_PIPELINE, n, core))

    candidates = []
    for p in params:
        if p.family is CatalogEntry.H1331_PIPELINE and core_series is not None:
            formula = compose_h1331_pipeline(core_series, n)
        else:
            formula = catalog_formula(p)
        candidates.append(Candidate(p.label(), p, formula))
    logger.debug("%d catalog candidates for H=%s, eps=%d", len(candidates), hilbert, epsilon)
    return candidates
