import logging
from dataclasses import dataclass, field
from math import comb
from typing import Any, Dict, List, Optional, Tuple

from ..algebra import (
    IdealPresentation,
    algebra_invariants,
    build_quotient_algebra,
    minimal_generator_count,
    quotient_by_socle,
    socle_linear_part,
)
from ..config import EngineOptions
from ..exactmath import Field
from ..exceptions import ConsistencyError, MalformedInputError
from ..families import FamilySpec, FamilyTag, family_ideal
from ..resolution import betti_numbers
from ..series import (
    CatalogEntry,
    FormulaParams,
    RationalFunction,
    TruncatedSeries,
    catalog_candidates,
    classify_case,
    compose_h1331_pipeline,
    expand_rational,
    fit_rational,
    infer_core_epsilon,
    is_h1331,
    pipeline_base,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CandidateVerdict:
    label: str
    params: FormulaParams
    formula: RationalFunction
    expansion: TruncatedSeries
    first_divergence: Optional[int]

    @property
    def match(self) -> bool:
        return self.first_divergence is None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "formula": self.formula.to_dict(),
            "expansion": self.expansion.to_list(),
            "match": self.match,
            "first_divergence": (
                None if self.first_divergence is None else str(self.first_divergence)
            ),
        }


@dataclass
class VerificationReport:
    """
    Computed Betti prefix against every catalog formula its invariants admit.

    ``epsilon`` is the minimal number of generators of I, ``epsilon_from_b2`` the same number
    read off b_2 - C(n, 2). ``core_betti`` is the prefix of the n = 3 core the pipeline form
    was derived from. ``fit`` is a Pade fit of the prefix, shown for reference only:
    it always reproduces the prefix it was fitted to.
    """

    field_name: str
    hilbert: List[int]
    betti: List[int]
    epsilon: int
    epsilon_from_b2: Optional[int] = None
    core_epsilon: Optional[int] = None
    core_epsilon_from_b2: Optional[int] = None
    core_betti: Optional[List[int]] = None
    case: str = ""
    socle_variables: Optional[int] = None
    verdicts: List[CandidateVerdict] = field(default_factory=list)
    adjudication: List[str] = field(default_factory=list)
    findings: List[str] = field(default_factory=list)
    fit: Optional[RationalFunction] = None

    @property
    def matched(self) -> List[str]:
        return [v.label for v in self.verdicts if v.match]

    @property
    def success(self) -> bool:
        return bool(self.matched)

    def to_dict(self) -> Dict[str, Any]:
        def text(value: Optional[int]) -> Optional[str]:
            return None if value is None else str(value)

        return {
            "field": self.field_name,
            "hilbert": [str(h) for h in self.hilbert],
            "betti": [str(b) for b in self.betti],
            "epsilon": str(self.epsilon),
            "epsilon_from_b2": text(self.epsilon_from_b2),
            "core_epsilon": text(self.core_epsilon),
            "core_epsilon_from_b2": text(self.core_epsilon_from_b2),
            "core_betti": (
                None if self.core_betti is None else [str(b) for b in self.core_betti]
            ),
            "case": self.case,
            "socle_variables": text(self.socle_variables),
            "candidates": [v.to_dict() for v in self.verdicts],
            "matched": self.matched,
            "adjudication": self.adjudication,
            "findings": self.findings,
            "fit": None if self.fit is None else self.fit.to_dict(),
        }


def pade_degrees(order: int) -> Optional[Tuple[int, int]]:
    """Numerator and denominator bounds a, b with a + b + 1 = order, b >= a."""
    if order < 1:
        return None
    a = (order - 1) // 2
    return a, order - 1 - a


def _adjudicate(
    verdicts: List[CandidateVerdict], betti: List[int], family_index: Optional[int]
) -> List[str]:
    """Where a printed form and the pipeline form disagree, say which one the resolution confirms."""
    pipeline = [v for v in verdicts if v.params.family is CatalogEntry.H1331_PIPELINE]
    printed = [v for v in verdicts if v.params.family is CatalogEntry.H1331_PRINTED]
    if family_index is not None:
        printed = [v for v in printed if (v.params.t <= 3) == (family_index <= 3)]
    notes = []
    for derived in pipeline:
        for stated in printed:
            k = stated.expansion.first_divergence(derived.expansion.coefficients)
            if k is None:
                continue
            if stated.match:
                winner = stated.label
            elif derived.match:
                winner = derived.label
            else:
                winner = "neither"
            notes.append(
                f"b_{k}: {stated.label} gives {stated.expansion[k]}, {derived.label} gives "
                f"{derived.expansion[k]}, the resolution gives {betti[k]}; confirmed: {winner}"
            )
    for note in notes:
        logger.warning("printed and derived formulas disagree: %s", note)
    return notes


def core_series(
    core_betti: List[int], base_epsilon: int, findings: List[str]
) -> Optional[RationalFunction]:
    """
    The Poincare series of the n = 3 core, as confirmed by its own Betti numbers.

    The catalog series for ``base_epsilon`` is used when its expansion reproduces
    ``core_betti``; otherwise a Pade fit of ``core_betti``. None (with a finding) when neither
    works or the result is not of the form (1+z)^3/D0.
    """
    prefix = TruncatedSeries(tuple(core_betti))
    base = pipeline_base(base_epsilon)
    k = prefix.first_divergence(expand_rational(base, prefix.order).coefficients)
    if k is None:
        return base

    findings.append(
        f"the n = 3 core resolves to {core_betti}, {base} gives "
        f"{expand_rational(base, k)[k]} at b_{k}"
    )
    degrees = pade_degrees(prefix.order)
    fitted = fit_rational(prefix, *degrees) if degrees is not None else None
    if fitted is None:
        findings.append(f"no rational function fits the core prefix {core_betti}")
        return None
    try:
        compose_h1331_pipeline(fitted, 3)
    except (MalformedInputError, ConsistencyError) as e:
        findings.append(f"the fitted core series {fitted} admits no pipeline: {e}")
        return None
    return fitted


def verify_presentation(
    p: IdealPresentation,
    max_step: int,
    options: Optional[EngineOptions] = None,
    base_epsilon: Optional[int] = None,
    family_index: Optional[int] = None,
    core: Optional[IdealPresentation] = None,
) -> VerificationReport:
    """
    Resolve k over A = k[x]/I to ``max_step`` and compare with the formula catalog.

    ``base_epsilon`` is the minimal generator count of the n = 3 core used by the pipeline
    form; without it the count implied by b_2 is used. When the ``core`` presentation is
    given it is resolved to the same step and the pipeline is applied to the series its
    Betti numbers confirm (see :func:`core_series`).
    """
    if max_step < 2:
        raise MalformedInputError(f"verification needs max step >= 2, got {max_step}")
    options = options or EngineOptions.from_env()

    a = build_quotient_algebra(p)
    invariants = algebra_invariants(a)
    n = invariants.emdim
    betti = betti_numbers(a, max_step, options)

    epsilon = minimal_generator_count(p)
    epsilon_from_b2 = betti[2] - comb(n, 2)
    if epsilon_from_b2 != epsilon:
        raise ConsistencyError(
            f"I has {epsilon} minimal generators but b_2 - C({n}, 2) = {epsilon_from_b2}"
        )

    report = VerificationReport(
        field_name=a.field.name,
        hilbert=list(invariants.hilbert),
        betti=betti,
        epsilon=epsilon,
        epsilon_from_b2=epsilon_from_b2,
        case=classify_case(invariants.hilbert, epsilon, invariants.gorenstein).value,
    )

    measured_core: Optional[RationalFunction] = None
    pipeline_b2: Optional[int] = betti[2]
    if is_h1331(invariants.hilbert):
        report.core_epsilon = base_epsilon
        report.core_epsilon_from_b2 = infer_core_epsilon(n, betti[2])
        if base_epsilon is not None and base_epsilon != report.core_epsilon_from_b2:
            report.findings.append(
                f"the n = 3 core has {base_epsilon} minimal generators, "
                f"b_2 implies {report.core_epsilon_from_b2}"
            )
        if invariants.gorenstein:
            report.socle_variables = socle_linear_part(quotient_by_socle(a))
        if core is not None and base_epsilon is not None:
            if core == p:
                report.core_betti = list(betti)
            else:
                report.core_betti = betti_numbers(
                    build_quotient_algebra(core), max_step, options
                )
            measured_core = core_series(report.core_betti, base_epsilon, report.findings)
            if measured_core is None:
                base_epsilon, pipeline_b2 = None, None

    prefix = TruncatedSeries(tuple(betti))
    for candidate in catalog_candidates(
        invariants.hilbert,
        epsilon,
        n=n,
        base_epsilon=base_epsilon,
        b2=pipeline_b2,
        core_series=measured_core,
    ):
        expansion = expand_rational(candidate.formula, max_step)
        report.verdicts.append(
            CandidateVerdict(
                candidate.label,
                candidate.params,
                candidate.formula,
                expansion,
                prefix.first_divergence(expansion.coefficients),
            )
        )
    report.adjudication = _adjudicate(report.verdicts, betti, family_index)

    degrees = pade_degrees(max_step)
    if degrees is not None:
        report.fit = fit_rational(prefix, *degrees)

    if a.field.characteristic != 0 and max_step >= 3:
        reference = betti_numbers(
            build_quotient_algebra(p.with_characteristic(0)), 3, options
        )
        if reference != betti[:4]:
            finding = f"b_0..b_3 over Q are {reference}, over {a.field.name} {betti[:4]}"
            logger.warning("characteristic dependence: %s", finding)
            report.findings.append(finding)

    if report.success:
        logger.info("Betti prefix %s matches %s", betti, ", ".join(report.matched))
    else:
        logger.info("Betti prefix %s matches no catalog formula", betti)
    return report


def verify_family(
    tag: FamilyTag,
    n: int,
    max_step: int,
    field: Optional[Field] = None,
    options: Optional[EngineOptions] = None,
    **params: Any,
) -> VerificationReport:
    """
    :func:`verify_presentation` for a family ideal.

    For the H = (1, n, 3, 1) families the pipeline form uses the same family at n = 3 as
    its core.
    """
    tag = FamilyTag(tag)
    characteristic = field.characteristic if field is not None else 0
    spec = FamilySpec(tag, n, characteristic=characteristic, **params)
    presentation = family_ideal(spec)

    base_epsilon = None
    core = None
    if tag.is_h1331:
        core = family_ideal(FamilySpec(tag, 3, characteristic=characteristic, **params))
        base_epsilon = minimal_generator_count(core)
        logger.debug("%s at n=3 has %d minimal generators", tag.value, base_epsilon)

    return verify_presentation(
        presentation,
        max_step,
        options,
        base_epsilon=base_epsilon,
        family_index=tag.index,
        core=core,
    )
