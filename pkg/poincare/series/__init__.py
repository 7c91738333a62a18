from .catalog import (
    CaseTag,
    Candidate,
    CatalogEntry,
    FormulaParams,
    catalog_candidates,
    catalog_formula,
    classify_case,
    infer_core_epsilon,
    is_h1331,
    pipeline_base,
)
from .rational import (
    RationalFunction,
    TruncatedSeries,
    expand_rational,
    fit_rational,
    parse_coefficients,
)
from .transforms import (
    SocleDirection,
    TateKind,
    compose_h1331_pipeline,
    transform_golod_socle_vars,
    transform_socle,
    transform_tate,
    transform_tate_chain,
)

__all__ = [
    "Candidate",
    "CaseTag",
    "CatalogEntry",
    "FormulaParams",
    "RationalFunction",
    "SocleDirection",
    "TateKind",
    "TruncatedSeries",
    "catalog_candidates",
    "catalog_formula",
    "classify_case",
    "compose_h1331_pipeline",
    "expand_rational",
    "fit_rational",
    "infer_core_epsilon",
    "is_h1331",
    "parse_coefficients",
    "pipeline_base",
    "transform_golod_socle_vars",
    "transform_socle",
    "transform_tate",
    "transform_tate_chain",
]
