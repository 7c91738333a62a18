from .main import CommandRunner, _main, build_parser, main
from .verify import (
    CandidateVerdict,
    VerificationReport,
    core_series,
    pade_degrees,
    verify_family,
    verify_presentation,
)

__all__ = [
    "CandidateVerdict",
    "CommandRunner",
    "VerificationReport",
    "_main",
    "build_parser",
    "core_series",
    "main",
    "pade_degrees",
    "verify_family",
    "verify_presentation",
]
