import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, ClassVar, Dict, List, Optional, Sequence, Tuple

from ..algebra import (
    IdealPresentation,
    algebra_invariants,
    build_quotient_algebra,
    load_presentation,
    minimal_generators,
)
from ..config import EngineOptions
from ..exactmath import Field
from ..exceptions import MalformedInputError, PoincareError, ResourceLimitError
from ..families import FamilySpec, FamilyTag, family_ideal
from ..netconics import net_classification
from ..resolution import BettiResult, betti_numbers
from ..series import (
    RationalFunction,
    TruncatedSeries,
    expand_rational,
    fit_rational,
    parse_coefficients,
)
from .verify import verify_family, verify_presentation

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT_ERROR = 2


def _exponents(text: str) -> Tuple[int, ...]:
    return tuple(parse_coefficients(text))


def _family_params(args: argparse.Namespace) -> Dict[str, Any]:
    params: Dict[str, Any] = {}
    if args.alpha is not None:
        params["alpha"] = args.alpha
    if args.p is not None:
        params["p"] = args.p
    if args.exponents is not None:
        params["exponents"] = _exponents(args.exponents)
    if args.socle_degree is not None:
        params["socle_degree"] = args.socle_degree
    return params


class CommandRunner:
    """
    Executes one parsed command line; every handler returns (exit status, JSON document).

    The document is written to ``--output`` or standard output; diagnostics go through logging
    on standard error.
    """

    handlers: ClassVar[Dict[str, str]] = {
        "family": "run_family",
        "invariants": "run_invariants",
        "betti": "run_betti",
        "fit": "run_fit",
        "verify": "run_verify",
        "netclass": "run_netclass",
        "series": "run_series",
    }

    def __init__(self, args: argparse.Namespace, options: EngineOptions):
        self.args = args
        self.options = options

    def run(self) -> Tuple[int, Any]:
        handler: Callable[[], Tuple[int, Any]] = getattr(
            self, self.handlers[self.args.command]
        )
        return handler()

    # ----------------------------------------------------------------------------------------------------------

    def _field(self) -> Optional[Field]:
        selector = getattr(self.args, "field", None)
        return Field.parse(selector) if selector else None

    def _presentation(self) -> IdealPresentation:
        p = load_presentation(self.args.file)
        field = self._field()
        if field is not None and field.characteristic != p.characteristic:
            logger.debug("using %s instead of the presentation's field", field.name)
            p = p.with_characteristic(field.characteristic)
        return p

    def run_family(self) -> Tuple[int, Any]:
        field = self._field()
        spec = FamilySpec(
            FamilyTag(self.args.name),
            self.args.n,
            characteristic=field.characteristic if field else 0,
            **_family_params(self.args),
        )
        return EXIT_OK, family_ideal(spec).to_dict()

    def run_invariants(self) -> Tuple[int, Any]:
        p = self._presentation()
        inv = algebra_invariants(build_quotient_algebra(p))
        return EXIT_OK, {
            "length": str(inv.length),
            "hilbert": [str(h) for h in inv.hilbert],
            "emdim": str(inv.emdim),
            "level": str(inv.level),
            "gorenstein": inv.gorenstein,
            "socle": str(inv.socle_dimension),
            "multiplicity": str(inv.multiplicity),
            "samuel": [str(s) for s in inv.samuel],
            "minimal_generators": minimal_generators(p),
        }

    def _betti(self, p: IdealPresentation) -> List[int]:
        return betti_numbers(build_quotient_algebra(p), self.args.max_step, self.options)

    def run_betti(self) -> Tuple[int, Any]:
        p = self._presentation()
        return EXIT_OK, BettiResult(p.field.name, tuple(self._betti(p))).to_dict()

    def run_fit(self) -> Tuple[int, Any]:
        p = self._presentation()
        betti = self._betti(p)
        fitted = fit_rational(
            TruncatedSeries(tuple(betti)), self.args.num_deg, self.args.den_deg
        )
        if fitted is None:
            logger.warning(
                "no rational function with degrees (%d, %d) reproduces %s",
                self.args.num_deg,
                self.args.den_deg,
                betti,
            )
        return EXIT_OK, {
            "field": p.field.name,
            "betti": [str(b) for b in betti],
            "fit": None if fitted is None else fitted.to_dict(),
        }

    def run_verify(self) -> Tuple[int, Any]:
        if self.args.family is not None and self.args.file is not None:
            raise MalformedInputError("verify takes a FILE or --family, not both")
        if self.args.family is not None:
            if self.args.n is None:
                raise MalformedInputError("--family needs --n")
            report = verify_family(
                FamilyTag(self.args.family),
                self.args.n,
                self.args.max_step,
                self._field(),
                self.options,
                **_family_params(self.args),
            )
        elif self.args.file is not None:
            report = verify_presentation(
                self._presentation(), self.args.max_step, self.options
            )
        else:
            raise MalformedInputError("verify needs a FILE or --family")
        return (EXIT_OK if report.success else EXIT_MISMATCH), report.to_dict()

    def run_netclass(self) -> Tuple[int, Any]:
        algebra = build_quotient_algebra(self._presentation())
        result = net_classification(algebra, seed=self.args.seed, options=self.options)
        return EXIT_OK, result.to_dict()

    def run_series(self) -> Tuple[int, Any]:
        f = RationalFunction.of(
            parse_coefficients(self.args.num), parse_coefficients(self.args.den)
        )
        expansion = expand_rational(f, self.args.order)
        return EXIT_OK, {"function": f.to_dict(), "coefficients": expansion.to_list()}


# ----------------------------------------------------------------------------------------------------------
# Parser


def _add_field(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--field",
        default=None,
        help="coefficient field: Q or p:PRIME (default: from the input)",
    )


def _add_family_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", type=int, default=None, help="the constant of I1")
    parser.add_argument(
        "--p", type=int, choices=(0, 1), default=None, help="I2 is p=1, I3 is p=0"
    )
    parser.add_argument("--exponents", default=None, help="CI exponents, comma separated")
    parser.add_argument(
        "--socle-degree", type=int, default=None, help="stretched socle degree"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poincare",
        description="Exact Betti numbers and Poincare series of local Artinian algebras.",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="log debug details")
    verbosity.add_argument(
        "--quiet", action="store_true", help="log warnings and errors only"
    )
    parser.add_argument("--output", type=Path, default=None, help="write JSON here")

    commands = parser.add_subparsers(dest="command", required=True)

    family = commands.add_parser("family", help="emit the presentation of a family")
    family.add_argument("--name", required=True, choices=[t.value for t in FamilyTag])
    family.add_argument("--n", type=int, required=True)
    _add_family_params(family)
    _add_field(family)

    invariants = commands.add_parser("invariants", help="length, Hilbert function, socle")
    invariants.add_argument("file", type=Path)

    betti = commands.add_parser("betti", help="Betti numbers of the residue field")
    betti.add_argument("file", type=Path)
    betti.add_argument("--max-step", type=int, required=True)
    _add_field(betti)

    fit = commands.add_parser("fit", help="fit a rational function to the Betti numbers")
    fit.add_argument("file", type=Path)
    fit.add_argument("--max-step", type=int, required=True)
    fit.add_argument("--num-deg", type=int, required=True)
    fit.add_argument("--den-deg", type=int, required=True)
    _add_field(fit)

    verify = commands.add_parser(
        "verify", help="compare Betti numbers with the formula catalog"
    )
    verify.add_argument("file", type=Path, nargs="?", default=None)
    verify.add_argument("--family", choices=[t.value for t in FamilyTag], default=None)
    verify.add_argument("--n", type=int, default=None)
    verify.add_argument("--max-step", type=int, required=True)
    _add_family_params(verify)
    _add_field(verify)

    netclass = commands.add_parser("netclass", help="net of conics and its discriminant")
    netclass.add_argument("file", type=Path)
    netclass.add_argument(
        "--seed", type=int, default=None, help="seed for the square-generator search"
    )

    series = commands.add_parser("series", help="rational function utilities")
    series_commands = series.add_subparsers(dest="series_command", required=True)
    expand = series_commands.add_parser("expand", help="Taylor coefficients of N/D")
    expand.add_argument("--num", required=True)
    expand.add_argument("--den", required=True)
    expand.add_argument("--order", type=int, required=True)

    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def _write(document: Any, output: Optional[Path]) -> None:
    text = json.dumps(document, indent=2)
    if output is None:
        sys.stdout.write(text + "\n")
    else:
        output.write_text(text + "\n", encoding="utf-8")


def _main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_INPUT_ERROR
    _configure_logging(args)

    try:
        options = EngineOptions.from_env(seed=getattr(args, "seed", None))
        status, document = CommandRunner(args, options).run()
    except ResourceLimitError as e:
        logger.warning("stopped early: %s", e)
        _write({"betti": [str(b) for b in e.partial_betti], "complete": False}, args.output)
        return EXIT_INPUT_ERROR
    except (PoincareError, OSError, ValueError) as e:
        sys.stderr.write(f"poincare: error: {e}\n")
        return EXIT_INPUT_ERROR

    _write(document, args.output)
    return status


def main() -> None:
    sys.exit(_main())
