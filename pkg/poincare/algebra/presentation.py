import json
import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from ..exactmath import Field
from ..exceptions import MalformedInputError
from .polynomials import Polynomial, PolynomialGrammar, poly_degree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IdealPresentation:
    """
    An ideal I of k[x1..xn] given by generator polynomials: the serializable input object.

    ``truncation`` is the power of the maximal ideal the engine works modulo; when it is
    not given, :attr:`effective_truncation` picks (max generator degree) + 3 and the
    quotient construction validates it.
    """

    nvars: int
    characteristic: int
    generators: Tuple[str, ...]
    truncation: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if not isinstance(self.nvars, int) or isinstance(self.nvars, bool) or self.nvars < 1:
            raise MalformedInputError(f"vars must be an integer >= 1, got {self.nvars!r}")
        Field(self.characteristic)
        if self.truncation is not None and self.truncation < 2:
            raise MalformedInputError(f"truncation must be >= 2, got {self.truncation}")
        if not self.generators:
            raise MalformedInputError("an ideal presentation needs at least one generator")

        for text, poly in zip(self.generators, self.polynomials):
            low = [m for m in poly if sum(m) < 2]
            if low:
                raise MalformedInputError(
                    f"generator '{text}' is not in the square of the maximal ideal "
                    f"(it has terms of degree {min(sum(m) for m in low)})"
                )

    @property
    def field(self) -> Field:
        return Field(self.characteristic)

    @cached_property
    def polynomials(self) -> Tuple[Polynomial, ...]:
        """Parsed generators, coefficients reduced mod p in positive characteristic."""
        grammar = PolynomialGrammar(self.nvars)
        parsed = []
        for text in self.generators:
            poly = grammar.parse(text)
            if self.characteristic:
                poly = {
                    m: c % self.characteristic
                    for m, c in poly.items()
                    if c % self.characteristic
                }
            parsed.append(poly)
        return tuple(parsed)

    @property
    def max_degree(self) -> int:
        return max(poly_degree(p) for p in self.polynomials)

    @property
    def effective_truncation(self) -> int:
        if self.truncation is not None:
            return self.truncation
        return self.max_degree + 3

    def with_characteristic(self, characteristic: int) -> "IdealPresentation":
        return IdealPresentation(
            self.nvars, characteristic, self.generators, self.truncation
        )

    # ----------------------------------------------------------------------------------------------------------
    # JSON

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"vars": self.nvars, "char": self.characteristic}
        if self.truncation is not None:
            out["truncation"] = self.truncation
        out["generators"] = list(self.generators)
        return out

    @classmethod
    def from_dict(cls, data: Any) -> "IdealPresentation":
        if not isinstance(data, dict):
            raise MalformedInputError("an ideal presentation must be a JSON object")
        unknown = set(data) - {"vars", "char", "truncation", "generators"}
        if unknown:
            raise MalformedInputError(f"unknown presentation fields: {sorted(unknown)}")
        for key in ("vars", "generators"):
            if key not in data:
                raise MalformedInputError(f"presentation is missing '{key}'")

        nvars = _integer(data["vars"], "vars")
        characteristic = _integer(data.get("char", 0), "char")
        truncation = data.get("truncation")
        if truncation is not None:
            truncation = _integer(truncation, "truncation")
        generators = data["generators"]
        if not isinstance(generators, list) or not all(
            isinstance(g, str) for g in generators
        ):
            raise MalformedInputError("'generators' must be a list of strings")
        return cls(nvars, characteristic, tuple(generators), truncation)


def _integer(value: Any, name: str) -> int:
    # ints or decimal strings
    if isinstance(value, bool):
        raise MalformedInputError(f"'{name}' must be an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError as e:
            raise MalformedInputError(f"'{name}' must be an integer, got '{value}'") from e
    raise MalformedInputError(f"'{name}' must be an integer, got {value!r}")


def load_presentation(path: Union[str, Path]) -> IdealPresentation:
    path = Path(path)
    logger.debug("loading ideal presentation from %s", path)
    with path.open("r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise MalformedInputError(f"{path} is not valid JSON: {e}") from e
    return IdealPresentation.from_dict(data)


def dump_presentation(presentation: IdealPresentation, path: Union[str, Path]) -> None:
    with Path(path).open("w", encoding="utf-8") as f:
        json.dump(presentation.to_dict(), f, indent=2)
        f.write("\n")

