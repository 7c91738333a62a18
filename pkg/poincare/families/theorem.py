import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, ClassVar, Dict, List, Optional, Sequence, Tuple

from ..algebra import IdealPresentation
from ..exactmath import Field
from ..exceptions import CharacteristicError, MalformedInputError
from .inverse_system import (
    almost_stretched_polynomial,
    inverse_system_ideal,
    stretched_polynomial,
)

logger = logging.getLogger(__name__)


class FamilyTag(Enum):
    I1 = "I1"
    I2 = "I2"
    I3 = "I3"
    I4 = "I4"
    I5 = "I5"
    I6 = "I6"
    CI = "CI"
    STRETCHED = "stretched"
    ALMOST_STRETCHED = "almost-stretched"

    @property
    def is_h1331(self) -> bool:
        return self.value.startswith("I")

    @property
    def index(self) -> Optional[int]:
        """t = 1..6 for the I-families."""
        return int(self.value[1]) if self.is_h1331 else None


@dataclass(frozen=True)
class FamilySpec:
    """
    Parameters of one family.

    ``alpha`` is the constant of I1, ``p`` selects I_(3-p) (1 gives I2, 0 gives I3; it may be
    omitted since the tag already fixes it), ``exponents`` the CI exponents and
    ``socle_degree`` the socle degree of the stretched and almost-stretched inverse systems.
    """

    tag: FamilyTag
    n: int
    alpha: int = 0
    p: Optional[int] = None
    exponents: Optional[Tuple[int, ...]] = None
    socle_degree: Optional[int] = None
    characteristic: int = 0

    rejected_characteristics: ClassVar[Tuple[int, ...]] = (2, 3)

    def __post_init__(self):
        object.__setattr__(self, "tag", FamilyTag(self.tag))
        if self.exponents is not None:
            object.__setattr__(self, "exponents", tuple(self.exponents))
        Field(self.characteristic)

        if self.tag.is_h1331:
            if self.n < 3:
                raise MalformedInputError(f"family {self.tag.value} needs n >= 3, got {self.n}")
            if self.characteristic in self.rejected_characteristics:
                raise CharacteristicError(
                    f"family {self.tag.value} is defined for characteristic other than 2 and 3, "
                    f"got {self.characteristic}"
                )
        if self.tag in (FamilyTag.I2, FamilyTag.I3) and self.p is not None:
            expected = 1 if self.tag is FamilyTag.I2 else 0
            if self.p != expected:
                raise MalformedInputError(
                    f"{self.tag.value} is I_(3-p) with p = {expected}, got p = {self.p}"
                )
        if self.tag is FamilyTag.CI:
            if not self.exponents:
                raise MalformedInputError("CI needs exponents")
            if len(self.exponents) != self.n:
                raise MalformedInputError(
                    f"CI with n = {self.n} needs {self.n} exponents, got {len(self.exponents)}"
                )
        if self.tag in (FamilyTag.STRETCHED, FamilyTag.ALMOST_STRETCHED):
            if self.n < 2:
                raise MalformedInputError(f"{self.tag.value} needs n >= 2, got {self.n}")
            if self.socle_degree is not None and self.socle_degree < 3:
                raise MalformedInputError(
                    f"socle degree must be >= 3, got {self.socle_degree}"
                )
            if self.characteristic != 0:
                raise CharacteristicError(
                    "inverse systems are computed with the characteristic 0 derivative action"
                )

    @property
    def socle_degree_or_default(self) -> int:
        return self.socle_degree if self.socle_degree is not None else 3


# ----------------------------------------------------------------------------------------------------------
# Generator templates


def x(i: int, e: int = 1) -> str:
    return f"x{i}" if e == 1 else f"x{i}^{e}"


def _scaled(coefficient: int, term: str) -> str:
    """'+c*term' / '-c*term' suffix, empty for c = 0."""
    if coefficient == 0:
        return ""
    sign = "-" if coefficient < 0 else "+"
    magnitude = abs(coefficient)
    return f"{sign}{term}" if magnitude == 1 else f"{sign}{magnitude}*{term}"


def outer_products(n: int, all_pairs: bool = False) -> List[str]:
    """x_i*x_j for 1 <= i < j <= n with j >= 4 (every pair when ``all_pairs``)."""
    return [
        f"{x(i)}*{x(j)}"
        for j in range(2, n + 1)
        for i in range(1, j)
        if all_pairs or j >= 4
    ]


def outer_squares(n: int, socle: str) -> List[str]:
    """x_h^2 - socle for 4 <= h <= n."""
    return [f"{x(h, 2)}-{socle}" for h in range(4, n + 1)]


def _i1(spec: FamilySpec) -> List[str]:
    n = spec.n
    return [
        "x1*x2+x3^2",
        "x1*x3",
        "x1^2+x2^2" + _scaled(-spec.alpha, "x3^2"),
        *outer_products(n),
        *outer_squares(n, "x1^3"),
    ]


def _i3_minus_p(spec: FamilySpec) -> List[str]:
    n = spec.n
    p = 1 if spec.tag is FamilyTag.I2 else 0
    return [
        "x1^2",
        "x2^2",
        "x3^2" + _scaled(2 * p, "x1*x2"),
        *outer_products(n),
        *outer_squares(n, "x1*x2*x3"),
    ]


def _i4(spec: FamilySpec) -> List[str]:
    n = spec.n
    return [
        "x2^3-x1^3",
        "x3^3-x1^3",
        *outer_products(n, all_pairs=True),
        *outer_squares(n, "x1^3"),
    ]


def _i5(spec: FamilySpec) -> List[str]:
    n = spec.n
    return [
        "x1^2",
        "x1*x2",
        "x2*x3",
        "x2^3-x3^3",
        "x1*x3^2-x3^3",
        *outer_products(n),
        *outer_squares(n, "x3^3"),
    ]


def _i6(spec: FamilySpec) -> List[str]:
    n = spec.n
    return [
        "x1^2",
        "x1*x2",
        "2*x1*x3+x2^2",
        "x3^3",
        "x2*x3^2",
        *outer_products(n),
        *outer_squares(n, "x1*x3^2"),
    ]


def ci_ideal(exponents: Sequence[int], characteristic: int = 0) -> IdealPresentation:
    """The monomial complete intersection (x1^e1, ..., xn^en)."""
    if not exponents:
        raise MalformedInputError("a complete intersection needs at least one exponent")
    for e in exponents:
        if e < 2:
            raise MalformedInputError(f"exponents must be >= 2, got {e}")
    generators = tuple(x(i + 1, e) for i, e in enumerate(exponents))
    return IdealPresentation(len(exponents), characteristic, generators)


class FamilyBuilder:
    """Dispatch from family tag to generator template."""

    templates: ClassVar[Dict[FamilyTag, Callable[[FamilySpec], List[str]]]] = {
        FamilyTag.I1: _i1,
        FamilyTag.I2: _i3_minus_p,
        FamilyTag.I3: _i3_minus_p,
        FamilyTag.I4: _i4,
        FamilyTag.I5: _i5,
        FamilyTag.I6: _i6,
    }

    def build(self, spec: FamilySpec) -> IdealPresentation:
        if spec.tag is FamilyTag.CI:
            return ci_ideal(spec.exponents, spec.characteristic)
        if spec.tag in (FamilyTag.STRETCHED, FamilyTag.ALMOST_STRETCHED):
            e = spec.socle_degree_or_default
            if spec.tag is FamilyTag.STRETCHED:
                F = stretched_polynomial(spec.n, e)
            else:
                F = almost_stretched_polynomial(spec.n, e)
            return inverse_system_ideal(F, spec.n, e + 1)

        template = self.templates.get(spec.tag)
        if template is None:
            raise NotImplementedError(f"family {spec.tag.value} has no generator template")
        generators = template(spec)
        logger.debug("%s with n=%d: %d generators", spec.tag.value, spec.n, len(generators))
        return IdealPresentation(spec.n, spec.characteristic, tuple(generators))


def family_ideal(spec: FamilySpec) -> IdealPresentation:
    return FamilyBuilder().build(spec)
