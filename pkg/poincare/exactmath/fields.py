import numbers
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, ClassVar, Optional, Pattern, Union

from sympy import Basic, isprime
from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.domains.domain import Domain
from sympy.polys.domains.modularinteger import ModularInteger

from ..exceptions import CharacteristicError, MalformedInputError

# Elements are the native elements of the backing sympy domain (PythonMPQ/mpq over QQ,
# modular integers over GF(p)); sympy keeps them reduced and canonical.
FieldScalar = Any


@dataclass(frozen=True)
class Field:
    """
    Exact coefficient field: the rationals (characteristic 0) or a prime field F_p.

    Field values compare equal by characteristic, so matrices and algebras built
    independently over the same field can be combined.
    """

    characteristic: int

    selector_pattern: ClassVar[Pattern] = re.compile(r"^(?:Q|p:(\d+)|F(\d+))$")

    def __post_init__(self):
        if self.characteristic < 0:
            raise CharacteristicError(
                f"characteristic must be 0 or a prime, got {self.characteristic}"
            )
        if self.characteristic != 0 and not isprime(self.characteristic):
            raise CharacteristicError(
                f"characteristic must be 0 or a prime, got {self.characteristic}"
            )

    # ----------------------------------------------------------------------------------------------------------
    # Constructors

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def of_element(cls, x: Any) -> Optional["Field"]:
        """The field a native sympy domain element belongs to; None for any other object."""
        if isinstance(x, ModularInteger):
            return cls.prime(int(x.mod))
        if QQ.of_type(x):
            return cls.rationals()
        return None

    @classmethod
    def parse(cls, selector: str) -> "Field":
        """
        Parse a field selector.

        Args:
            selector: ``Q``, ``p:PRIME`` (command-line form) or ``FPRIME`` (JSON output form).

        Returns:
            The selected field.
        """
        match = cls.selector_pattern.match(selector.strip())
        if not match:
            raise MalformedInputError(
                f"unknown field selector '{selector}', expected Q or p:PRIME"
            )
        digits = match.group(1) or match.group(2)
        return cls(int(digits)) if digits else cls(0)

    # ----------------------------------------------------------------------------------------------------------

    @cached_property
    def domain(self) -> Domain:
        if self.characteristic == 0:
            return QQ
        return GF(self.characteristic, symmetric=False)

    @property
    def name(self) -> str:
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"

    @property
    def zero(self) -> FieldScalar:
        return self.domain.zero

    @property
    def one(self) -> FieldScalar:
        return self.domain.one

    def is_zero(self, x: FieldScalar) -> bool:
        return self.domain.is_zero(x)

    def convert(self, value: Union[int, Fraction, FieldScalar]) -> FieldScalar:
        """Convert an integer, a Fraction, a sympy number or an element of this field."""
        if isinstance(value, bool):
            raise MalformedInputError(f"boolean {value!r} is not a field element")
        if isinstance(value, numbers.Integral):
            return self.domain(int(value))
        if isinstance(value, Fraction):
            return self.fraction(value.numerator, value.denominator)
        if isinstance(value, Basic):
            try:
                return self.domain.from_sympy(value)
            except Exception as e:
                raise MalformedInputError(
                    f"cannot convert {value} into {self.name}"
                ) from e
        if self.domain.of_type(value):
            return value
        raise MalformedInputError(
            f"value {value!r} of type {type(value).__name__} does not belong to field {self.name}"
        )

    def fraction(self, numerator: int, denominator: int) -> FieldScalar:
        if denominator == 0:
            raise MalformedInputError("zero denominator")
        if self.characteristic == 0:
            return QQ(int(numerator), int(denominator))
        den = self.domain(int(denominator))
        if self.is_zero(den):
            raise MalformedInputError(
                f"denominator {denominator} is not invertible in {self.name}"
            )
        return self.domain(int(numerator)) / den

    def from_integer_ring(self, value: Any) -> FieldScalar:
        return self.domain.convert_from(value, ZZ)

    # ----------------------------------------------------------------------------------------------------------
    # Export

    def to_fraction(self, x: FieldScalar) -> Fraction:
        if self.characteristic == 0:
            return Fraction(int(QQ.numer(x)), int(QQ.denom(x)))
        return Fraction(self.to_int(x))

    def to_int(self, x: FieldScalar) -> int:
        """Integer value of ``x``; canonical range [0, p) over F_p, exact integers only over Q."""
        if self.characteristic == 0:
            value = self.to_fraction(x)
            if value.denominator != 1:
                raise MalformedInputError(f"{value} is not an integer")
            return value.numerator
        return int(self.domain.to_int(x)) % self.characteristic

    def to_json(self, x: FieldScalar) -> str:
        """Decimal string form used in every JSON document: ``"3"``, ``"-1/2"``."""
        value = self.to_fraction(x)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    def from_json(self, text: Union[str, int]) -> FieldScalar:
        if isinstance(text, int):
            return self.convert(text)
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise MalformedInputError(f"'{text}' is not a rational number") from e
        return self.convert(value)
