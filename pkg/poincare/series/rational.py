import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from sympy import Poly, Rational, symbols
from sympy.polys.domains import QQ

from ..exactmath import DenseMatrix, Field, solve_linear
from ..exceptions import MalformedInputError

logger = logging.getLogger(__name__)

z = symbols("z")

Coefficient = Union[int, Fraction]


def _strip(coefficients: Sequence[int]) -> Tuple[int, ...]:
    out = list(coefficients)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out) if out else (0,)


def to_poly(coefficients: Sequence[Coefficient]) -> Poly:
    """Polynomial in z from lowest-degree-first coefficients."""
    values = [
        Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c
        for c in reversed(list(coefficients))
    ]
    return Poly(values or [0], z, domain=QQ)


def from_poly(poly: Poly) -> Tuple[Fraction, ...]:
    coefficients = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    return tuple(coefficients) if coefficients else (Fraction(0),)


@dataclass(frozen=True)
class TruncatedSeries:
    """The coefficients c_0..c_T of a power series, T the order."""

    coefficients: Tuple[Coefficient, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        if not self.coefficients:
            raise MalformedInputError("a truncated series needs at least one coefficient")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, t: int) -> Coefficient:
        return self.coefficients[t]

    def __len__(self) -> int:
        return len(self.coefficients)

    def prefix(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coefficients[: order + 1])

    def first_divergence(self, other: Sequence[Coefficient]) -> Optional[int]:
        """Index of the first differing coefficient over the common prefix, None if they agree."""
        for t, (a, b) in enumerate(zip(self.coefficients, other)):
            if a != b:
                return t
        return None

    def to_list(self) -> List[str]:
        return [str(c) for c in self.coefficients]


@dataclass(frozen=True)
class RationalFunction:
    """
    N(z)/D(z) with integer coefficients listed lowest degree first.

    Instances are normalized: N and D are coprime over Q and D(0) = 1, so two equal rational
    functions have equal fields. Use :meth:`of` to build one from arbitrary coefficients.
    """

    num: Tuple[int, ...]
    den: Tuple[int, ...]

    @classmethod
    def of(cls, num: Sequence[Coefficient], den: Sequence[Coefficient]) -> "RationalFunction":
        return cls.from_polys(to_poly(num), to_poly(den))

    @classmethod
    def from_polys(cls, num: Poly, den: Poly) -> "RationalFunction":
        if den.is_zero:
            raise MalformedInputError("zero denominator")
        if num.is_zero:
            return cls((0,), (1,))
        g = num.gcd(den)
        num, den = num.exquo(g), den.exquo(g)
        constant = den.nth(0)
        if constant == 0:
            raise MalformedInputError(
                "the denominator vanishes at z = 0; not a power series"
            )
        num, den = num.quo_ground(constant), den.quo_ground(constant)
        num_c, den_c = from_poly(num), from_poly(den)
        if any(c.denominator != 1 for c in num_c + den_c):
            raise MalformedInputError(
                f"{cls._render(num_c, den_c)} does not have integer coefficients "
                f"once the denominator is normalized"
            )
        return cls(
            _strip([int(c) for c in num_c]), _strip([int(c) for c in den_c])
        )

    @classmethod
    def polynomial(cls, coefficients: Sequence[int]) -> "RationalFunction":
        return cls.of(coefficients, [1])

    @property
    def numerator(self) -> Poly:
        return to_poly(self.num)

    @property
    def denominator(self) -> Poly:
        return to_poly(self.den)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction.from_polys(
            self.numerator * other.numerator, self.denominator * other.denominator
        )

    # ----------------------------------------------------------------------------------------------------------

    @staticmethod
    def _render(num: Sequence, den: Sequence) -> str:
        def render(coefficients: Sequence) -> str:
            terms = []
            for k, c in enumerate(coefficients):
                if c == 0:
                    continue
                power = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
                if not power:
                    body = str(abs(c))
                elif abs(c) == 1:
                    body = power
                else:
                    body = f"{abs(c)}{power}"
                sign = "-" if c < 0 else "+"
                terms.append((sign, body))
            if not terms:
                return "0"
            head_sign, head = terms[0]
            out = ("-" if head_sign == "-" else "") + head
            for sign, body in terms[1:]:
                out += f" {sign} {body}"
            return out

        return f"({render(num)})/({render(den)})"

    def __str__(self) -> str:
        return self._render(self.num, self.den)

    def to_dict(self) -> Dict[str, Any]:
        return {"num": [str(c) for c in self.num], "den": [str(c) for c in self.den]}

    @classmethod
    def from_dict(cls, data: Any) -> "RationalFunction":
        if not isinstance(data, dict) or "num" not in data or "den" not in data:
            raise MalformedInputError("a rational function needs 'num' and 'den'")
        try:
            num = [int(c) for c in data["num"]]
            den = [int(c) for c in data["den"]]
        except (TypeError, ValueError) as e:
            raise MalformedInputError(f"non-integer coefficient in {data}") from e
        return cls.of(num, den)


def parse_coefficients(text: str) -> List[int]:
    """Comma-separated integer list, as accepted by ``series expand --num/--den``."""
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise MalformedInputError(f"'{text}' is not a comma-separated integer list") from e
    if not values:
        raise MalformedInputError("empty coefficient list")
    return values


# ----------------------------------------------------------------------------------------------------------
# Expansion and fitting


def expand_rational(f: RationalFunction, order: int) -> TruncatedSeries:
    """
    First ``order`` + 1 Taylor coefficients of N/D.

    With D(0) = 1 they follow the recurrence c_t = N_t - sum_{i>=1} D_i c_(t-i).
    """
    if order < 0:
        raise MalformedInputError(f"order must be >= 0, got {order}")
    if f.den[0] != 1:
        raise MalformedInputError("the denominator is not normalized")
    c: List[int] = []
    for t in range(order + 1):
        value = f.num[t] if t < len(f.num) else 0
        for i in range(1, min(t, len(f.den) - 1) + 1):
            value -= f.den[i] * c[t - i]
        c.append(value)
    return TruncatedSeries(tuple(c))


def fit_rational(
    s: Union[TruncatedSeries, Sequence[Coefficient]], num_deg: int, den_deg: int
) -> Optional[RationalFunction]:
    """
    Pade-type fit: a rational function with deg N <= ``num_deg`` and deg D <= ``den_deg``
    whose expansion reproduces every coefficient of ``s``.

    Denominator degrees are tried in increasing order and the first consistent system wins;
    the answer is then unique, because T >= a + b + 1 coefficients pin it down. Returns None
    when no such function exists or when it does not have integer coefficients.
    """
    if not isinstance(s, TruncatedSeries):
        s = TruncatedSeries(tuple(s))
    if num_deg < 0 or den_deg < 0:
        raise MalformedInputError("degree bounds must be >= 0")
    if s.order < num_deg + den_deg + 1:
        raise MalformedInputError(
            f"fitting degrees ({num_deg}, {den_deg}) needs order >= {num_deg + den_deg + 1}, "
            f"got {s.order}"
        )

    field = Field.rationals()
    c = [Fraction(v) for v in s.coefficients]
    for b in range(den_deg + 1):
        # unknowns: n_0..n_a, d_1..d_b; equation t: n_t - sum_i d_i c_(t-i) = c_t
        rows = []
        for t in range(s.order + 1):
            row: List[Coefficient] = [1 if k == t else 0 for k in range(num_deg + 1)]
            row.extend(-c[t - i] if t - i >= 0 else 0 for i in range(1, b + 1))
            rows.append(row)
        m = DenseMatrix.from_rows(rows, field, cols=num_deg + 1 + b)
        solution = solve_linear(m, c)
        if solution is None:
            continue

        values = [field.to_fraction(x) for x in solution]
        try:
            fitted = RationalFunction.of(
                values[: num_deg + 1], [Fraction(1)] + values[num_deg + 1 :]
            )
        except MalformedInputError:
            logger.debug("denominator degree %d fits, but not with integer coefficients", b)
            return None
        if list(expand_rational(fitted, s.order).coefficients) != c:
            return None
        logger.debug("fitted %s with denominator degree bound %d", fitted, b)
        return fitted
    return None
