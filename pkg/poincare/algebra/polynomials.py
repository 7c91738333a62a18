import re
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import ClassVar, Dict, List, Optional, Pattern, Tuple, Union

from ..exceptions import PolynomialParseError

Monomial = Tuple[int, ...]
Polynomial = Dict[Monomial, int]


class PolynomialGrammar:
    """
    Parser and printer for the presentation grammar.

    Terms are joined by '+' or '-'; a term is an optional integer coefficient followed by
    '*'-separated powers ``xK^E`` (K is a 1-based variable index, E >= 1). Whitespace is
    ignored and there are no parentheses: ``"x1*x2 + x3^2"``, ``"2*x1*x3+x2^2"``.
    Error positions refer to the text with whitespace removed.
    """

    power_pattern: ClassVar[str] = r"x\d+(?:\^\d+)?"
    term_pattern: ClassVar[Pattern] = re.compile(
        rf"(?P<coef>\d+)(?:\*(?P<after>{power_pattern}(?:\*{power_pattern})*))?"
        rf"|(?P<powers>{power_pattern}(?:\*{power_pattern})*)"
    )
    power_split_pattern: ClassVar[Pattern] = re.compile(r"x(\d+)(?:\^(\d+))?")

    def __init__(self, nvars: int):
        self.nvars = nvars

    def parse(self, text: str) -> Polynomial:
        compact = re.sub(r"\s+", "", text)
        if not compact:
            raise PolynomialParseError(text, 0, "empty polynomial")

        result: Polynomial = {}
        pos = 0
        while pos < len(compact):
            sign = 1
            if compact[pos] in "+-":
                sign = -1 if compact[pos] == "-" else 1
                pos += 1
            elif pos != 0:
                raise PolynomialParseError(text, pos, "expected '+' or '-'")

            match = self.term_pattern.match(compact, pos)
            if match is None or match.end() == pos:
                raise PolynomialParseError(text, pos, "expected a term")

            coefficient = int(match.group("coef")) if match.group("coef") else 1
            powers = match.group("after") or match.group("powers") or ""
            monomial = self._parse_powers(text, powers, pos)

            result[monomial] = result.get(monomial, 0) + sign * coefficient
            if result[monomial] == 0:
                del result[monomial]
            pos = match.end()

        return result

    def _parse_powers(self, text: str, powers: str, pos: int) -> Monomial:
        exponents = [0] * self.nvars
        for index, exponent in self.power_split_pattern.findall(powers):
            k = int(index)
            e = int(exponent) if exponent else 1
            if k < 1 or k > self.nvars:
                raise PolynomialParseError(
                    text, pos, f"variable x{k} outside x1..x{self.nvars}"
                )
            if e < 1:
                raise PolynomialParseError(text, pos, f"exponent of x{k} must be >= 1")
            exponents[k - 1] += e
        return tuple(exponents)

    # ----------------------------------------------------------------------------------------------------------

    @staticmethod
    def format_monomial(monomial: Monomial) -> str:
        parts = []
        for i, e in enumerate(monomial):
            if e == 1:
                parts.append(f"x{i + 1}")
            elif e > 1:
                parts.append(f"x{i + 1}^{e}")
        return "*".join(parts) or "1"

    @classmethod
    def format(cls, poly: Dict[Monomial, Union[int, Fraction]]) -> str:
        """Render a polynomial in the grammar (rational coefficients print as ``a/b``)."""
        terms = [(m, c) for m, c in poly.items() if c != 0]
        if not terms:
            return "0"
        terms.sort(key=lambda item: listing_key(item[0]))

        out = ""
        for m, c in terms:
            negative = c < 0
            magnitude = -c if negative else c
            body = cls.format_monomial(m)
            if sum(m) == 0:
                body = str(magnitude)
            elif magnitude != 1:
                body = f"{magnitude}*{body}"
            if not out:
                out = f"-{body}" if negative else body
            else:
                out += f"-{body}" if negative else f"+{body}"
        return out


# ----------------------------------------------------------------------------------------------------------
# Monomial orders


def listing_key(monomial: Monomial) -> Tuple:
    """Degree first, then lex with x1 largest: 1, x1, x2, ..., x1^2, x1*x2, ..."""
    return (sum(monomial), tuple(-e for e in monomial))


def elimination_key(monomial: Monomial) -> Tuple:
    """
    Column order used when row reducing an ideal inside a truncated ring.

    Lowest degree first (the local order: relations pivot on their lowest-degree term),
    and inside one degree the reverse of the listing order, so that monomials listed
    first survive as basis representatives.
    """
    return (sum(monomial), monomial)


def poly_degree(poly: Polynomial) -> int:
    return max((sum(m) for m in poly), default=0)


def poly_order(poly: Polynomial) -> Optional[int]:
    """Lowest total degree of a term, None for the zero polynomial."""
    return min((sum(m) for m in poly), default=None)


def multiply_monomials(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomials_of_degree(nvars: int, d: int) -> List[Monomial]:
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        exponents = [0] * nvars
        for i in combo:
            exponents[i] += 1
        out.append(tuple(exponents))
    return out


def monomials_below(nvars: int, bound: int) -> List[Monomial]:
    """Every monomial of total degree < ``bound``, in listing order."""
    out: List[Monomial] = []
    for d in range(bound):
        out.extend(monomials_of_degree(nvars, d))
    out.sort(key=listing_key)
    return out


def variable(nvars: int, k: int) -> Monomial:
    return tuple(1 if i == k else 0 for i in range(nvars))
