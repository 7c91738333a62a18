from typing import Optional, Sequence


class PoincareError(Exception):
    """Base class of every error raised by the engine."""


class MalformedInputError(PoincareError, ValueError):
    """Input that does not describe a well-formed object (shapes, field tags, parameters)."""


class PolynomialParseError(MalformedInputError):
    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        self.reason = reason
        super().__init__(f"cannot parse '{text}' at position {position}: {reason}")


class CharacteristicError(MalformedInputError):
    """Characteristic that is not 0 or a prime, or one a constructor explicitly rejects."""


class ConfigurationError(MalformedInputError):
    pass


class TruncationTooSmallError(PoincareError):
    def __init__(
        self,
        truncation: int,
        hilbert: Sequence[int],
        hilbert_next: Sequence[int],
    ):
        self.truncation = truncation
        self.hilbert = tuple(hilbert)
        self.hilbert_next = tuple(hilbert_next)
        super().__init__(
            f"truncation {truncation} is too small: Hilbert function {self.hilbert} "
            f"changes to {self.hilbert_next} at truncation {truncation + 1}"
        )


class PreconditionError(PoincareError):
    """A mathematical precondition of an operation does not hold for its input."""


class SearchExhaustedError(PoincareError):
    pass


class ResourceLimitError(PoincareError):
    def __init__(self, message: str, partial_betti: Optional[Sequence[int]] = None):
        self.partial_betti = list(partial_betti or [])
        super().__init__(message)


class MinimalityError(PoincareError, AssertionError):
    """A differential failed the minimality or exactness check; signals a construction bug."""


class ConsistencyError(PoincareError, AssertionError):
    """Two computations of the same quantity disagree (a literal transform and its closed form)."""
