"""Exception hierarchy.

Verdict failures (a contraction inequality that does not hold, a solve that
does not converge) are reported as values, never raised.
"""


class ProximaError(Exception):
    pass


class UsageError(ProximaError, ValueError):
    """Bad arguments: mismatched spaces, out-of-range parameters, missing traces."""


class PreconditionError(ProximaError, ValueError):
    """The inputs do not satisfy the hypotheses of the check being run."""


class DomainError(ProximaError, ValueError):
    """A point lies outside the domain of a map."""


class AmbiguityError(DomainError):
    """A point lies in both sides of a cyclic map within membership tolerance."""


class CyclicityViolation(ProximaError):
    """An iterate left the side it was required to land in."""

    def __init__(self, index: int, point, message: str | None = None):
        self.index = index
        self.point = point
        super().__init__(message or f"iterate {index} at {point} escapes the expected region")


class ConfigError(ProximaError):
    """Problem configuration could not be parsed or validated."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
