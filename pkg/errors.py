"""
Exception hierarchy. Every error carries the CLI exit code it maps to:
1 for runtime/domain failures, 2 for usage and input-format problems.
"""


class NestexError(Exception):
    exit_code = 1


class FormatError(NestexError):
    """Malformed joint-sample file (header, row width, empty body)."""
    exit_code = 2


class ParseError(FormatError):
    def __init__(self, row: int, column: str, value: str, reason: str = "not a finite decimal"):
        self.row = row
        self.column = column
        self.value = value
        super().__init__(f"row {row}, column {column}: {value!r} is {reason}")


class SizeError(NestexError):
    """Sample count does not match m^(2K)."""
    exit_code = 2

    def __init__(self, n_total: int, m: int, k_dim: int):
        self.n_total = n_total
        self.required = m ** (2 * k_dim)
        super().__init__(
            f"N must equal m^{2 * k_dim} = {self.required} for m={m}, K={k_dim}; got N={n_total}"
        )


class UsageError(NestexError):
    exit_code = 2


class DomainError(NestexError):
    """Outer function evaluated outside its domain."""

    def __init__(self, message: str, stratum: int | None = None):
        self.stratum = stratum
        if stratum is not None:
            message = f"{message} (stratum {stratum})"
        super().__init__(message)


class CapabilityError(NestexError):
    """The problem cannot provide what the method needs (e.g. conditional draws)."""


class RegressionError(NestexError):
    pass


class InsufficientDataError(NestexError):
    pass
