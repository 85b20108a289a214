"""Exceptions for the weakmeas library.

How to use the most important parts:
- `WeakMeasError`: Catch this base exception to handle every domain error raised by the library.
  Each subclass carries a stable `code` (e.g. ``"UndefinedWeakValue"``) that reports embed.
- `NumericError`: Raised for numeric failures (e.g. a violated normalization identity); the CLI maps
  it to exit code 3.

Invalid *values* (non-normalized states, non-Hermitian matrices, non-orthonormal bases) are rejected
by the pydantic models in `weakmeas.models` and surface as `pydantic.ValidationError`.
"""


class WeakMeasError(Exception):
    """Base exception for all weakmeas library errors."""

    code = "WeakMeasError"


class DimMismatchError(WeakMeasError, ValueError):
    """Raised when two objects live in Hilbert spaces of different dimension."""

    code = "DimMismatch"

    def __init__(self, expected: int, actual: int, what: str = "operand") -> None:
        """Initialize the error.

        Args:
            expected: Dimension required by the operation.
            actual: Dimension that was supplied.
            what: Name of the offending operand.
        """
        super().__init__(f"{what} has dimension {actual}, expected {expected}")
        self.expected = expected
        self.actual = actual


class ZeroVectorError(WeakMeasError, ValueError):
    """Raised when normalizing a vector whose norm is numerically zero."""

    code = "ZeroVector"


class NotOrthonormalError(WeakMeasError, ValueError):
    """Raised when a set of vectors expected to be orthonormal is not."""

    code = "NotOrthonormal"


class UnknownOutcomeError(WeakMeasError, KeyError):
    """Raised when a pointer outcome label is not part of the measurement model."""

    code = "UnknownOutcome"

    def __init__(self, label: str, outcomes: tuple[str, ...]) -> None:
        """Initialize the error with the label and the known outcomes."""
        super().__init__(f"unknown outcome {label!r}; model outcomes are {list(outcomes)}")
        self.label = label
        self.outcomes = outcomes

    def __str__(self) -> str:
        """Avoid KeyError's repr-quoting of the message."""
        return str(self.args[0])


class UndefinedWeakValueError(WeakMeasError, ZeroDivisionError):
    """Raised when the post-selection amplitude ⟨f|ψ⟩ vanishes."""

    code = "UndefinedWeakValue"


class InvalidModelError(WeakMeasError, ValueError):
    """Raised when a measurement model fails its normalization checks."""

    code = "InvalidModel"

    def __init__(self, message: str, failures: list[str]) -> None:
        """Initialize the error.

        Args:
            message: Error description.
            failures: Names of the failed model checks.
        """
        super().__init__(message)
        self.failures = failures


class ShuntUndefinedError(WeakMeasError, ValueError):
    """Raised when no single-outcome basis exists because ⟨ψ|A|ψ⟩ vanishes."""

    code = "ShuntUndefined"


class NotRealRepresentableError(WeakMeasError, ValueError):
    """Raised when a real-coefficient construction gets complex inputs."""

    code = "NotRealRepresentable"


class ZeroInformationError(WeakMeasError, ValueError):
    """Raised when the Fisher information vanishes and no estimate can be formed."""

    code = "ZeroInformation"


class NumericError(WeakMeasError, ArithmeticError):
    """Raised when a numeric identity the library relies on is violated."""

    code = "NumericFailure"
