"""
Exception hierarchy shared by every module.

Domain violations subclass ValueError and numerical breakdowns subclass
ArithmeticError so that callers catching the builtin types keep working.
"""

from typing import Any, Dict, List, Optional


class XjxError(Exception):
    """Base class for all errors raised by the package."""


class UnsupportedEntryLawError(XjxError, ValueError):
    """Entry distribution is unknown or violates the non-real moment condition."""


class DomainError(XjxError, ValueError):
    """Argument lies outside the domain of a function."""


class UnboundedDensityError(DomainError):
    """Density evaluated where it diverges."""


class ShapeMismatchError(XjxError, ValueError):
    """Matrix or point-cloud sizes are not conformable."""


class ConfigError(XjxError, ValueError):
    """Run configuration is invalid."""


class ParseError(XjxError, ValueError):
    """Input file could not be parsed."""

    def __init__(self, message: str, line: int, column: Optional[int] = None) -> None:
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")


class NumericalFailure(XjxError, ArithmeticError):
    """A dense linear-algebra kernel failed."""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None) -> None:
        self.diagnostics = diagnostics or {}
        super().__init__(message)


class SingularMatrixError(NumericalFailure):
    """Matrix that must be invertible is (numerically) singular."""


class ConvergenceError(NumericalFailure):
    """Fixed-point solver did not reach its tolerance."""

    def __init__(
        self,
        message: str,
        trajectory: Optional[List[Dict[str, float]]] = None,
        diagnostics: Optional[Dict[str, Any]] = None,
    ) -> None:
        self.trajectory = trajectory or []
        super().__init__(message, diagnostics)


class AcceptanceFailure(XjxError):
    """One or more verification criteria failed."""
