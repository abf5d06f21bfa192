"""Exception hierarchy shared by the numerical library, the CLI and the API."""

from typing import List, Optional, Tuple


class ExcitonError(Exception):
    """Base class for every error raised deliberately by this package."""

    exit_code: int = 1
    status_code: int = 500


class DomainError(ExcitonError, ValueError):
    """An argument lies outside the domain of the requested function (poles included)."""

    exit_code = 2
    status_code = 422


class ConfigurationError(ExcitonError, ValueError):
    """Invalid grid, quadrature or config-file settings."""

    exit_code = 2
    status_code = 422


class AccuracyError(ExcitonError, ArithmeticError):
    """A numerical scheme failed to reach its requested accuracy."""

    exit_code = 3
    status_code = 500


class RootNotFoundError(AccuracyError):
    """No sign change of the even-state condition inside the expected bracket."""

    def __init__(self, message: str, scan: Optional[List[Tuple[float, float]]] = None):
        super().__init__(message)
        self.scan = scan or []


class ConvergenceError(AccuracyError):
    """An iterative minimizer stopped before meeting its tolerances."""


class OutputError(ExcitonError, OSError):
    """Writing a result file failed."""

    exit_code = 4
    status_code = 500
