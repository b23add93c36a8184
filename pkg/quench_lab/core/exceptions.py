"""Custom exception hierarchy for quench-lab."""

from typing import Any, Dict, List, Optional


class QuenchLabError(Exception):
    """Base exception for all quench-lab errors."""

    def __init__(
        self,
        message: str,
        exit_code: int = 1,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        """Initialize the error with message and metadata."""
        super().__init__(message)
        self.message = message
        self.exit_code = exit_code
        self.error_code = error_code or self.__class__.__name__
        self.details = details or {}


class ValidationError(QuenchLabError):
    """Caller errors: bad arguments, configs or domains (exit code 2)."""

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        """Initialize validation error with exit code 2."""
        super().__init__(message, 2, error_code, details)


class InvalidInputError(ValidationError):
    """An argument violates an operation's precondition."""


class DomainError(ValidationError):
    """A function was evaluated outside its mathematical domain."""


class ConfigurationError(ValidationError):
    """One or more experiment configuration violations."""

    def __init__(self, violations: List[Dict[str, str]]) -> None:
        """Initialize with the aggregated list of violations."""
        summary = "; ".join(f"{v['field']}: {v['message']}" for v in violations)
        message = f"Invalid configuration: {summary}"
        super().__init__(message, "INVALID_CONFIG", {"violations": violations})
        self.violations = violations


class NumericalError(QuenchLabError):
    """Failures of the numerical machinery (exit code 3)."""

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        """Initialize numerical error with exit code 3."""
        super().__init__(message, 3, error_code, details)


class StepDivergedError(NumericalError):
    """A trajectory produced non-finite or out-of-bound coordinates."""

    def __init__(self, trajectory_id: int, time: float) -> None:
        """Initialize with the offending trajectory and time."""
        message = f"Trajectory {trajectory_id} diverged at t={time:.6g}"
        details = {"trajectory_id": trajectory_id, "time": time}
        super().__init__(message, "STEP_DIVERGED", details)
        self.trajectory_id = trajectory_id
        self.time = time


class SingularCoordinateError(NumericalError):
    """Coordinates reached a singular point of the equations of motion."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        """Initialize singular coordinate error."""
        super().__init__(message, "SINGULAR_COORDINATE", details)


class NoConvergenceError(NumericalError):
    """An iterative solver hit its iteration cap."""

    def __init__(self, message: str, index: Optional[int] = None) -> None:
        """Initialize with the index of the unconverged quantity."""
        details = {"index": index} if index is not None else {}
        super().__init__(message, "NO_CONVERGENCE", details)
        self.index = index


class AnalysisError(QuenchLabError):
    """Fitting and post-processing failures (exit code 4)."""

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        """Initialize analysis error with exit code 4."""
        super().__init__(message, 4, error_code, details)


class InsufficientDataError(AnalysisError):
    """Too few populated bins or grid points inside a fit window."""

    def __init__(self, found: int, required: int, window: tuple) -> None:
        """Initialize with counts and the offending window."""
        message = (
            f"Only {found} usable points in window {list(window)}, "
            f"need at least {required}"
        )
        details = {"found": found, "required": required, "window": list(window)}
        super().__init__(message, "INSUFFICIENT_DATA", details)


class IllConditionedError(AnalysisError):
    """Least-squares design matrix too ill-conditioned to trust."""

    def __init__(self, condition_number: float, limit: float) -> None:
        """Initialize with the measured condition number."""
        message = f"Design matrix condition number {condition_number:.3g} > {limit:.3g}"
        details = {"condition_number": condition_number, "limit": limit}
        super().__init__(message, "ILL_CONDITIONED", details)


class ArtifactError(QuenchLabError):
    """Failures producing run artifacts (exit code 5)."""

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        """Initialize artifact error with exit code 5."""
        super().__init__(message, 5, error_code, details)


class ArtifactWriteError(ArtifactError):
    """Failure writing run artifacts to disk."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        """Initialize artifact write error."""
        super().__init__(message, "ARTIFACT_WRITE_ERROR", details)
