"""Conversion of exceptions into error reports and exit codes."""

import json
import logging
from pathlib import Path
from typing import Optional, Tuple

from quench_lab.core.exceptions import (
    ConfigurationError,
    NumericalError,
    QuenchLabError,
)
from quench_lab.models.common import ErrorReport

logger = logging.getLogger(__name__)

INTERNAL_ERROR_EXIT_CODE = 1


def report_json(report: ErrorReport) -> str:
    """Stable JSON rendering of a report."""
    return json.dumps(
        report.model_dump(exclude_none=True), indent=2, sort_keys=True, default=str
    )


def build_report(
    exc: BaseException, experiment: Optional[str] = None
) -> ErrorReport:
    """Machine-readable report for any exception."""
    if isinstance(exc, QuenchLabError):
        return ErrorReport(
            error=exc.message,
            error_code=exc.error_code,
            exit_code=exc.exit_code,
            experiment=experiment,
            details=exc.details or None,
        )
    # Don't expose internals beyond the exception type
    return ErrorReport(
        error="An internal error occurred",
        error_code="INTERNAL_ERROR",
        exit_code=INTERNAL_ERROR_EXIT_CODE,
        experiment=experiment,
        details={"error_type": type(exc).__name__},
    )


def handle_error(
    exc: BaseException,
    experiment: Optional[str] = None,
    out_dir: Optional[Path] = None,
) -> Tuple[ErrorReport, int]:
    """Log an exception, persist error.json when possible, return the exit code."""
    report = build_report(exc, experiment)

    if isinstance(exc, ConfigurationError):
        logger.warning(
            "Invalid configuration",
            extra={"experiment": experiment, "violations": exc.violations},
        )
    elif isinstance(exc, QuenchLabError):
        logger.error(
            "Run failed",
            extra={
                "experiment": experiment,
                "error_code": report.error_code,
                "exit_code": report.exit_code,
                "details": report.details,
            },
            exc_info=isinstance(exc, NumericalError),
        )
    else:
        logger.error(
            "Unexpected error",
            extra={"experiment": experiment, "error_type": type(exc).__name__},
            exc_info=exc,
        )

    if out_dir is not None and Path(out_dir).is_dir():
        try:
            (Path(out_dir) / "error.json").write_text(report_json(report) + "\n")
        except OSError as write_error:
            logger.warning(
                "Could not write error.json",
                extra={"out_dir": str(out_dir), "error": str(write_error)},
            )
    return report, report.exit_code
