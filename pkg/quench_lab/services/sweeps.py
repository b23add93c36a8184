"""kappa sweeps over one control parameter."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, Optional, Sequence, Tuple, Union

from quench_lab.core.exceptions import InvalidInputError, QuenchLabError
from quench_lab.core.settings import settings
from quench_lab.models.fits import KappaSweep, LogFit
from quench_lab.models.phase import TimeAveragedHistogram
from quench_lab.services.log_fit import fit_log_divergence

logger = logging.getLogger(__name__)

FactoryResult = Union[
    TimeAveragedHistogram, Tuple[TimeAveragedHistogram, Tuple[float, float]]
]


def kappa_sweep(
    factory: Callable[[float], FactoryResult],
    grid: Sequence[float],
    parameter: str,
    window: Optional[Tuple[float, float]] = None,
    symmetrize: bool = True,
    law: Optional[Callable[[float], float]] = None,
    threads: Optional[int] = None,
) -> KappaSweep:
    """Run ``factory`` at every grid value and fit kappa on the result.

    The factory returns a histogram, or a (histogram, window) pair when the
    window depends on the grid point. Failing points are recorded with
    kappa = None and the sweep carries on.

    Raises:
        InvalidInputError: If the grid is empty or not strictly ascending
    """
    values = [float(v) for v in grid]
    if not values:
        raise InvalidInputError("Sweep grid must not be empty")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise InvalidInputError(
            "Sweep grid must be strictly ascending", details={"grid": values}
        )

    def run_point(value: float) -> LogFit:
        result = factory(value)
        if isinstance(result, tuple):
            hist, point_window = result
        else:
            hist, point_window = result, window
        if point_window is None:
            raise InvalidInputError(
                "No fit window for sweep point", details={parameter: value}
            )
        return fit_log_divergence(hist, point_window, symmetrize)

    workers = max(1, min(threads or settings.threads, len(values)))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(run_point, v) for v in values]

    kappas: list[Optional[float]] = []
    residuals: list[Optional[float]] = []
    failures = []
    for value, future in zip(values, futures):
        try:
            fit = future.result()
        except Exception as exc:
            failures.append(_failure(parameter, value, exc))
            kappas.append(None)
            residuals.append(None)
            continue
        kappas.append(fit.kappa)
        residuals.append(fit.residual)

    sweep = KappaSweep(
        parameter=parameter,
        grid=values,
        kappa=kappas,
        residual=residuals,
        law=[law(v) for v in values] if law is not None else None,
        failures=failures,
    )
    logger.info(
        "kappa sweep finished",
        extra={
            "parameter": parameter,
            "points": len(values),
            "failed": len(failures),
            "kappa": [
                k if k is not None and math.isfinite(k) else None for k in kappas
            ],
        },
    )
    return sweep


def _failure(parameter: str, value: float, exc: Exception) -> Dict[str, Any]:
    """Failure record for one sweep point; unexpected errors keep their type."""
    if isinstance(exc, QuenchLabError):
        record: Dict[str, Any] = {
            "value": value,
            "error": exc.message,
            "error_code": exc.error_code,
            "details": exc.details,
        }
    else:
        record = {
            "value": value,
            "error": str(exc),
            "error_code": "INTERNAL_ERROR",
            "details": {"type": type(exc).__name__},
        }
    logger.warning(
        "Sweep point failed",
        extra={
            "parameter": parameter,
            "value": value,
            "error_code": record["error_code"],
        },
        exc_info=not isinstance(exc, QuenchLabError),
    )
    return record
