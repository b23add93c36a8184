"""Weighted least-squares fits of density = kappa log|v| + offset."""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from quench_lab.core.exceptions import (
    IllConditionedError,
    InsufficientDataError,
    InvalidInputError,
)
from quench_lab.core.validators import require_window
from quench_lab.models.fits import KAPPA_THRESHOLD, LogFit
from quench_lab.models.phase import TimeAveragedHistogram

logger = logging.getLogger(__name__)

MIN_BINS = 8
CONDITION_LIMIT = 1e12

# Default windows (v_min, v_max) per observable family
PHASE_WINDOW = (1e-2, 0.3)
ROTOR_MOMENTUM_WINDOW = (5e-2, 1.0)
QUANTUM_WINDOW_UPPER = 0.3
QUANTUM_WINDOW_LOWER_TIMES_S = 5.0


def default_window(observable: str, S: Optional[int] = None) -> Tuple[float, float]:
    """Fit window for an observable; quantum grids start at 5/S."""
    if S is not None:
        return (QUANTUM_WINDOW_LOWER_TIMES_S / S, QUANTUM_WINDOW_UPPER)
    if observable == "p":
        return ROTOR_MOMENTUM_WINDOW
    return PHASE_WINDOW


def fit_log_divergence(
    hist: TimeAveragedHistogram,
    window: Tuple[float, float],
    symmetrize: bool = True,
) -> LogFit:
    """Fit kappa and offset over bin centers with v_min <= |v| <= v_max.

    Bins are weighted by their counts. With ``symmetrize`` both signs of v
    are pooled; otherwise only the positive side is used.

    Raises:
        InvalidInputError: If the window is malformed or outside the range
        InsufficientDataError: If fewer than 8 nonempty bins are usable
        IllConditionedError: If the design matrix condition number > 1e12
    """
    v_min, v_max = require_window(window, (hist.lo, hist.hi))
    centers = hist.bin_centers()
    density = hist.density()
    magnitude = np.abs(centers)

    mask = (magnitude >= v_min) & (magnitude <= v_max) & (hist.counts > 0)
    if not symmetrize:
        mask &= centers > 0
    used = int(mask.sum())
    if used < MIN_BINS:
        raise InsufficientDataError(used, MIN_BINS, (v_min, v_max))

    log_v = np.log(magnitude[mask])
    y = density[mask]
    sqrt_w = np.sqrt(hist.counts[mask])
    design = np.column_stack([log_v, np.ones_like(log_v)])
    weighted = design * sqrt_w[:, None]

    condition = float(np.linalg.cond(weighted))
    if not np.isfinite(condition) or condition > CONDITION_LIMIT:
        raise IllConditionedError(condition, CONDITION_LIMIT)

    (kappa, offset), *_ = np.linalg.lstsq(weighted, y * sqrt_w, rcond=None)
    residual = float(np.sqrt(np.mean((y - (kappa * log_v + offset)) ** 2)))

    fit = LogFit(
        kappa=float(kappa),
        offset=float(offset),
        window=(v_min, v_max),
        residual=residual,
        n_bins_used=used,
    )
    logger.debug(
        "Log divergence fitted",
        extra={
            "observable": hist.name,
            "kappa": fit.kappa,
            "offset": fit.offset,
            "bins": used,
            "divergent": abs(fit.kappa) >= KAPPA_THRESHOLD,
        },
    )
    return fit


def classify(fit: LogFit) -> str:
    """'divergent' or 'flat' by the |kappa| threshold."""
    return "divergent" if fit.divergent else "flat"


def log_cutoff_scale(hist: TimeAveragedHistogram, fit: LogFit) -> float:
    """|v| at which the fitted logarithm reaches the peak density near v = 0.

    Below this scale the distribution saturates instead of diverging, so it
    measures the infrared cutoff of the log region.

    Raises:
        InvalidInputError: If the fit has no divergence (kappa >= 0)
        InsufficientDataError: If no bin lies below the fit window
    """
    if fit.kappa >= 0:
        raise InvalidInputError(
            "Cutoff scale needs a divergent fit (kappa < 0)",
            details={"kappa": fit.kappa},
        )
    inner = np.abs(hist.bin_centers()) < fit.window[0]
    if not inner.any():
        raise InsufficientDataError(0, 1, (0.0, fit.window[0]))
    peak = float(np.max(hist.density()[inner]))
    return float(math.exp((peak - fit.offset) / fit.kappa))
