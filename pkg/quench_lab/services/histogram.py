"""Streaming accumulation and exact merging of time-averaged histograms."""

import logging
from typing import Iterable, List, Optional, Tuple

import numpy as np

from quench_lab.core.exceptions import InvalidInputError
from quench_lab.models.phase import TimeAveragedHistogram

logger = logging.getLogger(__name__)


def bin_indices(hist: TimeAveragedHistogram, values: np.ndarray) -> np.ndarray:
    """Bin index per value; -1 for out-of-range samples. hi falls in the last bin."""
    values = np.asarray(values, dtype=np.float64)
    finite = np.isfinite(values)
    scaled = (np.where(finite, values, hist.lo) - hist.lo) * (
        hist.n_bins / (hist.hi - hist.lo)
    )
    # clipped so huge finite values cast without overflow
    idx = np.floor(np.clip(scaled, -1.0, hist.n_bins)).astype(np.int64)
    idx = np.where(values == hist.hi, hist.n_bins - 1, idx)
    inside = (idx >= 0) & (idx < hist.n_bins) & finite
    return np.where(inside, idx, -1)


def accumulate(
    hist: TimeAveragedHistogram,
    values: np.ndarray,
    weights: Optional[np.ndarray] = None,
    t: Optional[float] = None,
) -> TimeAveragedHistogram:
    """Add one batch of samples in place and return the histogram.

    Every sample contributes to ``total_weight``; only in-range samples reach
    ``counts``.
    """
    values = np.ravel(np.asarray(values, dtype=np.float64))
    if weights is None:
        weights = np.ones_like(values)
    weights = np.ravel(np.asarray(weights, dtype=np.float64))
    if weights.shape != values.shape:
        raise InvalidInputError("weights must match values in shape")

    first_batch = hist.total_weight == 0
    idx = bin_indices(hist, values)
    inside = idx >= 0
    hist.counts += np.bincount(
        idx[inside], weights=weights[inside], minlength=hist.n_bins
    )
    hist.total_weight += float(weights.sum())
    if t is not None:
        if first_batch:
            hist.t_window = (t, t)
        else:
            hist.t_window = (min(hist.t_window[0], t), max(hist.t_window[1], t))
    return hist


def merge(a: TimeAveragedHistogram, b: TimeAveragedHistogram) -> TimeAveragedHistogram:
    """Combine two accumulators with identical binning into a new one.

    Raises:
        InvalidInputError: If the binnings differ
    """
    if not a.same_binning(b):
        raise InvalidInputError(
            "Cannot merge histograms with different binning",
            details={
                "left": [a.lo, a.hi, a.n_bins],
                "right": [b.lo, b.hi, b.n_bins],
            },
        )
    windows = [h.t_window for h in (a, b) if h.total_weight > 0]
    t_window: Tuple[float, float] = (
        (min(w[0] for w in windows), max(w[1] for w in windows))
        if windows
        else a.t_window
    )
    return TimeAveragedHistogram(
        name=a.name,
        lo=a.lo,
        hi=a.hi,
        n_bins=a.n_bins,
        counts=a.counts + b.counts,
        total_weight=a.total_weight + b.total_weight,
        t_window=t_window,
    )


def merge_all(histograms: Iterable[TimeAveragedHistogram]) -> TimeAveragedHistogram:
    """Left fold of merge in the given (index) order."""
    items: List[TimeAveragedHistogram] = list(histograms)
    if not items:
        raise InvalidInputError("Nothing to merge")
    result = items[0]
    for other in items[1:]:
        result = merge(result, other)
    return result


def histogram_rows(hist: TimeAveragedHistogram) -> List[Tuple[float, float]]:
    """(bin_center, density) pairs for CSV output."""
    return list(zip(hist.bin_centers().tolist(), hist.density().tolist()))
