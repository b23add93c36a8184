"""Initial ensembles: stratified lines and Gaussian Wigner samples."""

import logging
import math

import numpy as np

from quench_lab.core.exceptions import InvalidInputError
from quench_lab.core.validators import require_count, require_positive
from quench_lab.models.phase import Ensemble
from quench_lab.models.systems import (
    DeltaMomentumLine,
    DickeSqueezedVacuum,
    UniformMomentumLine,
    UniformPhaseLine,
)
from quench_lab.services.random_streams import INITIAL_CONDITIONS, stream_generator

logger = logging.getLogger(__name__)


def stratified(lo: float, hi: float, N: int) -> np.ndarray:
    """Midpoints lo + (hi - lo)(i + 1/2)/N, i = 0..N-1."""
    return lo + (hi - lo) * (np.arange(N) + 0.5) / N


def _squeezed_coords(spec: DickeSqueezedVacuum, N: int, seed: int) -> np.ndarray:
    for name in ("x_variance", "px_variance", "omega0"):
        require_positive(getattr(spec, name), name)
    sigmas = np.sqrt(
        [spec.x_variance, spec.px_variance, spec.y_variance, spec.py_variance]
    )
    coords = np.empty((N, 4))
    for i in range(N):
        rng = stream_generator(seed, i, INITIAL_CONDITIONS)
        coords[i] = sigmas * rng.standard_normal(4)
    return coords


def build_initial_ensemble(spec, N: int, seed: int) -> Ensemble:
    """Build N equally weighted trajectories for an initial condition.

    Lines are placed deterministically at stratified midpoints; Gaussian
    specs draw from each trajectory's own initial-condition stream.

    Raises:
        InvalidInputError: For N < 1 or non-positive variances
    """
    N = require_count(N, "N")

    if isinstance(spec, UniformPhaseLine):
        phi = stratified(-math.pi, math.pi, N)
        coords = np.stack([phi, np.full(N, spec.n)], axis=1)
    elif isinstance(spec, DeltaMomentumLine):
        x = stratified(spec.x_range[0], spec.x_range[1], N)
        coords = np.stack([x, np.full(N, spec.momentum)], axis=1)
    elif isinstance(spec, UniformMomentumLine):
        p = stratified(0.0, 2.0 * math.pi, N)
        coords = np.stack([np.full(N, spec.x), p], axis=1)
    elif isinstance(spec, DickeSqueezedVacuum):
        coords = _squeezed_coords(spec, N, seed)
    else:
        raise InvalidInputError(
            f"Unknown initial condition {type(spec).__name__}",
            details={"initial_condition": type(spec).__name__},
        )

    logger.debug(
        "Initial ensemble built",
        extra={"initial_condition": spec.kind, "trajectories": N, "seed": seed},
    )
    return Ensemble(
        coords=coords,
        weights=np.full(N, 1.0 / N),
        seed=seed,
        stream_ids=np.arange(N, dtype=np.uint64),
    )
