"""Ensemble evolution with streaming time-averaged histograms.

Trajectories are split into fixed-size shards (``settings.shard_size``).
Each shard is evolved by one worker with its own accumulators, and the
per-shard results are merged in shard-index order, so the output depends
only on the configuration and seed, never on the worker count.
"""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from quench_lab.core.exceptions import InvalidInputError
from quench_lab.core.settings import settings
from quench_lab.models.phase import (
    Ensemble,
    EnsembleOutcome,
    Observable,
    SchemeKind,
    StepScheme,
    TimeAveragedHistogram,
)
from quench_lab.models.systems import KickedRotorSpec
from quench_lab.services.dynamics import noise_amplitude
from quench_lab.services.histogram import accumulate, merge_all
from quench_lab.services.integrators import advance, check_bounded
from quench_lab.services.random_streams import NoiseStream

logger = logging.getLogger(__name__)


class _ShardResult:
    """Accumulators and snapshot rows produced by one shard."""

    def __init__(
        self,
        histograms: List[TimeAveragedHistogram],
        snapshots: Dict[float, np.ndarray],
        final: np.ndarray,
    ) -> None:
        self.histograms = histograms
        self.snapshots = snapshots
        self.final = final


def _shards(n: int, shard_size: int) -> List[Tuple[int, int]]:
    return [(start, min(start + shard_size, n)) for start in range(0, n, shard_size)]


def _relative_weights(ens: Ensemble) -> np.ndarray:
    # Uniform ensembles add unit weights so counts stay exact integers
    if ens.uniform:
        return np.ones(ens.size)
    return ens.weights * ens.size


def _run_shard(
    model,
    ens: Ensemble,
    scheme: StepScheme,
    bounds: Tuple[int, int],
    n_steps: int,
    sample_from: int,
    observables: Sequence[Observable],
    snapshot_steps: Dict[float, int],
    weights: np.ndarray,
) -> _ShardResult:
    start, stop = bounds
    coords = ens.coords[start:stop].copy()
    w = weights[start:stop]
    histograms = [obs.empty_histogram() for obs in observables]
    snapshots: Dict[float, np.ndarray] = {}
    for t_snap, k in snapshot_steps.items():
        if k == 0:
            snapshots[t_snap] = coords.copy()

    noise = None
    if scheme.stochastic and noise_amplitude(model) > 0.0:
        noise = NoiseStream(ens.seed, ens.stream_ids[start:stop])
    dt = 1.0 if scheme.kind == SchemeKind.DISCRETE_MAP else scheme.dt

    for k in range(1, n_steps + 1):
        draw = noise.next() if noise is not None else None
        coords = advance(model, coords, scheme, draw)
        t = ens.t + k * dt
        check_bounded(coords, t, offset=start)
        if k >= sample_from:
            for obs, hist in zip(observables, histograms):
                accumulate(hist, obs(coords), w, t)
        for t_snap, snap_k in snapshot_steps.items():
            if snap_k == k:
                snapshots[t_snap] = coords.copy()

    return _ShardResult(histograms, snapshots, coords)


def _evolve(
    model,
    ens: Ensemble,
    scheme: StepScheme,
    n_steps: int,
    sample_from: int,
    observables: Sequence[Observable],
    snapshot_steps: Dict[float, int],
    threads: Optional[int],
) -> EnsembleOutcome:
    if ens.size == 0:
        raise InvalidInputError("Ensemble is empty")
    if ens.dimension != model.dimension:
        raise InvalidInputError(
            f"Ensemble has {ens.dimension} coordinates, model needs {model.dimension}",
            details={"model": model.kind},
        )
    if not observables:
        raise InvalidInputError("At least one observable is required")

    weights = _relative_weights(ens)
    shards = _shards(ens.size, settings.shard_size)
    workers = max(1, min(threads or settings.threads, len(shards)))
    started = time.perf_counter()

    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(
                _run_shard,
                model,
                ens,
                scheme,
                bounds,
                n_steps,
                sample_from,
                observables,
                snapshot_steps,
                weights,
            )
            for bounds in shards
        ]
        # Collected in shard order: the first failing shard by index wins
        results = [f.result() for f in futures]

    histograms = [
        merge_all(r.histograms[i] for r in results) for i in range(len(observables))
    ]
    snapshots = {
        t_snap: np.concatenate([r.snapshots[t_snap] for r in results])
        for t_snap in snapshot_steps
    }
    dt = 1.0 if scheme.kind == SchemeKind.DISCRETE_MAP else scheme.dt
    final = Ensemble.model_construct(
        coords=np.concatenate([r.final for r in results]),
        weights=ens.weights,
        seed=ens.seed,
        stream_ids=ens.stream_ids,
        t=ens.t + n_steps * dt,
    )

    logger.info(
        "Ensemble evolved",
        extra={
            "model": model.kind,
            "scheme": scheme.kind.value,
            "trajectories": ens.size,
            "steps": n_steps,
            "shards": len(shards),
            "workers": workers,
            "wall_time_seconds": round(time.perf_counter() - started, 3),
        },
    )
    return EnsembleOutcome(
        histograms=histograms, snapshots=snapshots, final=final, steps=n_steps
    )


def _step_count(span: float, dt: float) -> int:
    return int(math.floor(span / dt + 1e-9))


def evolve_with_snapshots(
    model,
    ens: Ensemble,
    scheme: StepScheme,
    t_end: float,
    observables: Sequence[Observable],
    burn_in: float = 0.0,
    snapshot_times: Sequence[float] = (),
    threads: Optional[int] = None,
) -> EnsembleOutcome:
    """Evolve to t_end, sampling every step with t in (burn_in, t_end].

    Snapshots hold the full coordinates at the first step at or after each
    requested time.

    Raises:
        InvalidInputError: For an empty ensemble or t_end <= burn_in
        StepDivergedError: With the global id of the first diverging trajectory
    """
    if isinstance(model, KickedRotorSpec) or scheme.kind == SchemeKind.DISCRETE_MAP:
        raise InvalidInputError("Use iterate_map_ensemble for the kicked rotor")
    if not (burn_in >= 0 and t_end > burn_in):
        raise InvalidInputError(
            "t_end must exceed burn_in >= 0",
            details={"t_end": t_end, "burn_in": burn_in},
        )
    dt = scheme.dt
    n_steps = max(1, _step_count(t_end - ens.t, dt))
    # first step whose time exceeds burn_in
    sample_from = max(1, _step_count(burn_in - ens.t, dt) + 1)
    if sample_from > n_steps:
        raise InvalidInputError(
            "No step falls inside the sampling window",
            details={"t_end": t_end, "burn_in": burn_in, "dt": dt},
        )
    snapshot_steps = {
        float(t): min(n_steps, max(0, math.ceil((t - ens.t) / dt - 1e-9)))
        for t in snapshot_times
    }
    return _evolve(
        model, ens, scheme, n_steps, sample_from, observables, snapshot_steps, threads
    )


def evolve_ensemble(
    model,
    ens: Ensemble,
    scheme: StepScheme,
    t_end: float,
    observables: Sequence[Observable],
    burn_in: float = 0.0,
    threads: Optional[int] = None,
) -> List[TimeAveragedHistogram]:
    """One time-averaged histogram per observable over (burn_in, t_end]."""
    outcome = evolve_with_snapshots(
        model, ens, scheme, t_end, observables, burn_in, threads=threads
    )
    return outcome.histograms


def iterate_map_ensemble(
    model,
    ens: Ensemble,
    n_steps: int,
    observable: Observable,
    threads: Optional[int] = None,
) -> TimeAveragedHistogram:
    """Accumulate the observable at every iterate of the standard map.

    Raises:
        InvalidInputError: If the model is not the kicked rotor or n_steps < 1
    """
    if not isinstance(model, KickedRotorSpec):
        raise InvalidInputError(
            "iterate_map_ensemble requires the kicked rotor model",
            details={"model": getattr(model, "kind", None)},
        )
    if n_steps < 1:
        raise InvalidInputError(
            "n_steps must be >= 1", details={"field": "n_steps", "value": n_steps}
        )
    scheme = StepScheme(kind=SchemeKind.DISCRETE_MAP)
    outcome = _evolve(model, ens, scheme, n_steps, 1, [observable], {}, threads)
    return outcome.histograms[0]
