"""Counter-based random streams keyed by (seed, trajectory, purpose)."""

import numpy as np

from quench_lab.core.settings import settings

# Stream purposes; each trajectory owns one independent stream per purpose
INITIAL_CONDITIONS = 0
DYNAMICAL_NOISE = 1


def stream_generator(seed: int, stream_id: int, purpose: int) -> np.random.Generator:
    """Philox generator that depends only on (seed, stream_id, purpose)."""
    sequence = np.random.SeedSequence(seed, spawn_key=(int(stream_id), int(purpose)))
    return np.random.Generator(np.random.Philox(sequence))


class NoiseStream:
    """Standard normal draws for a shard of trajectories, one column per step.

    Every trajectory consumes its own stream sequentially in blocks, so its
    noise sequence does not depend on which shard or worker evolves it.
    """

    def __init__(self, seed: int, stream_ids: np.ndarray, block: int | None = None):
        self.block = block or settings.noise_block
        self._generators = [
            stream_generator(seed, int(sid), DYNAMICAL_NOISE) for sid in stream_ids
        ]
        self._buffer = np.empty((len(self._generators), 0))
        self._cursor = 0

    def _refill(self) -> None:
        self._buffer = np.stack(
            [g.standard_normal(self.block) for g in self._generators]
        )
        self._cursor = 0

    def next(self) -> np.ndarray:
        """Draws for the next step, shape (n_trajectories,)."""
        if self._cursor >= self._buffer.shape[1]:
            self._refill()
        column = self._buffer[:, self._cursor]
        self._cursor += 1
        return column
