"""Phase-space state, step schemes and time-averaged histograms."""

import math
from enum import Enum
from typing import Callable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class PhasePoint(BaseModel):
    """A single point in canonical coordinates at time t."""

    coords: Tuple[float, ...] = Field(..., description="Model-defined coordinates")
    t: float = Field(0.0, description="Time in model units")

    @field_validator("coords")
    @classmethod
    def validate_finite(cls, v: Tuple[float, ...]) -> Tuple[float, ...]:
        """Reject NaN/Inf coordinates."""
        if not v:
            raise ValueError("coords must not be empty")
        if not all(math.isfinite(c) for c in v):
            raise ValueError("coords must be finite")
        return v

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=np.float64)


class Ensemble(BaseModel):
    """N weighted trajectories stored as an (N, d) coordinate array."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    coords: np.ndarray = Field(..., description="(N, d) float64 coordinates")
    weights: np.ndarray = Field(..., description="Non-negative weights summing to 1")
    seed: int = Field(..., description="64-bit master seed", ge=0, lt=2**64)
    stream_ids: np.ndarray = Field(..., description="Per-trajectory stream counters")
    t: float = Field(0.0, description="Common time of all trajectories")

    @model_validator(mode="after")
    def validate_shapes(self) -> "Ensemble":
        """Check array shapes and the weight normalization."""
        coords = np.asarray(self.coords, dtype=np.float64)
        if coords.ndim != 2 or coords.shape[0] == 0:
            raise ValueError("coords must be a non-empty (N, d) array")
        n = coords.shape[0]
        weights = np.asarray(self.weights, dtype=np.float64)
        if weights.shape != (n,):
            raise ValueError("weights must have one entry per trajectory")
        if np.any(weights < 0):
            raise ValueError("weights must be non-negative")
        if abs(float(weights.sum()) - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1")
        stream_ids = np.asarray(self.stream_ids, dtype=np.uint64)
        if stream_ids.shape != (n,):
            raise ValueError("stream_ids must have one entry per trajectory")
        if not np.all(np.isfinite(coords)):
            raise ValueError("coords must be finite")
        self.coords = coords
        self.weights = weights
        self.stream_ids = stream_ids
        return self

    @property
    def size(self) -> int:
        return int(self.coords.shape[0])

    @property
    def dimension(self) -> int:
        return int(self.coords.shape[1])

    @property
    def uniform(self) -> bool:
        """True when every trajectory carries the same weight."""
        return bool(np.all(self.weights == self.weights[0]))


class SchemeKind(str, Enum):
    """Available time-stepping schemes."""

    RK4 = "rk4"
    SYMPLECTIC_LEAPFROG = "symplectic_leapfrog"
    EULER = "euler"
    EULER_MARUYAMA = "euler_maruyama"
    DISCRETE_MAP = "discrete_map"


class StepScheme(BaseModel):
    """Integrator choice and step size."""

    kind: SchemeKind = Field(..., description="Stepping scheme")
    dt: float = Field(1.0, description="Step size; ignored for discrete_map")

    @model_validator(mode="after")
    def validate_dt(self) -> "StepScheme":
        """Continuous schemes need a positive finite dt."""
        if self.kind != SchemeKind.DISCRETE_MAP and not (
            math.isfinite(self.dt) and self.dt > 0
        ):
            raise ValueError("dt must be positive")
        return self

    @property
    def stochastic(self) -> bool:
        return self.kind == SchemeKind.EULER_MARUYAMA


class TimeAveragedHistogram(BaseModel):
    """Uniform-bin accumulator of observable samples over trajectories and time.

    ``counts`` holds summed sample weights per bin and ``total_weight`` the
    summed weight of every sample, in range or not. Uniform ensembles
    accumulate unit weights, so both stay exact integers and merges are exact.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str = Field("observable", description="Observable name")
    lo: float = Field(..., description="Lower range bound")
    hi: float = Field(..., description="Upper range bound")
    n_bins: int = Field(..., description="Number of bins", ge=1)
    counts: np.ndarray = Field(..., description="Per-bin summed weights")
    total_weight: float = Field(0.0, description="Summed weight of all samples", ge=0)
    t_window: Tuple[float, float] = Field((0.0, 0.0), description="Sampled times")

    @model_validator(mode="after")
    def validate_binning(self) -> "TimeAveragedHistogram":
        """Check range ordering and the counts array shape."""
        finite = math.isfinite(self.lo) and math.isfinite(self.hi)
        if not (finite and self.hi > self.lo):
            raise ValueError("histogram range must satisfy lo < hi")
        counts = np.asarray(self.counts, dtype=np.float64)
        if counts.shape != (self.n_bins,):
            raise ValueError("counts must have n_bins entries")
        self.counts = counts
        return self

    @classmethod
    def empty(
        cls, lo: float, hi: float, n_bins: int, name: str = "observable"
    ) -> "TimeAveragedHistogram":
        return cls(name=name, lo=lo, hi=hi, n_bins=n_bins, counts=np.zeros(n_bins))

    @property
    def bin_width(self) -> float:
        return (self.hi - self.lo) / self.n_bins

    def bin_centers(self) -> np.ndarray:
        return self.lo + (np.arange(self.n_bins) + 0.5) * self.bin_width

    def density(self) -> np.ndarray:
        """counts / (total_weight * bin_width); zeros when nothing was sampled."""
        if self.total_weight <= 0:
            return np.zeros(self.n_bins)
        return self.counts / (self.total_weight * self.bin_width)

    def in_range_fraction(self) -> float:
        if self.total_weight <= 0:
            return 0.0
        return float(self.counts.sum() / self.total_weight)

    def same_binning(self, other: "TimeAveragedHistogram") -> bool:
        return (self.lo, self.hi, self.n_bins) == (other.lo, other.hi, other.n_bins)


class EnsembleOutcome(BaseModel):
    """Histograms of one evolution plus optional coordinate snapshots."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    histograms: List[TimeAveragedHistogram]
    snapshots: dict = Field(
        default_factory=dict, description="Requested time -> (N, d) coordinates"
    )
    final: Optional[Ensemble] = None
    steps: int = Field(0, description="Accepted steps per trajectory")


class Observable(BaseModel):
    """Named projection of (N, d) coordinates onto one real value per row."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str = Field(..., description="Observable name used in artifact names")
    projection: Callable[[np.ndarray], np.ndarray] = Field(
        ..., description="Vectorized coords -> values"
    )
    lo: float = Field(..., description="Histogram lower bound")
    hi: float = Field(..., description="Histogram upper bound")
    bins: int = Field(400, description="Histogram bin count", ge=1)

    def __call__(self, coords: np.ndarray) -> np.ndarray:
        return np.asarray(self.projection(np.atleast_2d(coords)), dtype=np.float64)

    def empty_histogram(self) -> TimeAveragedHistogram:
        return TimeAveragedHistogram.empty(self.lo, self.hi, self.bins, self.name)
