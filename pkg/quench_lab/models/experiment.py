"""Experiment configuration and run metadata."""

from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from quench_lab.models.common import HostMetrics
from quench_lab.models.phase import SchemeKind
from quench_lab.models.systems import InitialCondition, ModelSpec

ExperimentName = Literal[
    "fig1",
    "fig2a",
    "fig2b",
    "fig2c",
    "fig3",
    "fig4",
    "appA",
    "appC",
    "appD",
    "appG",
    "custom",
]


class ExperimentConfig(BaseModel):
    """Fully or partially resolved experiment configuration.

    Unset fields (None) are filled from the experiment's preset.
    """

    model_config = ConfigDict(extra="forbid")

    experiment: ExperimentName = Field(..., description="Catalog entry to run")
    seed: int = Field(0, description="64-bit master seed", ge=0, lt=2**64)
    out_dir: Optional[Path] = Field(None, description="Artifact directory")
    threads: Optional[int] = Field(None, description="Worker cap", ge=1, le=256)
    gnuplot: bool = Field(False, description="Also write gnuplot scripts")

    # Sampling
    trajectories: Optional[int] = Field(None, description="Ensemble size")
    dt: Optional[float] = Field(None, description="Step size")
    t_end: Optional[float] = Field(None, description="Final time")
    burn_in: Optional[float] = Field(None, description="Start of time averaging")
    n_steps: Optional[int] = Field(None, description="Map iterations")
    scheme: Optional[SchemeKind] = Field(None, description="Integrator")
    snapshot_times: Optional[List[float]] = Field(None, description="Frame times")

    # Histogram and fit
    bins: Optional[int] = Field(None, description="Histogram bins", ge=8)
    hist_range: Optional[Tuple[float, float]] = Field(
        None, description="Histogram (lo, hi) override"
    )
    fit_window: Optional[Tuple[float, float]] = Field(
        None, description="Fit window (v_min, v_max) override"
    )
    symmetrize: Optional[bool] = Field(None, description="Pool both signs in fits")

    # Model parameters
    mu: Optional[float] = Field(None, description="LMG interaction")
    J: Optional[float] = Field(None, description="LMG tunneling")
    alpha: Optional[float] = Field(None, description="LMG linear field")
    beta: Optional[float] = Field(None, description="LMG quadratic S_x coupling")
    eta: Optional[float] = Field(None, description="Dissipation", ge=0)
    temperature: Optional[float] = Field(None, description="Bath temperature", ge=0)
    flow: Optional[Literal["reversible", "canonical"]] = Field(
        None, description="LMG tunneling orientation"
    )
    J_values: Optional[List[float]] = Field(None, description="J/mu sweep grid")
    K_values: Optional[List[float]] = Field(None, description="Kick strength grid")
    lambda_ratios: Optional[List[float]] = Field(
        None, description="lambda/lambda_c grid"
    )
    tau_values: Optional[List[float]] = Field(None, description="Averaging times")
    spin_sizes: Optional[List[int]] = Field(None, description="Quantum spin sizes")
    S: Optional[int] = Field(None, description="Quantum spin size", ge=1, le=4000)
    pole: Optional[float] = Field(None, description="m_x pole for the tail fit")
    harmonic_cases: Optional[List[Tuple[float, float]]] = Field(
        None, description="(m, omega0) pairs"
    )
    x0: Optional[float] = Field(None, description="Half-width of the x line")
    omega0: Optional[float] = Field(None, description="Dicke spin frequency")
    omega: Optional[float] = Field(None, description="Dicke cavity frequency")
    j: Optional[float] = Field(None, description="Dicke spin magnitude")
    x_variance: Optional[float] = Field(None, description="Dicke <x^2>")
    px_variance: Optional[float] = Field(None, description="Dicke <p_x^2>")

    # custom experiment
    model: Optional[ModelSpec] = Field(None, description="System for 'custom'")
    initial: Optional[InitialCondition] = Field(
        None, description="Initial condition for 'custom'"
    )
    observable: Optional[str] = Field(None, description="Observable for 'custom'")

    @field_validator("dt", "t_end", "x0", "omega0", "omega", "j")
    @classmethod
    def validate_positive(cls, v: Optional[float], info) -> Optional[float]:
        if v is not None and not v > 0:
            raise ValueError(f"{info.field_name} must be positive")
        return v

    @field_validator("trajectories", "n_steps")
    @classmethod
    def validate_count(cls, v: Optional[int], info) -> Optional[int]:
        if v is not None and v < 1:
            raise ValueError(f"{info.field_name} must be positive")
        return v

    @field_validator("burn_in")
    @classmethod
    def validate_burn_in(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and v < 0:
            raise ValueError("burn_in must be non-negative")
        return v

    @field_validator("x_variance", "px_variance")
    @classmethod
    def validate_variance(cls, v: Optional[float], info) -> Optional[float]:
        if v is not None and not v > 0:
            raise ValueError(f"{info.field_name} must be positive")
        return v

    @field_validator(
        "J_values", "K_values", "lambda_ratios", "tau_values", "spin_sizes"
    )
    @classmethod
    def validate_grid(cls, v: Optional[list]) -> Optional[list]:
        if v is None:
            return v
        if not v:
            raise ValueError("grid must not be empty")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("grid must be strictly ascending")
        return v

    @field_validator("K_values", "lambda_ratios")
    @classmethod
    def validate_non_negative_grid(cls, v: Optional[list], info) -> Optional[list]:
        if v is not None and any(not x >= 0 for x in v):
            raise ValueError(f"{info.field_name} must be non-negative")
        return v

    @field_validator("tau_values", "spin_sizes")
    @classmethod
    def validate_positive_grid(cls, v: Optional[list], info) -> Optional[list]:
        if v is not None and any(not x > 0 for x in v):
            raise ValueError(f"{info.field_name} must be positive")
        return v

    @field_validator("fit_window")
    @classmethod
    def validate_window(
        cls, v: Optional[Tuple[float, float]]
    ) -> Optional[Tuple[float, float]]:
        if v is not None and not 0 < v[0] < v[1]:
            raise ValueError("fit_window must satisfy 0 < v_min < v_max")
        return v

    @field_validator("hist_range")
    @classmethod
    def validate_range(
        cls, v: Optional[Tuple[float, float]]
    ) -> Optional[Tuple[float, float]]:
        if v is not None and not v[0] < v[1]:
            raise ValueError("hist_range must satisfy lo < hi")
        return v

    @field_validator("pole")
    @classmethod
    def validate_pole(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and v not in (1.0, -1.0):
            raise ValueError("pole must be +1 or -1")
        return v

    @model_validator(mode="after")
    def validate_times(self) -> "ExperimentConfig":
        if (
            self.t_end is not None
            and self.burn_in is not None
            and self.burn_in >= self.t_end
        ):
            raise ValueError("burn_in must be smaller than t_end")
        return self

    def unset_fields(self) -> List[str]:
        return [name for name, value in self if value is None]


class RunMeta(BaseModel):
    """Metadata written next to the artifacts of every run."""

    config: Dict[str, Any] = Field(..., description="Fully resolved configuration")
    seed: int = Field(..., description="Master seed")
    wall_time_seconds: float = Field(..., description="Wall-clock duration", ge=0)
    version: str = Field(..., description="quench-lab version")
    host: Optional[HostMetrics] = Field(None, description="Host resources")
    artifacts: List[str] = Field(default_factory=list, description="Files written")
