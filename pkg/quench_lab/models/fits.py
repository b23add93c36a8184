"""Log-divergence fits and parameter sweeps."""

import math
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_serializer, model_validator


KAPPA_THRESHOLD = 0.02


def _finite_or_none(value: Optional[float]) -> Optional[float]:
    if value is None or not math.isfinite(value):
        return None
    return value


class LogFit(BaseModel):
    """Result of fitting density = kappa * log|v| + offset over a window."""

    kappa: float = Field(..., description="Prefactor of the logarithm")
    offset: float = Field(..., description="Additive constant")
    window: Tuple[float, float] = Field(..., description="(v_min, v_max)")
    residual: float = Field(..., description="Unweighted RMS residual", ge=0)
    n_bins_used: int = Field(..., description="Bins inside the window", ge=8)

    @model_validator(mode="after")
    def validate_window(self) -> "LogFit":
        if self.window[0] <= 0:
            raise ValueError("window lower edge must be positive")
        return self

    @property
    def divergent(self) -> bool:
        """False when |kappa| is below the no-divergence threshold."""
        return abs(self.kappa) >= KAPPA_THRESHOLD


class KappaSweep(BaseModel):
    """Fitted kappa across an ascending grid of one control parameter."""

    parameter: str = Field(..., description="Swept parameter name")
    grid: List[float] = Field(..., description="Strictly ascending grid")
    kappa: List[Optional[float]] = Field(..., description="kappa per grid point")
    residual: List[Optional[float]] = Field(..., description="Fit residual per point")
    law: Optional[List[Optional[float]]] = Field(
        None, description="Reference kappa per grid point when a law is known"
    )
    failures: List[Dict[str, Any]] = Field(
        default_factory=list, description="Per-point errors"
    )

    @model_validator(mode="after")
    def validate_grid(self) -> "KappaSweep":
        if not self.grid:
            raise ValueError("grid must not be empty")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("grid must be strictly ascending")
        if len(self.kappa) != len(self.grid) or len(self.residual) != len(self.grid):
            raise ValueError("one kappa and residual per grid point")
        return self

    @field_serializer("kappa", "residual")
    def serialize_values(self, values: List[Optional[float]]) -> List[Optional[float]]:
        return [_finite_or_none(v) for v in values]

    @field_serializer("law")
    def serialize_law(
        self, values: Optional[List[Optional[float]]]
    ) -> Optional[List[Optional[float]]]:
        if values is None:
            return None
        return [_finite_or_none(v) for v in values]

    def at(self, value: float) -> Optional[float]:
        """kappa at the grid point closest to ``value``."""
        index = min(range(len(self.grid)), key=lambda i: abs(self.grid[i] - value))
        return self.kappa[index]
