"""Dynamical systems and initial ensembles as tagged unions."""

import math
from typing import Annotated, Literal, Tuple, Union

from pydantic import BaseModel, Field, model_validator


class HarmonicSpec(BaseModel):
    """Harmonic oscillator dx/dt = p/m, dp/dt = -m w0^2 x."""

    kind: Literal["harmonic"] = "harmonic"
    m: float = Field(1.0, description="Mass", gt=0)
    omega0: float = Field(1.0, description="Angular frequency", gt=0)

    @property
    def dimension(self) -> int:
        return 2


class LMGSpec(BaseModel):
    """Semiclassical Lipkin-Meshkov-Glick model in (phi, n) coordinates.

    ``flow`` selects the orientation of the tunneling term in dn/dt:
    ``reversible`` uses -J sqrt(1-n^2) sin(phi) and has its centre at phi=0,
    ``canonical`` is Hamilton's flow of the LMG energy with the centre at
    phi=pi (for J < mu).
    """

    kind: Literal["lmg"] = "lmg"
    mu: float = Field(1.0, description="Interaction strength")
    J: float = Field(0.2, description="Tunneling amplitude")
    alpha: float = Field(0.0, description="Linear field along S_z")
    beta: float = Field(0.0, description="Quadratic S_x coupling")
    eta: float = Field(0.0, description="Dissipation constant", ge=0)
    T: float = Field(0.0, description="Bath temperature", ge=0)
    flow: Literal["reversible", "canonical"] = Field(
        "reversible", description="Orientation of the tunneling term"
    )

    @property
    def dimension(self) -> int:
        return 2

    @property
    def conservative(self) -> bool:
        return self.eta == 0 and self.flow == "canonical"


class DickeSpec(BaseModel):
    """Semiclassical Dicke model in (x, p_x, y, p_y) coordinates."""

    kind: Literal["dicke"] = "dicke"
    omega0: float = Field(1.0 / math.sqrt(2.0), description="Spin frequency", gt=0)
    omega: float = Field(math.sqrt(3.0), description="Cavity frequency", gt=0)
    lam: float = Field(0.0, description="Spin-cavity coupling", ge=0)
    j: float = Field(1e6, description="Spin magnitude", gt=0)

    @property
    def dimension(self) -> int:
        return 4

    @property
    def critical_coupling(self) -> float:
        return math.sqrt(self.omega0 * self.omega) / 2.0


class KickedRotorSpec(BaseModel):
    """Chirikov standard map with kick strength K."""

    kind: Literal["kicked_rotor"] = "kicked_rotor"
    K: float = Field(1.0, description="Kick strength", ge=0)

    @property
    def dimension(self) -> int:
        return 2


ModelSpec = Annotated[
    Union[HarmonicSpec, LMGSpec, DickeSpec, KickedRotorSpec],
    Field(discriminator="kind"),
]


class DeltaMomentumLine(BaseModel):
    """p fixed, x evenly stratified over (x_min, x_max)."""

    kind: Literal["delta_momentum"] = "delta_momentum"
    momentum: float = Field(0.0, description="Common momentum")
    x_range: Tuple[float, float] = Field((-1.0, 1.0), description="Position range")

    @model_validator(mode="after")
    def validate_range(self) -> "DeltaMomentumLine":
        if not self.x_range[0] < self.x_range[1]:
            raise ValueError("x_range must be increasing")
        return self


class UniformPhaseLine(BaseModel):
    """n = 0 with phi evenly stratified over (-pi, pi)."""

    kind: Literal["uniform_phase"] = "uniform_phase"
    n: float = Field(0.0, description="Common population imbalance", gt=-1, lt=1)


class UniformMomentumLine(BaseModel):
    """x fixed with p evenly stratified over (0, 2pi)."""

    kind: Literal["uniform_momentum"] = "uniform_momentum"
    x: float = Field(0.0, description="Common angle")


class DickeSqueezedVacuum(BaseModel):
    """Gaussian squeezed cavity vacuum times the spin coherent-state Gaussian."""

    kind: Literal["dicke_squeezed"] = "dicke_squeezed"
    x_variance: float = Field(1e6 / 4.0, description="<x^2> of the cavity mode")
    px_variance: float = Field(1e-6, description="<p_x^2> of the cavity mode")
    omega0: float = Field(
        1.0 / math.sqrt(2.0), description="Spin frequency fixing the y variances"
    )

    @model_validator(mode="after")
    def validate_uncertainty(self) -> "DickeSqueezedVacuum":
        """Quadratures must respect <x^2><p_x^2> >= 1/4."""
        if self.x_variance <= 0 or self.px_variance <= 0 or self.omega0 <= 0:
            raise ValueError("variances and omega0 must be positive")
        if self.x_variance * self.px_variance < 0.25 * (1.0 - 1e-12):
            raise ValueError("squeezed quadratures violate <x^2><p_x^2> >= 1/4")
        return self

    @property
    def y_variance(self) -> float:
        return 1.0 / (2.0 * self.omega0)

    @property
    def py_variance(self) -> float:
        return self.omega0 / 2.0


InitialCondition = Annotated[
    Union[
        DeltaMomentumLine, UniformPhaseLine, UniformMomentumLine, DickeSqueezedVacuum
    ],
    Field(discriminator="kind"),
]


class LMGParameters(BaseModel):
    """LMG couplings and spin size identified from a two-site Bose-Hubbard model."""

    mu: float = Field(..., description="Interaction strength")
    J: float = Field(..., description="Tunneling amplitude")
    S: float = Field(..., description="Total spin N/2", gt=0)

    def to_spec(self, **overrides: float) -> LMGSpec:
        return LMGSpec(mu=self.mu, J=self.J, **overrides)
