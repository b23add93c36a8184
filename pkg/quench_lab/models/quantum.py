"""Spin matrices, spectra and quench distributions."""

from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from quench_lab.models.phase import TimeAveragedHistogram

Structure = Literal["real_symmetric", "hermitian_tridiagonal_imaginary"]


class SpinBasisMatrix(BaseModel):
    """(2S+1)-dimensional operator in the S_z basis, ordered m = S, S-1, ..., -S."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    S: float = Field(..., description="Spin magnitude", ge=0)
    entries: np.ndarray = Field(..., description="Square Hermitian matrix")
    structure: Structure = Field("real_symmetric", description="Storage flag")

    @model_validator(mode="after")
    def validate_shape(self) -> "SpinBasisMatrix":
        dim = int(round(2 * self.S)) + 1
        if self.entries.shape != (dim, dim):
            raise ValueError(f"entries must be {dim}x{dim}")
        return self

    @property
    def dimension(self) -> int:
        return int(self.entries.shape[0])

    def m_values(self) -> np.ndarray:
        return self.S - np.arange(self.dimension)


class SpectralDecomposition(BaseModel):
    """Ascending eigenvalues with orthonormal eigenvector columns."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    eigenvalues: np.ndarray = Field(..., description="Ascending real eigenvalues")
    eigenvectors: np.ndarray = Field(..., description="Columns are eigenvectors")


class QuenchDistribution(BaseModel):
    """Probabilities of m_y or m_x on the grid m = -1 ... 1 in steps of 1/S."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    observable: Literal["m_y", "m_x"]
    S: int = Field(..., description="Integer spin magnitude", ge=1)
    values: np.ndarray = Field(..., description="Ascending grid of m values")
    probabilities: np.ndarray = Field(..., description="Non-negative, sum to 1")

    def to_histogram(self) -> TimeAveragedHistogram:
        """One bin of width 1/S centred on every grid point."""
        half = 0.5 / self.S
        return TimeAveragedHistogram(
            name=self.observable,
            lo=-1.0 - half,
            hi=1.0 + half,
            n_bins=2 * self.S + 1,
            counts=np.asarray(self.probabilities, dtype=np.float64).copy(),
            total_weight=1.0,
        )

    def rows(self) -> list[tuple[float, float]]:
        return list(zip(self.values.tolist(), self.probabilities.tolist()))
