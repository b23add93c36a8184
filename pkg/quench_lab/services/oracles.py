"""Closed-form reference distributions and prefactors."""

import math

import numpy as np
from scipy import integrate, special

from quench_lab.core.exceptions import DomainError
from quench_lab.core.validators import require_non_negative, require_positive
from quench_lab.models.phase import TimeAveragedHistogram
from quench_lab.services.dynamics import lmg_energy

SERIES_THRESHOLD = 1e-6


def harmonic_marginal_exact(x, x0: float, P0: float):
    """(2 P0/pi) arsinh(x0/|x|).

    Raises:
        DomainError: At x = 0, where the density diverges
    """
    require_positive(x0, "x0")
    require_positive(P0, "P0")
    x = np.asarray(x, dtype=np.float64)
    if np.any(x == 0):
        raise DomainError(
            "harmonic marginal diverges at x = 0", details={"field": "x", "value": 0.0}
        )
    density = 2.0 * P0 / math.pi * np.arcsinh(x0 / np.abs(x))
    return float(density) if density.ndim == 0 else density


def dissipative_prefactor(eta: float, tau: float) -> float:
    """(exp(eta tau) - 1)/(eta tau), tending to 1 as eta tau -> 0."""
    require_non_negative(eta, "eta")
    require_positive(tau, "tau")
    x = eta * tau
    if x < SERIES_THRESHOLD:
        return 1.0 + x / 2.0 + x * x / 6.0
    return math.expm1(x) / x


def boltzmann_reference(phi, T: float, mu: float, J: float):
    """Unnormalized exp(-E(phi, n=0)/T)."""
    require_positive(T, "T")
    density = np.exp(-np.asarray(lmg_energy(phi, 0.0, mu, J)) / T)
    return float(density) if np.ndim(density) == 0 else density


def boltzmann_density(phi, T: float, mu: float, J: float):
    """exp(-J cos phi/T) / (2 pi I0(J/T)), normalized over (-pi, pi)."""
    require_positive(T, "T")
    a = J / T
    # i0e(a) = exp(-|a|) I0(a) keeps large J/T finite
    density = np.exp(-a * np.cos(np.asarray(phi, dtype=np.float64)) - abs(a)) / (
        2.0 * math.pi * special.i0e(a)
    )
    return float(density) if np.ndim(density) == 0 else density


def sup_norm_deviation(hist: TimeAveragedHistogram, reference: np.ndarray) -> float:
    """max |P - P_ref| / max P_ref over the histogram bins."""
    reference = np.asarray(reference, dtype=np.float64)
    peak = float(np.max(reference))
    if peak <= 0:
        raise DomainError("Reference density must be positive somewhere")
    return float(np.max(np.abs(hist.density() - reference)) / peak)


def boltzmann_marginal(phi, T: float, mu: float, J: float, n_points: int = 2001):
    """Phase marginal of exp(-E(phi, n)/T), integrated over n in [-1, 1].

    Normalized over (-pi, pi); keeps the n-dependence of the tunneling term
    that boltzmann_density drops.
    """
    require_positive(T, "T")
    n = np.linspace(-1.0, 1.0, n_points)
    grid = np.linspace(-math.pi, math.pi, 1025)
    grid_energy = lmg_energy(grid[:, None], n[None, :], mu, J)
    shift = float(np.min(grid_energy))

    def integrated(energy: np.ndarray) -> np.ndarray:
        return integrate.trapezoid(np.exp(-(energy - shift) / T), n, axis=1)

    norm = integrate.trapezoid(integrated(grid_energy), grid)
    angles = np.asarray(phi, dtype=np.float64)
    flat = np.atleast_1d(angles)
    density = integrated(lmg_energy(flat[:, None], n[None, :], mu, J)) / norm
    return float(density[0]) if angles.ndim == 0 else density
