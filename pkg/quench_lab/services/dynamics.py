"""Equations of motion, energies and maps of the quenched systems.

All right-hand sides are vectorized: ``coords`` may be a single point of
shape (d,) or an ensemble of shape (N, d), and the derivative comes back
with the same shape.
"""

import logging
import math
from typing import Tuple

import numpy as np

from quench_lab.core.exceptions import InvalidInputError, SingularCoordinateError
from quench_lab.core.validators import require_non_negative, require_positive
from quench_lab.models.systems import (
    DickeSpec,
    HarmonicSpec,
    KickedRotorSpec,
    LMGParameters,
    LMGSpec,
)

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

# |n| closer than this to 1 is treated as the singular pole of the sphere
POLE_MARGIN = 1e-12

# Critical kick strength where the stable island of the standard map breaks up
KICKED_ROTOR_KC = 4.0


def wrap_angle(values: np.ndarray) -> np.ndarray:
    """Map angles into [0, 2pi)."""
    wrapped = np.mod(values, TWO_PI)
    return np.where(wrapped >= TWO_PI, 0.0, wrapped)


def wrap_centered(values: np.ndarray) -> np.ndarray:
    """Map angles into [-pi, pi)."""
    return wrap_angle(np.asarray(values) + math.pi) - math.pi


# Harmonic oscillator


def harmonic_rhs(coords: np.ndarray, m: float, omega0: float) -> np.ndarray:
    """(dx/dt, dp/dt) = (p/m, -m w0^2 x)."""
    coords = np.asarray(coords, dtype=np.float64)
    x, p = coords[..., 0], coords[..., 1]
    return np.stack([p / m, -m * omega0**2 * x], axis=-1)


def harmonic_energy(coords: np.ndarray, m: float, omega0: float) -> np.ndarray:
    coords = np.asarray(coords, dtype=np.float64)
    x, p = coords[..., 0], coords[..., 1]
    return p**2 / (2.0 * m) + 0.5 * m * omega0**2 * x**2


def rescale_harmonic(coords: np.ndarray, m: float, omega0: float) -> np.ndarray:
    """Map (x, p) of an (m, w0) oscillator to unit-mass, unit-frequency units.

    With t' = w0 t the rescaled point follows the (1, 1) oscillator.
    """
    coords = np.asarray(coords, dtype=np.float64)
    scale = math.sqrt(m * omega0)
    return np.stack([coords[..., 0] * scale, coords[..., 1] / scale], axis=-1)


# Lipkin-Meshkov-Glick


def _check_poles(n: np.ndarray) -> None:
    bad = np.abs(n) >= 1.0 - POLE_MARGIN
    if np.any(bad):
        index = int(np.flatnonzero(np.atleast_1d(bad))[0])
        raise SingularCoordinateError(
            "LMG coordinate reached the pole |n| = 1",
            details={"index": index, "n": float(np.atleast_1d(n)[index])},
        )


def lmg_rhs(
    coords: np.ndarray,
    mu: float,
    J: float,
    alpha: float = 0.0,
    beta: float = 0.0,
    eta: float = 0.0,
    flow: str = "reversible",
) -> np.ndarray:
    """Deterministic (dphi/dt, dn/dt) of the damped, extended LMG model.

    dphi/dt = mu n - J n cos(phi)/sqrt(1-n^2) + alpha - beta n cos^2(phi)
    dn/dt   = -s J sqrt(1-n^2) sin(phi) - 2 eta n + (beta/2)(1-n^2) sin(2 phi)

    with s = +1 for the reversible flow and s = -1 for the canonical one.

    Raises:
        SingularCoordinateError: If any |n| >= 1 - 1e-12
    """
    coords = np.asarray(coords, dtype=np.float64)
    phi, n = coords[..., 0], coords[..., 1]
    _check_poles(n)

    one_minus_n2 = 1.0 - n * n
    root = np.sqrt(one_minus_n2)
    cos_phi = np.cos(phi)
    sin_phi = np.sin(phi)
    sign = 1.0 if flow == "reversible" else -1.0

    dphi = mu * n - J * n * cos_phi / root + alpha
    dn = -sign * J * root * sin_phi - 2.0 * eta * n
    if beta != 0.0:
        dphi = dphi - beta * n * cos_phi**2
        dn = dn + beta * one_minus_n2 * sin_phi * cos_phi
    return np.stack([dphi, dn], axis=-1)


def lmg_noise_amplitude(eta: float, T: float) -> float:
    """White-noise strength sqrt(4 eta T) acting on dn/dt."""
    require_non_negative(eta, "eta")
    require_non_negative(T, "T")
    return math.sqrt(4.0 * eta * T)


def lmg_energy(phi, n, mu: float, J: float):
    """(mu/2) n^2 + J sqrt(1-n^2) cos(phi)."""
    n = np.asarray(n, dtype=np.float64)
    energy = 0.5 * mu * n**2 + J * np.sqrt(np.clip(1.0 - n**2, 0.0, None)) * np.cos(
        phi
    )
    return float(energy) if energy.ndim == 0 else energy


def lmg_energy_extended(phi, n, mu: float, J: float, alpha: float, beta: float):
    """LMG energy plus alpha n + (beta/2)(1-n^2) cos^2(phi)."""
    n = np.asarray(n, dtype=np.float64)
    energy = (
        lmg_energy(phi, n, mu, J)
        + alpha * n
        + 0.5 * beta * (1.0 - n**2) * np.cos(phi) ** 2
    )
    return float(energy) if np.ndim(energy) == 0 else energy


def stable_phase(model: LMGSpec) -> float:
    """Phase of the centre the quenched line n=0 winds around."""
    if model.flow == "canonical" and model.J < model.mu:
        return math.pi
    return 0.0


# Dicke


def _dicke_eta(y: np.ndarray, p_y: np.ndarray, omega0: float, j: float) -> np.ndarray:
    return (omega0**2 * y**2 + p_y**2 - omega0) / (4.0 * j * omega0)


def dicke_rhs(
    coords: np.ndarray, omega0: float, omega: float, lam: float, j: float
) -> np.ndarray:
    """Semiclassical Dicke flow in (x, p_x, y, p_y).

    Raises:
        SingularCoordinateError: If 1 - eta_aux <= 1e-12
    """
    coords = np.asarray(coords, dtype=np.float64)
    x, p_x, y, p_y = (coords[..., k] for k in range(4))
    eta_aux = _dicke_eta(y, p_y, omega0, j)
    one_minus = 1.0 - eta_aux
    if np.any(one_minus <= POLE_MARGIN):
        index = int(np.flatnonzero(np.atleast_1d(one_minus <= POLE_MARGIN))[0])
        raise SingularCoordinateError(
            "Dicke spin coordinates left the Holstein-Primakoff domain",
            details={"index": index},
        )
    root = np.sqrt(one_minus)
    g = 2.0 * lam * math.sqrt(omega * omega0)

    dx = p_x
    dy = p_y * (1.0 - (lam / (2.0 * j)) * math.sqrt(omega / omega0) * x * y / root)
    dp_x = -(omega**2) * x - g * y * root
    spin_factor = 1.0 - omega0 * y**2 / (4.0 * j * one_minus)
    dp_y = -(omega0**2) * y - g * x * root * spin_factor
    return np.stack([dx, dp_x, dy, dp_y], axis=-1)


def dicke_energy(
    coords: np.ndarray, omega0: float, omega: float, lam: float, j: float
) -> np.ndarray:
    """Semiclassical Dicke Hamiltonian whose Hamilton equations are dicke_rhs."""
    coords = np.asarray(coords, dtype=np.float64)
    x, p_x, y, p_y = (coords[..., k] for k in range(4))
    eta_aux = _dicke_eta(y, p_y, omega0, j)
    return (
        -j * omega0
        + 0.5 * (omega**2 * x**2 + p_x**2 - omega + omega0**2 * y**2 + p_y**2 - omega0)
        + 2.0
        * lam
        * math.sqrt(omega * omega0)
        * x
        * y
        * np.sqrt(np.clip(1.0 - eta_aux, 0.0, None))
    )


def dicke_critical_coupling(omega0: float, omega: float) -> float:
    """Superradiant coupling sqrt(w0 w)/2."""
    require_positive(omega0, "omega0")
    require_positive(omega, "omega")
    return math.sqrt(omega0 * omega) / 2.0


# Kicked rotor


def chirikov_step(x, p, K: float) -> Tuple[np.ndarray, np.ndarray]:
    """One standard-map iteration p' = p - K sin x, x' = x + p', wrapped to [0, 2pi)."""
    p_next = np.asarray(p, dtype=np.float64) - K * np.sin(x)
    x_next = np.asarray(x, dtype=np.float64) + p_next
    return wrap_angle(x_next), wrap_angle(p_next)


def chirikov_inverse(x_next, p_next, K: float) -> Tuple[np.ndarray, np.ndarray]:
    """Preimage of chirikov_step: x = x' - p', p = p' + K sin x."""
    x = wrap_angle(np.asarray(x_next, dtype=np.float64) - p_next)
    p = wrap_angle(np.asarray(p_next, dtype=np.float64) + K * np.sin(x))
    return x, p


def kicked_rotor_kappa_law(K: float, P0: float = 1.0 / TWO_PI) -> float:
    """Empirical (-2 P0/pi) sqrt(1 - K/Kc); zero once the island is chaotic."""
    require_non_negative(K, "K")
    if K >= KICKED_ROTOR_KC:
        return 0.0
    return -2.0 * P0 / math.pi * math.sqrt(1.0 - K / KICKED_ROTOR_KC)


# Parameter mapping


def bose_hubbard_to_lmg(mu_bh: float, J_bh: float, N: int) -> LMGParameters:
    """Identify a two-site Bose-Hubbard model of N bosons with LMG at S = N/2."""
    if N < 1:
        raise InvalidInputError("N must be >= 1", details={"field": "N", "value": N})
    return LMGParameters(mu=mu_bh, J=J_bh, S=N / 2.0)


# Dispatch used by the integrators


def model_rhs(model, coords: np.ndarray) -> np.ndarray:
    """Deterministic vector field of any continuous model."""
    if isinstance(model, HarmonicSpec):
        return harmonic_rhs(coords, model.m, model.omega0)
    if isinstance(model, LMGSpec):
        return lmg_rhs(
            coords, model.mu, model.J, model.alpha, model.beta, model.eta, model.flow
        )
    if isinstance(model, DickeSpec):
        return dicke_rhs(coords, model.omega0, model.omega, model.lam, model.j)
    raise InvalidInputError(
        f"Model '{model.kind}' has no continuous vector field",
        details={"model": model.kind},
    )


def model_energy(model, coords: np.ndarray):
    """Energy function of a continuous model, for conservation checks."""
    coords = np.asarray(coords, dtype=np.float64)
    if isinstance(model, HarmonicSpec):
        return harmonic_energy(coords, model.m, model.omega0)
    if isinstance(model, LMGSpec):
        return lmg_energy_extended(
            coords[..., 0], coords[..., 1], model.mu, model.J, model.alpha, model.beta
        )
    if isinstance(model, DickeSpec):
        return dicke_energy(coords, model.omega0, model.omega, model.lam, model.j)
    raise InvalidInputError(
        f"Model '{model.kind}' has no energy function", details={"model": model.kind}
    )


def canonical_split(model) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Indices of (positions, momenta) for the partitioned leapfrog."""
    if isinstance(model, DickeSpec):
        return (0, 2), (1, 3)
    if isinstance(model, KickedRotorSpec):
        raise InvalidInputError("The kicked rotor is a discrete map")
    # harmonic (x, p) and LMG (phi, n)
    return (0,), (1,)


def noise_amplitude(model) -> float:
    """Additive noise strength on the momentum-like coordinate, 0 if none."""
    if isinstance(model, LMGSpec):
        return lmg_noise_amplitude(model.eta, model.T)
    return 0.0
