"""Exact diagonalization and quench distributions of the LMG model.

The system starts in |S_z = 0> and evolves under the extended LMG
Hamiltonian. The infinite-time average of |<m|psi(t)>|^2 is the diagonal
ensemble, with degenerate eigenvalues grouped into blocks whose projections
keep their cross terms.
"""

import logging
import re
import time
from typing import Optional, Tuple

import numpy as np
from scipy import linalg

from quench_lab.core.exceptions import InsufficientDataError, InvalidInputError
from quench_lab.core.exceptions import NoConvergenceError
from quench_lab.core.validators import require_positive, require_spin
from quench_lab.models.quantum import (
    QuenchDistribution,
    SpectralDecomposition,
    SpinBasisMatrix,
)
from quench_lab.services.spin_operators import (
    bandwidth,
    build_hamiltonian,
    spin_operator,
)

logger = logging.getLogger(__name__)

# Relative gap below which eigenvalues share a degenerate block
DEGENERACY_TOLERANCE = 1e-10

# Default fit window (10/S, 0.1) for the m_x tail
MX_WINDOW_LOWER_TIMES_S = 10.0
MX_WINDOW_UPPER = 0.1


def _gauge(S: float, dim: int) -> np.ndarray:
    """Phases i^m that turn imaginary tridiagonal matrices real."""
    m = S - np.arange(dim)
    return np.exp(0.5j * np.pi * m)


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Make the largest-magnitude component of every column real positive."""
    lead = np.argmax(np.abs(vectors), axis=0)
    pivots = vectors[lead, np.arange(vectors.shape[1])]
    if np.iscomplexobj(vectors):
        phases = np.conj(pivots) / np.abs(pivots)
    else:
        phases = np.where(pivots < 0, -1.0, 1.0)
    return vectors * phases


def _failed_index(exc: Exception) -> Optional[int]:
    match = re.search(r"(\d+)", str(exc))
    return int(match.group(1)) if match else None


def _solve_real(entries: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    if entries.shape[0] > 1 and bandwidth(entries) <= 1:
        # implicit-shift QL/QR on the tridiagonal band
        return linalg.eigh_tridiagonal(
            np.diag(entries).copy(),
            np.diag(entries, 1).copy(),
            lapack_driver="stev",
        )
    return linalg.eigh(entries)


def eigendecompose(H: SpinBasisMatrix) -> SpectralDecomposition:
    """Ascending eigenpairs with a deterministic sign convention.

    Imaginary tridiagonal Hermitian matrices (S_y-like) are first gauged to
    real symmetric form, so a real solver is used throughout.

    Raises:
        NoConvergenceError: If LAPACK reports an unconverged eigenvalue
    """
    entries = H.entries
    try:
        if H.structure == "hermitian_tridiagonal_imaginary":
            u = _gauge(H.S, H.dimension)
            real = (np.conj(u)[:, None] * entries * u[None, :]).real
            values, w = _solve_real(real)
            vectors = u[:, None] * w
        else:
            values, vectors = _solve_real(np.asarray(entries.real, dtype=np.float64))
    except (linalg.LinAlgError, np.linalg.LinAlgError) as exc:
        raise NoConvergenceError(
            f"Eigensolver failed to converge: {exc}", index=_failed_index(exc)
        ) from exc
    return SpectralDecomposition(eigenvalues=values, eigenvectors=_fix_signs(vectors))


def _measurement_basis(S: int, observable: str) -> np.ndarray:
    if observable == "m_y":
        return eigendecompose(spin_operator(S, "y")).eigenvectors
    if observable == "m_x":
        return eigendecompose(spin_operator(S, "x")).eigenvectors
    raise InvalidInputError(
        f"Unknown observable '{observable}'",
        details={"field": "observable", "value": observable},
    )


def _degenerate_blocks(values: np.ndarray, scale: float) -> np.ndarray:
    """Start index of every block of (numerically) equal eigenvalues."""
    gaps = np.diff(values)
    breaks = np.flatnonzero(gaps >= DEGENERACY_TOLERANCE * scale) + 1
    return np.concatenate([[0], breaks])


def _validate_quench(S: float, observable: str) -> int:
    require_spin(S)
    if S < 1 or S != int(S):
        raise InvalidInputError(
            "Quench distributions need an integer S >= 1",
            details={"field": "S", "value": S},
        )
    if observable not in ("m_y", "m_x"):
        raise InvalidInputError(
            f"Unknown observable '{observable}'",
            details={"field": "observable", "value": observable},
        )
    return int(S)


def _distribution(
    S: int, observable: str, probabilities: np.ndarray
) -> QuenchDistribution:
    # measurement eigenvalues ascend, so the grid runs from -1 to 1
    values = (np.arange(2 * S + 1) - S) / S
    probabilities = np.clip(probabilities, 0.0, None)
    return QuenchDistribution(
        observable=observable,
        S=S,
        values=values,
        probabilities=probabilities / probabilities.sum(),
    )


def quench_distribution(
    S: int,
    mu: float,
    J: float,
    alpha: float = 0.0,
    beta: float = 0.0,
    observable: str = "m_y",
) -> QuenchDistribution:
    """Infinite-time average of P(m) after the quench from |S_z = 0>.

    Raises:
        InvalidInputError: For non-integer S or an unknown observable
        NoConvergenceError: Propagated from the eigensolver
    """
    S = _validate_quench(S, observable)
    started = time.perf_counter()

    spectrum = eigendecompose(build_hamiltonian(S, mu, J, alpha, beta))
    values, vectors = spectrum.eigenvalues, spectrum.eigenvectors
    psi0 = np.zeros(2 * S + 1)
    psi0[S] = 1.0  # m = S - a = 0

    coefficients = vectors.T @ psi0
    scale = max(float(np.max(np.abs(values))), np.finfo(float).tiny)
    starts = _degenerate_blocks(values, scale)
    # projection of psi0 on every degenerate block, one column per block
    block_states = np.add.reduceat(vectors * coefficients[None, :], starts, axis=1)

    basis = _measurement_basis(S, observable)
    amplitudes = basis.conj().T @ block_states
    probabilities = np.sum(np.abs(amplitudes) ** 2, axis=1)

    logger.info(
        "Quench distribution computed",
        extra={
            "S": S,
            "mu": mu,
            "J": J,
            "alpha": alpha,
            "beta": beta,
            "observable": observable,
            "blocks": int(starts.size),
            "wall_time_seconds": round(time.perf_counter() - started, 3),
        },
    )
    return _distribution(S, observable, probabilities)


def finite_time_distribution(
    S: int,
    mu: float,
    J: float,
    alpha: float = 0.0,
    beta: float = 0.0,
    observable: str = "m_y",
    tau: float = 2000.0,
    dt: float = 0.1,
) -> QuenchDistribution:
    """Direct average of |<m|exp(-iHt)|S_z=0>|^2 over t = 0, dt, ..., tau."""
    S = _validate_quench(S, observable)
    require_positive(tau, "tau")
    require_positive(dt, "dt")

    spectrum = eigendecompose(build_hamiltonian(S, mu, J, alpha, beta))
    values, vectors = spectrum.eigenvalues, spectrum.eigenvectors
    coefficients = vectors[S, :]  # <E_k|S_z=0>
    overlap = _measurement_basis(S, observable).conj().T @ vectors

    times = np.arange(int(np.floor(tau / dt + 1e-9)) + 1) * dt
    probabilities = np.zeros(2 * S + 1)
    for chunk in np.array_split(times, max(1, times.size // 2048)):
        phases = coefficients[:, None] * np.exp(-1j * np.outer(values, chunk))
        probabilities += np.sum(np.abs(overlap @ phases) ** 2, axis=1)
    return _distribution(S, observable, probabilities / times.size)


def mx_tail_exponent(
    dist: QuenchDistribution,
    pole: float = 1.0,
    window: Optional[Tuple[float, float]] = None,
) -> float:
    """Slope of log P against log(1 - pole * m_x) near the pole.

    Args:
        dist: Distribution over m_x
        pole: +1 or -1, the end of the m_x axis the tail approaches
        window: Range of 1 - pole * m_x, default (10/S, 0.1)

    Raises:
        InvalidInputError: If the distribution is not over m_x
        InsufficientDataError: If fewer than 8 grid points fall in the window
    """
    if dist.observable != "m_x":
        raise InvalidInputError(
            "mx_tail_exponent needs a distribution over m_x",
            details={"observable": dist.observable},
        )
    if pole not in (1.0, -1.0):
        raise InvalidInputError("pole must be +1 or -1", details={"pole": pole})
    lower, upper = window or (MX_WINDOW_LOWER_TIMES_S / dist.S, MX_WINDOW_UPPER)

    distance = 1.0 - pole * dist.values
    mask = (
        (distance >= lower * (1 - 1e-12))
        & (distance <= upper * (1 + 1e-12))
        & (dist.probabilities > 0)
    )
    found = int(mask.sum())
    if found < 8:
        raise InsufficientDataError(found, 8, (lower, upper))
    slope, _ = np.polyfit(np.log(distance[mask]), np.log(dist.probabilities[mask]), 1)
    return float(slope)
