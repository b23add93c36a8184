"""Spin operators and LMG Hamiltonians in the S_z basis."""

import numpy as np

from quench_lab.core.exceptions import InvalidInputError
from quench_lab.core.validators import require_spin
from quench_lab.models.quantum import SpinBasisMatrix


def _raising(dim: int) -> np.ndarray:
    # basis index a <-> m = S - a, so S+ couples column a to row a-1
    a = np.arange(1, dim)
    s_plus = np.zeros((dim, dim))
    s_plus[a - 1, a] = np.sqrt(a * (dim - a))
    return s_plus


def spin_operator(S: float, axis: str) -> SpinBasisMatrix:
    """S_x, S_y or S_z for spin S.

    Raises:
        InvalidInputError: If S is negative, 2S is not an integer or the
            axis is unknown
    """
    dim = require_spin(S)
    if axis == "z":
        entries = np.diag(S - np.arange(dim, dtype=np.float64))
        return SpinBasisMatrix(S=S, entries=entries, structure="real_symmetric")
    s_plus = _raising(dim)
    if axis == "x":
        entries = 0.5 * (s_plus + s_plus.T)
        return SpinBasisMatrix(S=S, entries=entries, structure="real_symmetric")
    if axis == "y":
        entries = (s_plus - s_plus.T) / 2j
        return SpinBasisMatrix(
            S=S, entries=entries, structure="hermitian_tridiagonal_imaginary"
        )
    raise InvalidInputError(
        f"Unknown axis '{axis}'", details={"field": "axis", "value": axis}
    )


def build_hamiltonian(
    S: float, mu: float, J: float, alpha: float = 0.0, beta: float = 0.0
) -> SpinBasisMatrix:
    """H = (mu/S) S_z^2 + 2J S_x + alpha S_z + (beta/S) S_x^2.

    Tridiagonal when beta = 0, pentadiagonal otherwise.
    """
    dim = require_spin(S)
    if S == 0:
        return SpinBasisMatrix(S=S, entries=np.zeros((1, 1)))
    m = S - np.arange(dim, dtype=np.float64)
    s_x = spin_operator(S, "x").entries
    entries = np.diag(mu / S * m**2 + alpha * m) + 2.0 * J * s_x
    if beta != 0.0:
        entries = entries + (beta / S) * (s_x @ s_x)
    # exact symmetry despite the matrix product
    entries = 0.5 * (entries + entries.T)
    return SpinBasisMatrix(S=S, entries=entries, structure="real_symmetric")


def bandwidth(matrix: np.ndarray) -> int:
    """Largest |a - b| with a nonzero entry."""
    rows, cols = np.nonzero(matrix)
    if rows.size == 0:
        return 0
    return int(np.max(np.abs(rows - cols)))
