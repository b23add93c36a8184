"""Tests for exact diagonalization and quench distributions."""

import numpy as np
import pytest

from quench_lab.core.exceptions import InsufficientDataError, InvalidInputError
from quench_lab.models.quantum import QuenchDistribution, SpinBasisMatrix
from quench_lab.services.quantum_ed import (
    eigendecompose,
    finite_time_distribution,
    mx_tail_exponent,
    quench_distribution,
)
from quench_lab.services.spin_operators import build_hamiltonian, spin_operator


def _synthetic_mx(S, exponent):
    values = (np.arange(2 * S + 1) - S) / S
    distance = 1.0 - values
    # the pole itself lies outside every fit window
    probabilities = np.where(distance > 0, distance, 1.0) ** exponent
    return QuenchDistribution(
        observable="m_x",
        S=S,
        values=values,
        probabilities=probabilities / probabilities.sum(),
    )


class TestEigendecompose:
    """Test the eigensolver wrapper."""

    @pytest.mark.parametrize("beta", [0.0, 0.3])
    def test_residual(self, beta):
        """Test ||Hv - Ev|| <= 1e-10 ||H|| on S = 50 LMG matrices."""
        H = build_hamiltonian(50, 1.0, 0.7, alpha=0.05, beta=beta)
        spectrum = eigendecompose(H)
        v, e = spectrum.eigenvectors, spectrum.eigenvalues
        residual = np.linalg.norm(H.entries @ v - v * e[None, :], axis=0)
        assert np.max(residual) <= 1e-10 * np.linalg.norm(H.entries, 2)
        assert np.all(np.diff(e) >= 0)

    def test_orthonormal(self):
        """Test eigenvectors are orthonormal."""
        v = eigendecompose(build_hamiltonian(20, 1.0, 0.5)).eigenvectors
        np.testing.assert_allclose(v.T @ v, np.eye(41), atol=1e-12)

    def test_imaginary_tridiagonal(self):
        """Test S_y has the spectrum -S ... S and exact eigenvectors."""
        sy = spin_operator(6, "y")
        spectrum = eigendecompose(sy)
        np.testing.assert_allclose(spectrum.eigenvalues, np.arange(-6, 7), atol=1e-10)
        v = spectrum.eigenvectors
        np.testing.assert_allclose(
            sy.entries @ v, v * spectrum.eigenvalues[None, :], atol=1e-10
        )

    def test_sign_convention(self):
        """Test the largest component of each eigenvector is positive."""
        v = eigendecompose(build_hamiltonian(8, 1.0, 0.3)).eigenvectors
        lead = v[np.argmax(np.abs(v), axis=0), np.arange(v.shape[1])]
        assert np.all(lead > 0)

    def test_dense_fallback(self):
        """Test a generic symmetric matrix goes through the dense solver."""
        rng = np.random.default_rng(0)
        a = rng.normal(size=(5, 5))
        matrix = SpinBasisMatrix(S=2, entries=a + a.T)
        spectrum = eigendecompose(matrix)
        np.testing.assert_allclose(
            spectrum.eigenvalues, np.linalg.eigvalsh(a + a.T), atol=1e-12
        )

    def test_diagonal_input(self):
        """Test diag(1, 0, 1) returns (0, 1, 1) with basis eigenvectors."""
        matrix = SpinBasisMatrix(S=1, entries=np.diag([1.0, 0.0, 1.0]))
        spectrum = eigendecompose(matrix)
        np.testing.assert_allclose(spectrum.eigenvalues, [0.0, 1.0, 1.0], atol=1e-15)
        v = np.abs(spectrum.eigenvectors)
        np.testing.assert_allclose(v[:, 0], [0.0, 1.0, 0.0], atol=1e-15)
        np.testing.assert_allclose(v[1, 1:], [0.0, 0.0], atol=1e-15)
        np.testing.assert_allclose(np.sort(v[[0, 2], 1:], axis=None), [0, 0, 1, 1])

    def test_pauli_x(self):
        """Test [[0, 1], [1, 0]] has eigenvalues (-1, 1)."""
        matrix = SpinBasisMatrix(S=0.5, entries=np.array([[0.0, 1.0], [1.0, 0.0]]))
        spectrum = eigendecompose(matrix)
        np.testing.assert_allclose(spectrum.eigenvalues, [-1.0, 1.0], atol=1e-14)
        v = spectrum.eigenvectors
        np.testing.assert_allclose(
            matrix.entries @ v, v * spectrum.eigenvalues[None, :], atol=1e-14
        )
        np.testing.assert_allclose(np.abs(v), np.full((2, 2), 2**-0.5), atol=1e-14)


class TestQuenchDistribution:
    """Test the diagonal ensemble."""

    def test_normalized_and_symmetric(self):
        """Test P sums to 1 and P(m_y) = P(-m_y) without alpha."""
        dist = quench_distribution(60, 1.0, 0.5, observable="m_y")
        assert dist.probabilities.sum() == pytest.approx(1.0, abs=1e-10)
        np.testing.assert_allclose(
            dist.probabilities, dist.probabilities[::-1], atol=1e-10
        )
        assert dist.values[0] == -1.0
        assert dist.values[-1] == 1.0

    def test_matches_finite_time_average(self):
        """Test the diagonal ensemble equals a long direct time average."""
        diagonal = quench_distribution(8, 1.0, 0.5, observable="m_y")
        direct = finite_time_distribution(
            8, 1.0, 0.5, observable="m_y", tau=2000.0, dt=0.1
        )
        assert np.max(np.abs(diagonal.probabilities - direct.probabilities)) < 1e-2

    @pytest.mark.parametrize("S", [4, 11])
    def test_eigenstate_is_stationary(self, S):
        """Test the J = 0 quench keeps P(m_y) = |<S_y = m|S_z = 0>|^2."""
        basis = eigendecompose(spin_operator(S, "y")).eigenvectors
        expected = np.abs(basis[S, :]) ** 2
        diagonal = quench_distribution(S, 1.0, 0.0, observable="m_y")
        np.testing.assert_allclose(diagonal.probabilities, expected, atol=1e-12)
        direct = finite_time_distribution(S, 1.0, 0.0, tau=50.0, dt=0.5)
        np.testing.assert_allclose(direct.probabilities, expected, atol=1e-12)

    def test_m_x_normalized(self):
        """Test the m_x distribution is normalized."""
        dist = quench_distribution(40, 1.0, 0.5, observable="m_x")
        assert dist.probabilities.sum() == pytest.approx(1.0, abs=1e-10)
        assert np.all(dist.probabilities >= 0)

    def test_to_histogram(self):
        """Test one unit-width bin per grid point, scaled by S."""
        dist = quench_distribution(10, 1.0, 0.5)
        hist = dist.to_histogram()
        assert hist.n_bins == 21
        np.testing.assert_allclose(hist.bin_centers(), dist.values, atol=1e-12)
        np.testing.assert_allclose(hist.density(), dist.probabilities * 10)

    @pytest.mark.parametrize("S", [0, 2.5])
    def test_needs_integer_spin(self, S):
        """Test S must be a positive integer."""
        with pytest.raises(InvalidInputError):
            quench_distribution(S, 1.0, 0.5)

    def test_unknown_observable(self):
        """Test only m_y and m_x are measured."""
        with pytest.raises(InvalidInputError):
            quench_distribution(4, 1.0, 0.5, observable="m_z")


class TestTailExponent:
    """Test the m_x tail fit."""

    def test_square_root_tail(self):
        """Test a synthetic (1 - m_x)^(-1/2) tail gives -0.5."""
        exponent = mx_tail_exponent(_synthetic_mx(1000, -0.5), pole=1.0)
        assert exponent == pytest.approx(-0.5, abs=1e-6)

    def test_flat(self):
        """Test a flat distribution gives 0."""
        assert mx_tail_exponent(_synthetic_mx(1000, 0), pole=1.0) == pytest.approx(
            0.0, abs=1e-6
        )

    def test_needs_m_x(self):
        """Test m_y distributions are rejected."""
        with pytest.raises(InvalidInputError):
            mx_tail_exponent(quench_distribution(10, 1.0, 0.5, observable="m_y"))

    def test_bad_pole(self):
        """Test the pole is +1 or -1."""
        with pytest.raises(InvalidInputError):
            mx_tail_exponent(_synthetic_mx(100, -0.5), pole=0.0)

    def test_window_too_narrow(self):
        """Test too few grid points in the window."""
        with pytest.raises(InsufficientDataError):
            mx_tail_exponent(_synthetic_mx(100, -0.5), pole=1.0, window=(0.1, 0.12))
