"""Tests for closed-form reference distributions."""

import math

import numpy as np
import pytest
from scipy import integrate

from quench_lab.core.exceptions import DomainError, InvalidInputError
from quench_lab.models.phase import TimeAveragedHistogram
from quench_lab.services.oracles import (
    boltzmann_density,
    boltzmann_marginal,
    boltzmann_reference,
    dissipative_prefactor,
    harmonic_marginal_exact,
    sup_norm_deviation,
)


class TestHarmonicMarginal:
    """Test the exact arsinh marginal."""

    def test_log_asymptote(self):
        """Test x = x0 e^-5 is close to (2 P0/pi)(5 + log 2)."""
        p0 = 1.0 / (2.0 * math.pi)
        value = harmonic_marginal_exact(math.exp(-5.0), 1.0, p0)
        expected = 2.0 * p0 / math.pi * (5.0 + math.log(2.0))
        assert value == pytest.approx(expected, rel=1e-3)

    def test_even_and_decreasing(self):
        """Test the marginal is even in x and falls off away from x = 0."""
        x = np.array([0.01, 0.1, 1.0, 4.0])
        forward = harmonic_marginal_exact(x, 5.0, 0.1)
        np.testing.assert_array_equal(forward, harmonic_marginal_exact(-x, 5.0, 0.1))
        assert np.all(np.diff(forward) < 0)

    def test_pole_is_domain_error(self):
        """Test x = 0 is outside the domain."""
        with pytest.raises(DomainError):
            harmonic_marginal_exact(np.array([0.0, 0.1]), 1.0, 0.5)


class TestDissipativePrefactor:
    """Test (exp(eta tau) - 1)/(eta tau)."""

    def test_value(self):
        """Test the closed form."""
        assert dissipative_prefactor(0.1, 10.0) == pytest.approx(math.e - 1.0)

    def test_small_argument(self):
        """Test the eta tau -> 0 limit is 1."""
        assert dissipative_prefactor(0.0, 5.0) == 1.0
        assert dissipative_prefactor(1e-9, 1.0) == pytest.approx(1.0, abs=1e-8)

    def test_invalid(self):
        """Test tau must be positive."""
        with pytest.raises(InvalidInputError):
            dissipative_prefactor(0.1, 0.0)


class TestBoltzmann:
    """Test the thermal references."""

    def test_density_normalized(self):
        """Test the n = 0 reference integrates to 1 over the circle."""
        phi = np.linspace(-math.pi, math.pi, 4001)
        density = boltzmann_density(phi, 0.1, 1.0, 0.2)
        assert integrate.trapezoid(density, phi) == pytest.approx(1.0, rel=1e-6)

    def test_density_large_coupling(self):
        """Test large J/T stays finite."""
        density = boltzmann_density(np.array([0.0, math.pi]), 1e-3, 1.0, 1.0)
        assert np.all(np.isfinite(density))
        assert density[1] > density[0]

    def test_reference_shape(self):
        """Test the unnormalized reference is exp(-J cos(phi)/T)."""
        assert boltzmann_reference(math.pi, 0.1, 1.0, 0.2) == pytest.approx(
            math.exp(2.0)
        )
        with pytest.raises(InvalidInputError):
            boltzmann_reference(0.0, 0.0, 1.0, 0.2)

    def test_marginal_normalized(self):
        """Test the phase marginal integrates to 1 and peaks at pi."""
        phi = np.linspace(-math.pi, math.pi, 801)
        density = boltzmann_marginal(phi, 0.1, 1.0, 0.2)
        assert integrate.trapezoid(density, phi) == pytest.approx(1.0, rel=1e-3)
        assert np.argmax(density) in (0, len(phi) - 1)
        assert isinstance(boltzmann_marginal(0.0, 0.1, 1.0, 0.2), float)


class TestSupNorm:
    """Test the sup-norm deviation."""

    def test_identical(self):
        """Test zero deviation against its own density."""
        hist = TimeAveragedHistogram(
            lo=0.0, hi=1.0, n_bins=2, counts=np.array([1.0, 3.0]), total_weight=4.0
        )
        assert sup_norm_deviation(hist, hist.density()) == 0.0
        assert sup_norm_deviation(hist, np.array([1.0, 1.0])) == pytest.approx(0.5)

    def test_reference_must_be_positive(self):
        """Test an all-zero reference is rejected."""
        hist = TimeAveragedHistogram.empty(0.0, 1.0, 2)
        with pytest.raises(DomainError):
            sup_norm_deviation(hist, np.zeros(2))
