"""Tests for observable projections."""

import math

import numpy as np
import pytest

from quench_lab.services import observables


class TestObservables:
    """Test projections and default ranges."""

    def test_phase_centered(self):
        """Test the phase is measured from the centre and wrapped."""
        observable = observables.phase(center=math.pi, bins=40)
        values = observable(np.array([[math.pi + 0.1, 0.0], [0.0, 0.0]]))
        np.testing.assert_allclose(values, [0.1, -math.pi])
        assert observable.empty_histogram().n_bins == 40

    def test_m_y_and_m_x(self):
        """Test the spin components of (phi, n)."""
        coords = np.array([[math.pi / 2, 0.6]])
        assert observables.m_y()(coords)[0] == pytest.approx(0.8)
        assert observables.m_x()(coords)[0] == pytest.approx(0.0, abs=1e-15)

    def test_position_scale(self):
        """Test x divided by its scale."""
        observable = observables.position(-1.0, 1.0, scale=500.0)
        assert observable(np.array([[250.0, 0.0, 0.0, 0.0]]))[0] == 0.5

    def test_rotor_momentum_wrapped(self):
        """Test rotor momentum is centred on p = 0."""
        observable = observables.rotor_momentum()
        values = observable(np.array([[0.0, 2 * math.pi - 0.1]]))
        assert values[0] == pytest.approx(-0.1)
        assert (observable.lo, observable.hi) == (-math.pi, math.pi)

    def test_single_point(self):
        """Test a single (d,) point is accepted."""
        assert observables.number()(np.array([0.0, 0.25])).shape == (1,)
