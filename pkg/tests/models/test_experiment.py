"""Tests for experiment configuration models."""

import pytest
from pydantic import ValidationError

from quench_lab.models.experiment import ExperimentConfig, RunMeta
from quench_lab.models.systems import KickedRotorSpec


class TestExperimentConfig:
    """Test field validation of experiment configs."""

    def test_minimal(self):
        """Test only the experiment name is required."""
        config = ExperimentConfig(experiment="fig1")
        assert config.seed == 0
        assert config.gnuplot is False
        assert "dt" in config.unset_fields()

    def test_unknown_experiment(self):
        """Test names outside the catalog are rejected."""
        with pytest.raises(ValidationError):
            ExperimentConfig(experiment="fig9")

    def test_unknown_field(self):
        """Test typos in field names are rejected."""
        with pytest.raises(ValidationError):
            ExperimentConfig(experiment="fig1", trajectorys=10)

    @pytest.mark.parametrize("field", ["dt", "t_end", "x0", "x_variance"])
    def test_positive_fields(self, field):
        """Test positive-only fields reject zero."""
        with pytest.raises(ValidationError, match=f"{field} must be positive"):
            ExperimentConfig(experiment="custom", **{field: 0.0})

    def test_burn_in_before_t_end(self):
        """Test burn_in must precede t_end."""
        with pytest.raises(ValidationError, match="burn_in"):
            ExperimentConfig(experiment="fig4", t_end=10.0, burn_in=10.0)

    def test_grid_ascending(self):
        """Test sweep grids must ascend strictly."""
        with pytest.raises(ValidationError, match="ascending"):
            ExperimentConfig(experiment="fig2c", K_values=[1.0, 1.0])

    @pytest.mark.parametrize(
        "field,grid",
        [
            ("K_values", [-0.5, 0.5]),
            ("lambda_ratios", [-0.1, 0.5]),
            ("tau_values", [0.0, 5.0]),
            ("spin_sizes", [0, 100]),
        ],
    )
    def test_grid_sign(self, field, grid):
        """Test sweep grids reject values outside the parameter's domain."""
        with pytest.raises(ValidationError, match=field):
            ExperimentConfig(experiment="fig2c", **{field: grid})

    def test_fit_window(self):
        """Test the fit window ordering."""
        with pytest.raises(ValidationError, match="v_min"):
            ExperimentConfig(experiment="fig1", fit_window=(0.3, 0.1))

    def test_pole(self):
        """Test the m_x pole is +1 or -1."""
        assert ExperimentConfig(experiment="appD", pole=-1).pole == -1.0
        with pytest.raises(ValidationError):
            ExperimentConfig(experiment="appD", pole=0.5)

    def test_spin_cap(self):
        """Test spin sizes above the dense-solver cap are rejected."""
        with pytest.raises(ValidationError):
            ExperimentConfig(experiment="appD", S=5000)

    def test_nested_model(self):
        """Test custom models are parsed from plain dicts."""
        config = ExperimentConfig(
            experiment="custom",
            model={"kind": "kicked_rotor", "K": 0.5},
            initial={"kind": "uniform_momentum"},
            observable="p",
        )
        assert isinstance(config.model, KickedRotorSpec)


class TestRunMeta:
    """Test run metadata."""

    def test_negative_wall_time(self):
        """Test wall time is non-negative."""
        with pytest.raises(ValidationError):
            RunMeta(config={}, seed=0, wall_time_seconds=-1.0, version="0.1.0")
