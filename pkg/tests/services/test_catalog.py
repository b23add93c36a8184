"""Tests for the experiment catalog."""

import typing

import pytest

from quench_lab.models.experiment import ExperimentConfig, ExperimentName
from quench_lab.services.catalog import CATALOG
from quench_lab.services.experiments import RUNNERS


class TestCatalog:
    """Test catalog completeness."""

    def test_names_match(self):
        """Test every experiment name has an entry and a runner."""
        names = set(typing.get_args(ExperimentName))
        assert set(CATALOG) == names
        assert set(RUNNERS) == names

    @pytest.mark.parametrize("name", sorted(CATALOG))
    def test_presets_validate(self, name):
        """Test every preset is a valid configuration."""
        entry = CATALOG[name]
        config = ExperimentConfig(experiment=name, **entry.preset)
        assert config.experiment == name
        assert entry.artifacts

    def test_fig1_preset(self):
        """Test the reference LMG setup."""
        preset = CATALOG["fig1"].preset
        assert preset["J"] == 0.2
        assert preset["trajectories"] == 4000
        assert preset["flow"] == "reversible"

    def test_dicke_preset_protocol(self):
        """Test the Dicke run defaults to Euler at dt = 0.01 up to t = 100."""
        preset = CATALOG["fig2b"].preset
        assert preset["scheme"] == "euler"
        assert preset["dt"] == 0.01
        assert preset["t_end"] == 100.0

    def test_dicke_scheme_override(self):
        """Test rk4 stays available as an override of the Dicke default."""
        config = ExperimentConfig(
            experiment="fig2b", **{**CATALOG["fig2b"].preset, "scheme": "rk4"}
        )
        assert config.scheme == "rk4"

    def test_extended_lmg_preset(self):
        """Test the irrelevant-perturbation case stays off the marginal line."""
        preset = CATALOG["appG"].preset
        assert preset["mu"] - preset["J"] - preset["beta"] > 0
