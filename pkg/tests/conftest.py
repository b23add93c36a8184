"""Common test fixtures and configuration."""

import math
import os

import numpy as np
import pytest

# Set testing environment BEFORE importing settings
os.environ["TESTING"] = "true"

from quench_lab.core.settings import settings  # noqa: E402
from quench_lab.models.phase import TimeAveragedHistogram  # noqa: E402
from quench_lab.models.systems import LMGSpec  # noqa: E402


@pytest.fixture
def small_shards(monkeypatch):
    """Force several shards on small ensembles."""
    monkeypatch.setattr(settings, "shard_size", 16)
    return settings


@pytest.fixture
def canonical_lmg() -> LMGSpec:
    """Conservative LMG at J/mu = 0.2."""
    return LMGSpec(mu=1.0, J=0.2, flow="canonical")


@pytest.fixture
def log_histogram():
    """Histogram whose density is exactly kappa*log|v| + offset at bin centers."""

    def build(kappa: float = -0.1, offset: float = 0.2, n_bins: int = 400):
        hist = TimeAveragedHistogram.empty(-math.pi, math.pi, n_bins, name="phase")
        centers = hist.bin_centers()
        density = kappa * np.log(np.abs(centers)) + offset
        density = np.clip(density, 1e-6, None)
        hist.total_weight = 1e6
        hist.counts = density * hist.bin_width * hist.total_weight
        return hist

    return build


@pytest.fixture
def out_dir(tmp_path):
    """Fresh output directory for artifact tests."""
    path = tmp_path / "run"
    path.mkdir()
    return path
