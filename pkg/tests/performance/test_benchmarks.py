"""Performance benchmarks for the hot paths."""

import pytest

from quench_lab.models.phase import StepScheme
from quench_lab.models.systems import (
    KickedRotorSpec,
    LMGSpec,
    UniformMomentumLine,
    UniformPhaseLine,
)
from quench_lab.services import observables
from quench_lab.services.ensemble_engine import evolve_ensemble, iterate_map_ensemble
from quench_lab.services.initial_conditions import build_initial_ensemble
from quench_lab.services.quantum_ed import quench_distribution


@pytest.mark.benchmark
@pytest.mark.slow
class TestPerformanceBenchmarks:
    """Throughput of the ensemble engine and the eigensolver."""

    @pytest.mark.benchmark(group="ensemble")
    def test_lmg_leapfrog_ensemble(self, benchmark):
        """Test 4096 LMG trajectories over 1000 leapfrog steps."""
        ens = build_initial_ensemble(UniformPhaseLine(n=0.0), 4096, seed=1)
        model = LMGSpec(mu=1.0, J=0.2, flow="canonical")
        scheme = StepScheme(kind="symplectic_leapfrog", dt=0.05)

        (hist,) = benchmark(
            evolve_ensemble, model, ens, scheme, 50.0, [observables.phase(bins=400)]
        )
        assert hist.in_range_fraction() == pytest.approx(1.0)

    @pytest.mark.benchmark(group="ensemble")
    def test_kicked_rotor_map(self, benchmark):
        """Test 10000 rotor trajectories over 1000 kicks."""
        ens = build_initial_ensemble(UniformMomentumLine(x=0.0), 10000, seed=1)
        observable = observables.rotor_momentum(bins=400)

        hist = benchmark(
            iterate_map_ensemble, KickedRotorSpec(K=1.0), ens, 1000, observable
        )
        assert hist.total_weight > 0

    @pytest.mark.benchmark(group="quantum")
    def test_diagonal_ensemble(self, benchmark):
        """Test the S = 1000 diagonal ensemble of m_y."""
        dist = benchmark.pedantic(
            quench_distribution, args=(1000, 1.0, 0.5), rounds=1, iterations=1
        )
        assert dist.probabilities.sum() == pytest.approx(1.0, abs=1e-10)
