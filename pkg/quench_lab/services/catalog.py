"""Experiment catalog: provenance, artifacts and preset defaults."""

import math
from typing import Any, Dict, List

from pydantic import BaseModel, Field


class CatalogEntry(BaseModel):
    """One named experiment."""

    name: str = Field(..., description="Experiment name")
    provenance: str = Field(..., description="Figure or appendix reproduced")
    description: str = Field(..., description="What the run does")
    artifacts: List[str] = Field(..., description="Files written besides run_meta")
    preset: Dict[str, Any] = Field(
        default_factory=dict, description="Defaults below file and flag values"
    )


_PHASE_WINDOW = [1e-2, 0.3]

CATALOG: Dict[str, CatalogEntry] = {
    entry.name: entry
    for entry in [
        CatalogEntry(
            name="fig1",
            provenance="Fig. 1",
            description="Classical LMG quench from the line n=0; long-time P(phi)",
            artifacts=["hist_phase.csv", "fit.json", "snapshots_<t>.csv"],
            preset={
                "mu": 1.0,
                "J": 0.2,
                "flow": "reversible",
                "trajectories": 4000,
                "scheme": "symplectic_leapfrog",
                "dt": 0.05,
                "t_end": 500.0,
                "burn_in": 0.0,
                "bins": 400,
                "fit_window": _PHASE_WINDOW,
                "symmetrize": True,
                "snapshot_times": [0.0, 5.0, 20.0, 100.0],
            },
        ),
        CatalogEntry(
            name="fig2a",
            provenance="Fig. 2(a)",
            description="Quantum LMG diagonal ensemble of m_y across J/mu",
            artifacts=["hist_m_y.csv", "dist_m_y.csv", "fit.json", "sweep.json"],
            preset={
                "S": 1000,
                "mu": 1.0,
                "J": 0.5,
                "J_values": [0.25, 0.5, 0.75, 1.25, 1.5, 1.75],
                "symmetrize": True,
            },
        ),
        CatalogEntry(
            name="fig2b",
            provenance="Fig. 2(b), Appendix E",
            description="Semiclassical Dicke model across lambda/lambda_c",
            artifacts=["hist_x.csv", "hist_x_lambda<r>.csv", "sweep.json"],
            preset={
                "omega0": 1.0 / math.sqrt(2.0),
                "omega": math.sqrt(3.0),
                "j": 1e6,
                "x_variance": 1e6 / 4.0,
                "px_variance": 1e-6,
                "lambda_ratios": [0.5, 0.8, 1.2],
                "trajectories": 10000,
                "scheme": "euler",
                "dt": 0.01,
                "t_end": 100.0,
                "burn_in": 0.0,
                "bins": 400,
                "hist_range": [-1.0, 1.0],
                "fit_window": [2e-2, 0.3],
                "symmetrize": True,
            },
        ),
        CatalogEntry(
            name="fig2c",
            provenance="Fig. 2(c)",
            description="Kicked rotor momentum distribution across K",
            artifacts=["hist_p.csv", "hist_p_K<K>.csv", "sweep.json"],
            preset={
                "K_values": [0.5, 1.0, 2.0, 3.0, 3.5, 5.0],
                "trajectories": 10000,
                "n_steps": 10000,
                "bins": 400,
                "fit_window": [5e-2, 1.0],
                "symmetrize": True,
            },
        ),
        CatalogEntry(
            name="fig3",
            provenance="Fig. 3",
            description="Dissipative LMG; kappa against the averaging time tau",
            artifacts=["hist_phase.csv", "hist_phase_tau<tau>.csv", "sweep.json"],
            preset={
                "mu": 1.0,
                "J": 0.2,
                "eta": 0.1,
                "temperature": 0.0,
                "flow": "reversible",
                "tau_values": [5.0, 10.0, 20.0, 30.0],
                "trajectories": 4000,
                "scheme": "euler_maruyama",
                "dt": 1e-3,
                "bins": 400,
                "hist_range": [-0.2, 0.2],
                "fit_window": [3e-3, 3e-2],
                "symmetrize": True,
            },
        ),
        CatalogEntry(
            name="fig4",
            provenance="Fig. 4",
            description="Thermal LMG at T=0.1 against the Boltzmann reference",
            artifacts=["hist_phase.csv", "fit.json"],
            preset={
                "mu": 1.0,
                "J": 0.2,
                "eta": 0.1,
                "temperature": 0.1,
                "flow": "canonical",
                "trajectories": 4000,
                "scheme": "euler_maruyama",
                "dt": 1e-3,
                "t_end": 60.0,
                "burn_in": 30.0,
                "bins": 400,
                "fit_window": _PHASE_WINDOW,
                "symmetrize": True,
            },
        ),
        CatalogEntry(
            name="appA",
            provenance="Appendix A",
            description="Harmonic oscillator from delta(p) against the exact marginal",
            artifacts=["hist_x_m<m>_w<omega0>.csv", "fit.json"],
            preset={
                "harmonic_cases": [[1.0, 1.0], [2.0, 3.0]],
                "x0": 5.0,
                "trajectories": 2000,
                "scheme": "symplectic_leapfrog",
                "dt": 0.01,
                "t_end": 200.0,
                "bins": 400,
                "hist_range": [-1.0, 1.0],
                "fit_window": [1e-2, 0.3],
                "symmetrize": True,
            },
        ),
        CatalogEntry(
            name="appC",
            provenance="Appendix C",
            description="Quantum finite-size scaling of kappa and the IR cutoff",
            artifacts=["hist_m_y_S<S>.csv", "sweep.json"],
            preset={
                "mu": 1.0,
                "J": 0.5,
                "spin_sizes": [250, 500, 1000],
                "symmetrize": True,
            },
        ),
        CatalogEntry(
            name="appD",
            provenance="Appendix D",
            description="Square-root divergence of P(m_x) at its pole",
            artifacts=["hist_m_x.csv", "dist_m_x.csv", "fit.json"],
            preset={"S": 1000, "mu": 1.0, "J": 0.5, "pole": -1.0},
        ),
        CatalogEntry(
            name="appG",
            provenance="Appendix G",
            description="Extended LMG: relevant alpha against irrelevant beta",
            artifacts=["hist_m_y_<case>.csv", "fit.json"],
            preset={
                "S": 1000,
                "mu": 1.0,
                "J": 0.5,
                "alpha": 0.1,
                # beta/mu = 0.5 makes mu - J - beta vanish at J/mu = 0.5
                "beta": 0.2,
                "symmetrize": True,
            },
        ),
        CatalogEntry(
            name="custom",
            provenance="none",
            description="Any model and initial condition from the config file",
            artifacts=["hist_<observable>.csv", "fit.json"],
            preset={
                "trajectories": 4000,
                "scheme": "rk4",
                "dt": 0.01,
                "t_end": 100.0,
                "burn_in": 0.0,
                "n_steps": 1000,
                "bins": 400,
                "symmetrize": True,
            },
        ),
    ]
}
