"""Runners for the experiment catalog.

Each runner receives a fully resolved ExperimentConfig and an
ArtifactWriter, writes its artifacts and returns a summary dict that ends
up in ``summary.json``.
"""

import logging
import math
import time
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

import quench_lab
from quench_lab.core.exceptions import InvalidInputError, QuenchLabError
from quench_lab.core.host import host_metrics
from quench_lab.models.experiment import ExperimentConfig, RunMeta
from quench_lab.models.fits import KappaSweep, LogFit
from quench_lab.models.phase import Observable, SchemeKind, StepScheme
from quench_lab.models.quantum import QuenchDistribution
from quench_lab.models.systems import (
    DeltaMomentumLine,
    DickeSpec,
    DickeSqueezedVacuum,
    HarmonicSpec,
    KickedRotorSpec,
    LMGSpec,
    UniformMomentumLine,
    UniformPhaseLine,
)
from quench_lab.services import observables
from quench_lab.services.artifacts import ArtifactWriter, format_float, make_run_dir
from quench_lab.services.dynamics import (
    TWO_PI,
    dicke_critical_coupling,
    kicked_rotor_kappa_law,
    stable_phase,
)
from quench_lab.services.ensemble_engine import (
    evolve_ensemble,
    evolve_with_snapshots,
    iterate_map_ensemble,
)
from quench_lab.services.initial_conditions import build_initial_ensemble
from quench_lab.services.log_fit import (
    default_window,
    fit_log_divergence,
    log_cutoff_scale,
)
from quench_lab.services.oracles import (
    boltzmann_density,
    boltzmann_marginal,
    dissipative_prefactor,
    harmonic_marginal_exact,
    sup_norm_deviation,
)
from quench_lab.services.plot_scripts import gnuplot_formatter
from quench_lab.services.quantum_ed import mx_tail_exponent, quench_distribution
from quench_lab.services.sweeps import kappa_sweep

logger = logging.getLogger(__name__)

Runner = Callable[[ExperimentConfig, ArtifactWriter], Dict[str, Any]]

# kappa of a uniform phase line, -2 P0/pi with P0 = 1/(2 pi)
LINE_KAPPA = -1.0 / math.pi**2
FIG1_OFFSET = 0.17
# alpha destroys the divergence above its own cutoff, so it is fitted below it
ALPHA_WINDOW_UPPER = 0.02


class RunResult:
    """Where a run wrote its artifacts and what it found."""

    def __init__(self, out_dir: Path, meta: RunMeta, summary: Dict[str, Any]):
        self.out_dir = out_dir
        self.meta = meta
        self.summary = summary


# Shared helpers


def _scheme(config: ExperimentConfig) -> StepScheme:
    return StepScheme(kind=config.scheme or SchemeKind.RK4, dt=config.dt or 0.01)


def _range(config: ExperimentConfig, lo: float, hi: float) -> Tuple[float, float]:
    return tuple(config.hist_range) if config.hist_range else (lo, hi)


def _label(value: float) -> str:
    return format_float(value, 6)


def _symmetrize(config: ExperimentConfig) -> bool:
    return True if config.symmetrize is None else config.symmetrize


def _write_histogram(
    writer: ArtifactWriter,
    config: ExperimentConfig,
    hist,
    name: Optional[str] = None,
    fit: Optional[LogFit] = None,
) -> None:
    path = writer.write_histogram(hist, name)
    if config.gnuplot:
        script = gnuplot_formatter.format_histogram(path.name, hist.name, fit)
        writer.write_text(f"plot_{path.stem}.gp", script)


def _write_sweep(
    writer: ArtifactWriter, config: ExperimentConfig, sweep: KappaSweep
) -> None:
    writer.write_json("sweep.json", sweep)
    if config.gnuplot:
        law = sweep.law or [None] * len(sweep.grid)
        rows = [
            (value, _or_nan(kappa), _or_nan(reference))
            for value, kappa, reference in zip(sweep.grid, sweep.kappa, law)
        ]
        writer.write_csv("sweep.csv", (sweep.parameter, "kappa", "law"), rows)
        writer.write_text(
            "plot_sweep.gp",
            gnuplot_formatter.format_sweep("sweep.json", sweep.parameter),
        )


def _or_nan(value: Optional[float]) -> float:
    return math.nan if value is None else value


def _relative_error(value: Optional[float], reference: float) -> Optional[float]:
    if value is None or reference == 0:
        return None
    return abs(value - reference) / abs(reference)


def _lmg_model(config: ExperimentConfig, **overrides: Any) -> LMGSpec:
    values = {
        "mu": config.mu if config.mu is not None else 1.0,
        "J": config.J if config.J is not None else 0.2,
        "eta": config.eta or 0.0,
        "T": config.temperature or 0.0,
        "flow": config.flow or "reversible",
    }
    values.update(overrides)
    return LMGSpec(**values)


# Classical LMG


def _phase_line(config: ExperimentConfig):
    return build_initial_ensemble(
        UniformPhaseLine(n=0.0), config.trajectories, config.seed
    )


def run_fig1(config: ExperimentConfig, writer: ArtifactWriter) -> Dict[str, Any]:
    """Long-time P(phi) after the quench, with phase-space snapshots."""
    model = _lmg_model(config)
    ens = _phase_line(config)
    observable = observables.phase(center=stable_phase(model), bins=config.bins)
    outcome = evolve_with_snapshots(
        model,
        ens,
        _scheme(config),
        config.t_end,
        [observable],
        burn_in=config.burn_in or 0.0,
        snapshot_times=config.snapshot_times or (),
        threads=config.threads,
    )
    hist = outcome.histograms[0]
    fit = fit_log_divergence(hist, tuple(config.fit_window), _symmetrize(config))

    _write_histogram(writer, config, hist, fit=fit)
    writer.write_json("fit.json", fit)
    initial_phase = ens.coords[:, 0]
    for t in sorted(outcome.snapshots):
        writer.write_snapshot(t, outcome.snapshots[t], initial_phase)

    return {
        "kappa": fit.kappa,
        "offset": fit.offset,
        "expected_kappa": LINE_KAPPA,
        "expected_offset": FIG1_OFFSET,
        "kappa_relative_error": _relative_error(fit.kappa, LINE_KAPPA),
        "in_range_fraction": hist.in_range_fraction(),
        "steps": outcome.steps,
    }


def run_fig3(config: ExperimentConfig, writer: ArtifactWriter) -> Dict[str, Any]:
    """kappa(tau) of the damped LMG against the dissipative prefactor."""
    model = _lmg_model(config)
    eta = model.eta
    lo, hi = _range(config, -0.2, 0.2)
    half_width = max(abs(lo), abs(hi))
    ens = _phase_line(config)
    histograms = {}

    def factory(tau: float):
        observable = observables.zoomed_phase(
            half_width, center=stable_phase(model), bins=config.bins
        )
        (hist,) = evolve_ensemble(
            model, ens, _scheme(config), tau, [observable], threads=config.threads
        )
        histograms[tau] = hist
        return hist

    def law(tau: float) -> float:
        return LINE_KAPPA * dissipative_prefactor(eta, tau)

    # the engine parallelizes each point; the sweep itself runs serially
    sweep = kappa_sweep(
        factory,
        config.tau_values,
        "tau",
        window=tuple(config.fit_window),
        symmetrize=_symmetrize(config),
        law=law,
        threads=1,
    )
    for index, tau in enumerate(sweep.grid):
        if tau in histograms:
            _write_histogram(
                writer, config, histograms[tau], f"hist_phase_tau{_label(tau)}.csv"
            )
            if index == 0:
                _write_histogram(writer, config, histograms[tau])
    _write_sweep(writer, config, sweep)

    return {
        "tau": sweep.grid,
        "kappa": sweep.kappa,
        "law": sweep.law,
        "relative_error": [
            _relative_error(k, l) for k, l in zip(sweep.kappa, sweep.law or [])
        ],
        "failures": len(sweep.failures),
    }


def run_fig4(config: ExperimentConfig, writer: ArtifactWriter) -> Dict[str, Any]:
    """Thermal LMG: stationary P(phi) against the Boltzmann reference."""
    model = _lmg_model(config)
    if model.T <= 0:
        raise InvalidInputError(
            "fig4 needs a positive temperature",
            details={"field": "temperature", "value": model.T},
        )
    center = stable_phase(model)
    ens = _phase_line(config)
    observable = observables.phase(center=center, bins=config.bins)
    (hist,) = evolve_ensemble(
        model,
        ens,
        _scheme(config),
        config.t_end,
        [observable],
        burn_in=config.burn_in or 0.0,
        threads=config.threads,
    )
    fit = fit_log_divergence(hist, tuple(config.fit_window), _symmetrize(config))

    angles = hist.bin_centers() + center
    deviation = sup_norm_deviation(
        hist, boltzmann_marginal(angles, model.T, model.mu, model.J)
    )
    deviation_n0 = sup_norm_deviation(
        hist, boltzmann_density(angles, model.T, model.mu, model.J)
    )

    _write_histogram(writer, config, hist, fit=fit)
    writer.write_json(
        "fit.json",
        {
            **fit.model_dump(mode="json"),
            "boltzmann_deviation": deviation,
            "boltzmann_deviation_n0": deviation_n0,
        },
    )
    return {
        "kappa": fit.kappa,
        "divergent": fit.divergent,
        "boltzmann_deviation": deviation,
        "boltzmann_deviation_n0": deviation_n0,
    }


# Other classical systems


def run_fig2b(config: ExperimentConfig, writer: ArtifactWriter) -> Dict[str, Any]:
    """Dicke model: kappa of the cavity quadrature below and above lambda_c."""
    critical = dicke_critical_coupling(config.omega0, config.omega)
    initial = DickeSqueezedVacuum(
        x_variance=config.x_variance,
        px_variance=config.px_variance,
        omega0=config.omega0,
    )
    sigma_x = math.sqrt(config.x_variance)
    lo, hi = _range(config, -1.0, 1.0)
    ens = build_initial_ensemble(initial, config.trajectories, config.seed)
    # Gaussian density of x/sigma_x at the origin
    p0 = 1.0 / math.sqrt(2.0 * math.pi)
    histograms = {}

    def factory(ratio: float):
        model = DickeSpec(
            omega0=config.omega0, omega=config.omega, lam=ratio * critical, j=config.j
        )
        observable = observables.position(lo, hi, scale=sigma_x, bins=config.bins)
        (hist,) = evolve_ensemble(
            model,
            ens,
            _scheme(config),
            config.t_end,
            [observable],
            burn_in=config.burn_in or 0.0,
            threads=config.threads,
        )
        histograms[ratio] = hist
        return hist

    def law(ratio: float) -> float:
        return -2.0 * p0 / math.pi if ratio < 1.0 else 0.0

    sweep = kappa_sweep(
        factory,
        config.lambda_ratios,
        "lambda/lambda_c",
        window=tuple(config.fit_window),
        symmetrize=_symmetrize(config),
        law=law,
        threads=1,
    )
    for index, ratio in enumerate(sweep.grid):
        if ratio in histograms:
            _write_histogram(
                writer, config, histograms[ratio], f"hist_x_lambda{_label(ratio)}.csv"
            )
            if index == 0:
                _write_histogram(writer, config, histograms[ratio])
    _write_sweep(writer, config, sweep)

    return {
        "lambda_c": critical,
        "lambda_ratio": sweep.grid,
        "kappa": sweep.kappa,
        "law": sweep.law,
        "failures": len(sweep.failures),
    }


def run_fig2c(config: ExperimentConfig, writer: ArtifactWriter) -> Dict[str, Any]:
    """Kicked rotor: kappa(K) against the square-root law."""
    ens = build_initial_ensemble(
        UniformMomentumLine(x=0.0), config.trajectories, config.seed
    )
    p0 = 1.0 / TWO_PI
    histograms = {}

    def factory(K: float):
        observable = observables.rotor_momentum(bins=config.bins)
        hist = iterate_map_ensemble(
            KickedRotorSpec(K=K),
            ens,
            config.n_steps,
            observable,
            threads=config.threads,
        )
        histograms[K] = hist
        return hist

    sweep = kappa_sweep(
        factory,
        config.K_values,
        "K",
        window=tuple(config.fit_window),
        symmetrize=_symmetrize(config),
        law=lambda K: kicked_rotor_kappa_law(K, p0),
        threads=1,
    )
    for index, K in enumerate(sweep.grid):
        if K in histograms:
            _write_histogram(writer, config, histograms[K], f"hist_p_K{_label(K)}.csv")
            if index == 0:
                _write_histogram(writer, config, histograms[K])
    _write_sweep(writer, config, sweep)

    return {
        "K": sweep.grid,
        "kappa": sweep.kappa,
        "law": sweep.law,
        "relative_error": [
            _relative_error(k, l) for k, l in zip(sweep.kappa, sweep.law or [])
        ],
        "failures": len(sweep.failures),
    }


def _whole_periods(t_end: float, omega0: float) -> float:
    period = TWO_PI / omega0
    return period * max(1, round(t_end / period))


def run_appA(config: ExperimentConfig, writer: ArtifactWriter) -> Dict[str, Any]:
    """Harmonic oscillator against the exact arsinh marginal."""
    x0 = config.x0
    p0 = 1.0 / (2.0 * x0)
    expected = -2.0 * p0 / math.pi
    lo, hi = _range(config, -1.0, 1.0)
    ens = build_initial_ensemble(
        DeltaMomentumLine(momentum=0.0, x_range=(-x0, x0)),
        config.trajectories,
        config.seed,
    )

    fits: Dict[str, LogFit] = {}
    cases: Dict[str, Dict[str, Any]] = {}
    densities: List[np.ndarray] = []
    for m, omega0 in config.harmonic_cases:
        key = f"m{_label(m)}_w{_label(omega0)}"
        # averaging over whole periods removes the partial-orbit bias
        t_end = _whole_periods(config.t_end, omega0)
        (hist,) = evolve_ensemble(
            HarmonicSpec(m=m, omega0=omega0),
            ens,
            _scheme(config),
            t_end,
            [observables.position(lo, hi, bins=config.bins)],
            threads=config.threads,
        )
        fit = fit_log_divergence(hist, tuple(config.fit_window), _symmetrize(config))

        centers = hist.bin_centers()
        mask = (np.abs(centers) > 0.01) & (np.abs(centers) < 1.0)
        exact = harmonic_marginal_exact(centers[mask], x0, p0)
        deviation = float(
            np.max(np.abs(hist.density()[mask] - exact)) / np.max(exact)
        )

        _write_histogram(writer, config, hist, f"hist_x_{key}.csv", fit=fit)
        fits[key] = fit
        densities.append(hist.density())
        cases[key] = {
            "m": m,
            "omega0": omega0,
            "t_end": t_end,
            "kappa": fit.kappa,
            "kappa_relative_error": _relative_error(fit.kappa, expected),
            "sup_norm_deviation": deviation,
        }

    writer.write_json("fit.json", fits)
    spread = (
        float(np.max(np.ptp(np.stack(densities), axis=0)))
        if len(densities) > 1
        else 0.0
    )
    return {"expected_kappa": expected, "cases": cases, "max_case_spread": spread}


def _observable_by_name(config: ExperimentConfig, name: str, model) -> Observable:
    bins = config.bins
    if name == "phase":
        center = stable_phase(model) if isinstance(model, LMGSpec) else 0.0
        observable = observables.phase(center=center, bins=bins)
    elif name == "n":
        observable = observables.number(bins)
    elif name == "m_y":
        observable = observables.m_y(bins)
    elif name == "m_x":
        observable = observables.m_x(bins)
    elif name == "x":
        scale = 1.0
        if isinstance(model, DickeSpec) and config.x_variance:
            scale = math.sqrt(config.x_variance)
        return observables.position(*_range(config, -1.0, 1.0), scale=scale, bins=bins)
    elif name == "p":
        observable = observables.rotor_momentum(bins)
    else:
        raise InvalidInputError(
            f"Unknown observable '{name}'",
            details={"field": "observable", "value": name},
        )
    if config.hist_range:
        observable = observable.model_copy(
            update={"lo": config.hist_range[0], "hi": config.hist_range[1]}
        )
    return observable


def run_custom(config: ExperimentConfig, writer: ArtifactWriter) -> Dict[str, Any]:
    """Any model and initial condition named in the configuration."""
    model = config.model
    ens = build_initial_ensemble(config.initial, config.trajectories, config.seed)
    observable = _observable_by_name(config, config.observable, model)

    if isinstance(model, KickedRotorSpec):
        hist = iterate_map_ensemble(
            model, ens, config.n_steps, observable, threads=config.threads
        )
    else:
        (hist,) = evolve_ensemble(
            model,
            ens,
            _scheme(config),
            config.t_end,
            [observable],
            burn_in=config.burn_in or 0.0,
            threads=config.threads,
        )
    window = (
        tuple(config.fit_window) if config.fit_window else default_window(hist.name)
    )
    fit = fit_log_divergence(hist, window, _symmetrize(config))

    _write_histogram(writer, config, hist, fit=fit)
    writer.write_json("fit.json", fit)
    return {
        "model": model.kind,
        "observable": hist.name,
        "kappa": fit.kappa,
        "offset": fit.offset,
        "divergent": fit.divergent,
        "in_range_fraction": hist.in_range_fraction(),
    }


# Quantum LMG


def _quantum_window(config: ExperimentConfig, S: int) -> Tuple[float, float]:
    return tuple(config.fit_window) if config.fit_window else default_window("m_y", S)


def run_fig2a(config: ExperimentConfig, writer: ArtifactWriter) -> Dict[str, Any]:
    """Diagonal-ensemble P(m_y) across J/mu."""
    S, mu = config.S, config.mu
    reference = 0.5 if 0.5 in config.J_values else config.J_values[0]
    distributions: Dict[float, QuenchDistribution] = {}

    def factory(ratio: float):
        dist = quench_distribution(S, mu, ratio * mu, observable="m_y")
        distributions[ratio] = dist
        return dist.to_histogram()

    sweep = kappa_sweep(
        factory,
        config.J_values,
        "J/mu",
        window=_quantum_window(config, S),
        symmetrize=_symmetrize(config),
        threads=config.threads,
    )

    summary: Dict[str, Any] = {"J/mu": sweep.grid, "kappa": sweep.kappa}
    if reference in distributions:
        dist = distributions[reference]
        hist = dist.to_histogram()
        fit = fit_log_divergence(hist, _quantum_window(config, S), _symmetrize(config))
        _write_histogram(writer, config, hist, fit=fit)
        writer.write_distribution(dist)
        writer.write_json("fit.json", fit)
        summary["reference_kappa"] = fit.kappa
        summary["reference_relative_error"] = _relative_error(fit.kappa, LINE_KAPPA)
    _write_sweep(writer, config, sweep)

    if 0.5 in sweep.grid and 1.5 in sweep.grid:
        k_low, k_high = sweep.at(0.5), sweep.at(1.5)
        if k_low is not None and k_high is not None and k_low != 0:
            summary["kappa_ratio_1.5_over_0.5"] = k_high / k_low
    summary["failures"] = len(sweep.failures)
    return summary


def run_appC(config: ExperimentConfig, writer: ArtifactWriter) -> Dict[str, Any]:
    """Finite-size scaling: kappa and the IR cutoff against S."""
    mu, J = config.mu, config.J
    histograms = {}

    def factory(S: float):
        size = int(S)
        hist = quench_distribution(size, mu, J, observable="m_y").to_histogram()
        histograms[size] = hist
        return hist, _quantum_window(config, size)

    sweep = kappa_sweep(
        factory,
        config.spin_sizes,
        "S",
        symmetrize=_symmetrize(config),
        threads=config.threads,
    )

    cutoffs: Dict[str, Optional[float]] = {}
    for S, kappa in zip(sweep.grid, sweep.kappa):
        size = int(S)
        if size not in histograms:
            continue
        hist = histograms[size]
        _write_histogram(writer, config, hist, f"hist_m_y_S{size}.csv")
        try:
            fit = fit_log_divergence(
                hist, _quantum_window(config, size), _symmetrize(config)
            )
            cutoffs[str(size)] = log_cutoff_scale(hist, fit)
        except QuenchLabError as e:
            logger.warning(
                "No cutoff scale", extra={"S": size, "error_code": e.error_code}
            )
            cutoffs[str(size)] = None
    _write_sweep(writer, config, sweep)

    finite = [k for k in sweep.kappa if k is not None]
    return {
        "S": sweep.grid,
        "kappa": sweep.kappa,
        "kappa_spread": (max(finite) - min(finite)) / abs(np.mean(finite))
        if finite
        else None,
        "cutoff": cutoffs,
        "cutoff_times_S": {
            s: c * int(s) if c is not None else None for s, c in cutoffs.items()
        },
        "failures": len(sweep.failures),
    }


def run_appD(config: ExperimentConfig, writer: ArtifactWriter) -> Dict[str, Any]:
    """Tail exponent of P(m_x) approaching the pole."""
    dist = quench_distribution(config.S, config.mu, config.J, observable="m_x")
    window = tuple(config.fit_window) if config.fit_window else None
    pole = config.pole if config.pole is not None else -math.copysign(1.0, config.J)
    exponent = mx_tail_exponent(dist, pole=pole, window=window)

    _write_histogram(writer, config, dist.to_histogram())
    writer.write_distribution(dist)
    result = {"tail_exponent": exponent, "pole": pole, "window": window}
    writer.write_json("fit.json", result)
    return {**result, "expected_exponent": -0.5}


def run_appG(config: ExperimentConfig, writer: ArtifactWriter) -> Dict[str, Any]:
    """Extended LMG: baseline, alpha (relevant) and beta (irrelevant) cases."""
    S, mu, J = config.S, config.mu, config.J
    window = _quantum_window(config, S)
    alpha_window = (
        tuple(config.fit_window)
        if config.fit_window
        else (window[0], ALPHA_WINDOW_UPPER)
    )
    cases = {
        "baseline": ((0.0, 0.0), window, _symmetrize(config)),
        # alpha breaks m_y -> -m_y, so only the positive side is fitted
        "alpha": ((config.alpha, 0.0), alpha_window, False),
        "beta": ((0.0, config.beta), window, _symmetrize(config)),
    }

    fits: Dict[str, LogFit] = {}
    summary: Dict[str, Any] = {}
    for case, ((alpha, beta), case_window, symmetrize) in cases.items():
        hist = quench_distribution(S, mu, J, alpha, beta, "m_y").to_histogram()
        fit = fit_log_divergence(hist, case_window, symmetrize)
        _write_histogram(writer, config, hist, f"hist_m_y_{case}.csv", fit=fit)
        fits[case] = fit
        summary[case] = {
            "alpha": alpha,
            "beta": beta,
            "kappa": fit.kappa,
            "divergent": fit.divergent,
        }
    writer.write_json("fit.json", fits)
    summary["expected_kappa"] = LINE_KAPPA
    return summary


RUNNERS: Dict[str, Runner] = {
    "fig1": run_fig1,
    "fig2a": run_fig2a,
    "fig2b": run_fig2b,
    "fig2c": run_fig2c,
    "fig3": run_fig3,
    "fig4": run_fig4,
    "appA": run_appA,
    "appC": run_appC,
    "appD": run_appD,
    "appG": run_appG,
    "custom": run_custom,
}


def run_experiment(config: ExperimentConfig) -> RunResult:
    """Run one catalog experiment and write its artifacts.

    Raises:
        QuenchLabError: Any validation, numerical, analysis or artifact failure
    """
    out_dir = Path(config.out_dir or make_run_dir(config.experiment, config.seed))
    config = config.model_copy(update={"out_dir": out_dir})
    writer = ArtifactWriter(out_dir)

    logger.info(
        "Experiment started",
        extra={
            "experiment": config.experiment,
            "seed": config.seed,
            "out_dir": str(out_dir),
        },
    )
    started = time.perf_counter()
    summary = RUNNERS[config.experiment](config, writer)
    wall_time = time.perf_counter() - started

    writer.write_json("summary.json", summary)
    meta = RunMeta(
        config=config.model_dump(mode="json"),
        seed=config.seed,
        wall_time_seconds=round(wall_time, 3),
        version=quench_lab.__version__,
        host=host_metrics(),
        artifacts=list(writer.written) + ["run_meta.json"],
    )
    writer.write_json("run_meta.json", meta)

    logger.info(
        "Experiment finished",
        extra={
            "experiment": config.experiment,
            "wall_time_seconds": meta.wall_time_seconds,
            "artifacts": len(meta.artifacts),
        },
    )
    return RunResult(out_dir, meta, summary)
