"""Fixed-step integrators for single points and whole ensembles."""

import logging
from typing import Optional

import numpy as np

from quench_lab.core.exceptions import (
    InvalidInputError,
    SingularCoordinateError,
    StepDivergedError,
)
from quench_lab.core.settings import settings
from quench_lab.models.phase import PhasePoint, SchemeKind, StepScheme
from quench_lab.models.systems import KickedRotorSpec, LMGSpec
from quench_lab.services.dynamics import (
    POLE_MARGIN,
    canonical_split,
    chirikov_step,
    model_rhs,
    noise_amplitude,
)

logger = logging.getLogger(__name__)

# Fixed-point iterations of the implicit leapfrog stages
LEAPFROG_TOLERANCE = 1e-14
LEAPFROG_MAX_ITERATIONS = 8


def _rk4(model, coords: np.ndarray, dt: float) -> np.ndarray:
    k1 = model_rhs(model, coords)
    k2 = model_rhs(model, coords + 0.5 * dt * k1)
    k3 = model_rhs(model, coords + 0.5 * dt * k2)
    k4 = model_rhs(model, coords + dt * k3)
    return coords + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _euler(model, coords: np.ndarray, dt: float) -> np.ndarray:
    return coords + dt * model_rhs(model, coords)


def _fixed_point(update, start: np.ndarray) -> np.ndarray:
    current = start
    for _ in range(LEAPFROG_MAX_ITERATIONS):
        nxt = update(current)
        if np.max(np.abs(nxt - current), initial=0.0) < LEAPFROG_TOLERANCE:
            return nxt
        current = nxt
    return current


def _leapfrog(model, coords: np.ndarray, dt: float) -> np.ndarray:
    """Partitioned Stormer-Verlet step.

    Explicit for separable Hamiltonians; otherwise the two implicit stages
    are solved by fixed-point iteration. Symplectic for Hamiltonian flows and
    time-reversible for reversible ones.
    """
    q_idx, p_idx = (list(i) for i in canonical_split(model))
    h = 0.5 * dt
    q0 = coords[..., q_idx]
    p0 = coords[..., p_idx]

    def assemble(q: np.ndarray, p: np.ndarray) -> np.ndarray:
        out = np.empty_like(coords)
        out[..., q_idx] = q
        out[..., p_idx] = p
        return out

    def field(q: np.ndarray, p: np.ndarray):
        f = model_rhs(model, assemble(q, p))
        return f[..., q_idx], f[..., p_idx]

    # p_half = p0 + h f_p(q0, p_half)
    p_half = _fixed_point(lambda p: p0 + h * field(q0, p)[1], p0 + h * field(q0, p0)[1])
    fq0 = field(q0, p_half)[0]
    # q1 = q0 + h (f_q(q0, p_half) + f_q(q1, p_half))
    q1 = _fixed_point(
        lambda q: q0 + h * (fq0 + field(q, p_half)[0]), q0 + 2.0 * h * fq0
    )
    p1 = p_half + h * field(q1, p_half)[1]
    return assemble(q1, p1)


def _reflect_poles(coords: np.ndarray, dt: float) -> np.ndarray:
    """Reflect small LMG overshoots of |n| = 1 back inside the sphere."""
    n = coords[..., 1]
    edge = 1.0 - POLE_MARGIN
    over = np.abs(n) - edge
    if not np.any(over >= 0):
        return coords
    if np.any(over >= 10.0 * dt):
        index = int(np.flatnonzero(np.atleast_1d(over >= 10.0 * dt))[0])
        raise SingularCoordinateError(
            "LMG step overshot the pole |n| = 1",
            details={"index": index, "overshoot": float(np.atleast_1d(over)[index])},
        )
    reflected = np.where(over >= 0, np.sign(n) * (edge - over - POLE_MARGIN), n)
    out = coords.copy()
    out[..., 1] = reflected
    return out


def advance(
    model,
    coords: np.ndarray,
    scheme: StepScheme,
    noise: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Advance coordinates of one point (d,) or many (N, d) by one step.

    ``noise`` holds standard normal draws, one per point, used by
    euler_maruyama on the momentum-like coordinate.
    """
    coords = np.asarray(coords, dtype=np.float64)
    kind = scheme.kind

    if kind == SchemeKind.DISCRETE_MAP:
        if not isinstance(model, KickedRotorSpec):
            raise InvalidInputError("discrete_map requires the kicked rotor model")
        x, p = chirikov_step(coords[..., 0], coords[..., 1], model.K)
        return np.stack([x, p], axis=-1)
    if isinstance(model, KickedRotorSpec):
        raise InvalidInputError(
            "The kicked rotor only supports the discrete_map scheme",
            details={"scheme": kind.value},
        )

    dt = scheme.dt
    if kind == SchemeKind.RK4:
        out = _rk4(model, coords, dt)
    elif kind == SchemeKind.SYMPLECTIC_LEAPFROG:
        out = _leapfrog(model, coords, dt)
    elif kind == SchemeKind.EULER:
        out = _euler(model, coords, dt)
    elif kind == SchemeKind.EULER_MARUYAMA:
        out = _euler(model, coords, dt)
        amplitude = noise_amplitude(model)
        if amplitude > 0.0:
            if noise is None:
                raise InvalidInputError("euler_maruyama needs a noise draw")
            _, p_idx = canonical_split(model)
            out[..., p_idx[0]] += amplitude * np.sqrt(dt) * np.asarray(noise)
    else:  # pragma: no cover - exhaustive over SchemeKind
        raise InvalidInputError(f"Unknown scheme {kind}")

    if isinstance(model, LMGSpec):
        out = _reflect_poles(out, dt)
    return out


def check_bounded(coords: np.ndarray, t: float, offset: int = 0) -> None:
    """Raise StepDivergedError for the first non-finite or out-of-bound row."""
    bound = settings.divergence_bound
    flat = np.atleast_2d(coords)
    bad = ~np.all(np.isfinite(flat) & (np.abs(flat) <= bound), axis=-1)
    if np.any(bad):
        trajectory_id = offset + int(np.flatnonzero(bad)[0])
        logger.warning(
            "Trajectory diverged",
            extra={"trajectory_id": trajectory_id, "time": t, "bound": bound},
        )
        raise StepDivergedError(trajectory_id, t)


def step(
    model,
    point: PhasePoint,
    scheme: StepScheme,
    noise: Optional[float] = None,
    trajectory_id: int = 0,
) -> PhasePoint:
    """Advance a single phase point by dt, or by one map iteration.

    Raises:
        InvalidInputError: If the point does not match the model dimension
        StepDivergedError: If the result is non-finite or out of bounds
    """
    if point.dimension != model.dimension:
        raise InvalidInputError(
            f"Point has {point.dimension} coordinates, model needs {model.dimension}",
            details={"model": model.kind},
        )
    draw = None if noise is None else np.asarray(noise, dtype=np.float64)
    new = advance(model, point.as_array(), scheme, draw)
    t_new = point.t + (1.0 if scheme.kind == SchemeKind.DISCRETE_MAP else scheme.dt)
    check_bounded(new, t_new, trajectory_id)
    return PhasePoint(coords=tuple(float(c) for c in new), t=t_new)
