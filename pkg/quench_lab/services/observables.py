"""Catalog of observables projected from ensemble coordinates."""

import math

import numpy as np

from quench_lab.core.settings import settings
from quench_lab.models.phase import Observable
from quench_lab.services.dynamics import wrap_centered


def phase(
    center: float = 0.0, bins: int | None = None, name: str = "phase"
) -> Observable:
    """phi - center wrapped to [-pi, pi)."""
    return Observable(
        name=name,
        projection=lambda c: wrap_centered(c[:, 0] - center),
        lo=-math.pi,
        hi=math.pi,
        bins=bins or settings.default_bins,
    )


def zoomed_phase(
    half_width: float, center: float = 0.0, bins: int | None = None
) -> Observable:
    """phi - center on a narrow window (-half_width, half_width)."""
    return Observable(
        name="phase",
        projection=lambda c: wrap_centered(c[:, 0] - center),
        lo=-half_width,
        hi=half_width,
        bins=bins or settings.default_bins,
    )


def number(bins: int | None = None) -> Observable:
    """Population imbalance n."""
    return Observable(
        name="n",
        projection=lambda c: c[:, 1],
        lo=-1.0,
        hi=1.0,
        bins=bins or settings.default_bins,
    )


def m_y(bins: int | None = None) -> Observable:
    """sqrt(1-n^2) sin(phi)."""
    return Observable(
        name="m_y",
        projection=lambda c: np.sqrt(np.clip(1.0 - c[:, 1] ** 2, 0.0, None))
        * np.sin(c[:, 0]),
        lo=-1.0,
        hi=1.0,
        bins=bins or settings.default_bins,
    )


def m_x(bins: int | None = None) -> Observable:
    """sqrt(1-n^2) cos(phi)."""
    return Observable(
        name="m_x",
        projection=lambda c: np.sqrt(np.clip(1.0 - c[:, 1] ** 2, 0.0, None))
        * np.cos(c[:, 0]),
        lo=-1.0,
        hi=1.0,
        bins=bins or settings.default_bins,
    )


def position(
    lo: float = -1.0, hi: float = 1.0, scale: float = 1.0, bins: int | None = None
) -> Observable:
    """First coordinate divided by ``scale`` (x, or x/sigma_x for Dicke)."""
    return Observable(
        name="x",
        projection=lambda c: c[:, 0] / scale,
        lo=lo,
        hi=hi,
        bins=bins or settings.default_bins,
    )


def rotor_momentum(bins: int | None = None) -> Observable:
    """Kicked-rotor momentum wrapped to [-pi, pi) around the stable point p = 0."""
    return Observable(
        name="p",
        projection=lambda c: wrap_centered(c[:, 1]),
        lo=-math.pi,
        hi=math.pi,
        bins=bins or settings.default_bins,
    )
