"""Analytic geodesics between two pure states and their parametrizations.

Two equivalent parametrizations of the same ray-space curve are provided:
the affine-looking ``xi`` in ``[0, 1]`` and the angular ``theta`` in
``[0, pi]``. Both start at ``a`` and end at ``phase * b``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParamOutOfRange
from .fsmetric import DEFAULT_CONVENTION, MetricConvention, SampledCurve
from .statespace import PureState, check_distinct_rays, overlap, ray_angle

_EDGE_TOL = 1e-12


@dataclass(frozen=True)
class GeodesicSpec:
    a: PureState
    b: PureState
    overlap_mag: float
    phase: complex


def make_geodesic(a: PureState, b: PureState) -> GeodesicSpec:
    ov_ba = overlap(b, a)
    mag = abs(ov_ba)
    check_distinct_rays(mag)
    return GeodesicSpec(a, b, float(mag), complex(ov_ba / mag))


def _check_range(name: str, value: float, upper: float) -> float:
    if not (-_EDGE_TOL <= value <= upper + _EDGE_TOL):
        raise ParamOutOfRange(f"{name}={value!r} outside [0, {upper}]")
    return min(max(value, 0.0), upper)


def xi_normalization(spec: GeodesicSpec, xi: float) -> float:
    return 1.0 / np.sqrt(1.0 - 2.0 * xi * (1.0 - xi) * (1.0 - spec.overlap_mag))


def theta_normalization(spec: GeodesicSpec, theta: float) -> float:
    return 1.0 / np.sqrt(1.0 + np.sin(theta) * spec.overlap_mag)


def point_xi(spec: GeodesicSpec, xi: float) -> PureState:
    xi = _check_range("xi", xi, 1.0)
    return PureState(xi_states(spec, np.array([xi]))[0])


def point_theta(spec: GeodesicSpec, theta: float) -> PureState:
    theta = _check_range("theta", theta, np.pi)
    return PureState(theta_states(spec, np.array([theta]))[0])


def xi_of_theta(theta: float) -> float:
    theta = _check_range("theta", theta, np.pi)
    # tan(t/2)/(1 + tan(t/2)) rewritten to stay finite at theta = pi
    s, c = np.sin(theta / 2), np.cos(theta / 2)
    return float(s / (s + c))


def theta_of_xi(xi: float) -> float:
    xi = _check_range("xi", xi, 1.0)
    return float(2.0 * np.arctan2(xi, 1.0 - xi))


def analytic_length(spec: GeodesicSpec, conv: MetricConvention = DEFAULT_CONVENTION) -> float:
    return conv.lam * ray_angle(spec.a, spec.b)


def metric_closed_form(
    spec: GeodesicSpec, theta: float, conv: MetricConvention = DEFAULT_CONVENTION
) -> float:
    theta = _check_range("theta", theta, np.pi)
    a = spec.overlap_mag
    return conv.lam**2 * (1.0 - a * a) / (4.0 * (1.0 + a * np.sin(theta)) ** 2)


def theta_states(spec: GeodesicSpec, thetas: np.ndarray) -> np.ndarray:
    """Vectorized :func:`point_theta`; returns an ``(n, dim)`` array."""
    thetas = np.asarray(thetas, dtype=float)
    if thetas.size and (thetas.min() < -_EDGE_TOL or thetas.max() > np.pi + _EDGE_TOL):
        raise ParamOutOfRange("theta samples must lie in [0, pi]")
    thetas = np.clip(thetas, 0.0, np.pi)
    cos_half = np.cos(thetas / 2)
    cos_half[thetas == np.pi] = 0.0
    norm = 1.0 / np.sqrt(1.0 + np.sin(thetas) * spec.overlap_mag)
    return (norm * cos_half)[:, None] * spec.a.amplitudes + (
        norm * np.sin(thetas / 2)
    )[:, None] * (spec.phase * spec.b.amplitudes)


def xi_states(spec: GeodesicSpec, xis: np.ndarray) -> np.ndarray:
    """Vectorized :func:`point_xi`; returns an ``(n, dim)`` array."""
    xis = np.asarray(xis, dtype=float)
    if xis.size and (xis.min() < -_EDGE_TOL or xis.max() > 1.0 + _EDGE_TOL):
        raise ParamOutOfRange("xi samples must lie in [0, 1]")
    xis = np.clip(xis, 0.0, 1.0)
    norm = 1.0 / np.sqrt(1.0 - 2.0 * xis * (1.0 - xis) * (1.0 - spec.overlap_mag))
    return (norm * (1.0 - xis))[:, None] * spec.a.amplitudes + (norm * xis)[:, None] * (
        spec.phase * spec.b.amplitudes
    )


def sample_theta(spec: GeodesicSpec, n: int) -> SampledCurve:
    """``n`` samples at uniform ``theta`` over ``[0, pi]``."""
    thetas = np.linspace(0.0, np.pi, n)
    return SampledCurve(thetas, theta_states(spec, thetas))


def sample_xi(spec: GeodesicSpec, n: int) -> SampledCurve:
    """``n`` samples at uniform ``xi`` over ``[0, 1]``."""
    xis = np.linspace(0.0, 1.0, n)
    return SampledCurve(xis, xi_states(spec, xis))
