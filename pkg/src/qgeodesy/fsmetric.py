"""Fubini-Study metric along sampled curves, finite distances and path length."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    CurveTooCoarse,
    CurveTooShort,
    DimensionMismatch,
    GeometryError,
    IndexOutOfRange,
)
from .statespace import PureState, overlap

logger = logging.getLogger(__name__)

# local spacing must not exceed this fraction of the parameter range
RESOLUTION_GUARD = 1e-2
BETA_IMAG_WARN = 1e-8


@dataclass(frozen=True)
class MetricConvention:
    """Scale factor of the metric; ``lam = 2`` makes the Bloch sphere unit radius."""

    lam: float = 2.0

    def __post_init__(self):
        if not self.lam > 0:
            raise GeometryError(f"metric scale must be positive, got {self.lam}")


DEFAULT_CONVENTION = MetricConvention()


@dataclass(frozen=True)
class MetricSample:
    gamma: float
    beta: float
    g: float


@dataclass(frozen=True, eq=False)
class SampledCurve:
    """Ordered samples ``(param, state)`` of a curve of pure states.

    ``states`` is an ``(n, dim)`` complex array whose rows are unit vectors.
    """

    params: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        params = np.array(self.params, dtype=float, copy=True).ravel()
        states = np.array(self.states, dtype=np.complex128, copy=True)
        if states.ndim != 2 or states.shape[0] != params.size:
            raise DimensionMismatch(
                f"need one state row per parameter, got {states.shape} for {params.size}"
            )
        if params.size < 2:
            raise CurveTooShort("a curve needs at least two samples")
        if states.shape[1] < 2:
            raise DimensionMismatch("states must have dimension >= 2")
        if np.any(np.diff(params) <= 0):
            raise GeometryError("curve parameters must be strictly increasing")
        norms = np.einsum("ij,ij->i", states.conj(), states).real
        if np.max(np.abs(norms - 1.0)) > 1e-12:
            raise GeometryError("curve samples must be normalized")
        params.setflags(write=False)
        states.setflags(write=False)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "states", states)

    @classmethod
    def from_states(cls, params: Sequence[float], states: Sequence[PureState]) -> "SampledCurve":
        return cls(np.asarray(params, dtype=float), np.array([s.amplitudes for s in states]))

    def __len__(self):
        return self.params.size

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    def state(self, index: int) -> PureState:
        return PureState(self.states[index])

    @property
    def points(self) -> Iterator[tuple[float, PureState]]:
        for k in range(len(self)):
            yield float(self.params[k]), self.state(k)

    def gauge_shifted(self, alphas: np.ndarray) -> "SampledCurve":
        """Multiply sample ``k`` by ``exp(i * alphas[k])``; the ray path is unchanged."""
        return SampledCurve(self.params, np.exp(1j * np.asarray(alphas))[:, None] * self.states)


def _perp_norm(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise ``||b - <a|b> a||`` and ``|<a|b>|`` for stacks of unit vectors."""
    ov = np.einsum("ij,ij->i", a.conj(), b)
    perp = np.linalg.norm(b - ov[:, None] * a, axis=1)
    return perp, np.abs(ov)


def fs_distance(a: PureState, b: PureState, conv: MetricConvention = DEFAULT_CONVENTION) -> float:
    """``lam * sqrt(1 - |<a|b>|^2)``."""
    ov = overlap(a, b)
    perp = np.linalg.norm(b.amplitudes - ov * a.amplitudes)
    return conv.lam * float(min(perp, 1.0))


def wootters_distance(a: PureState, b: PureState, conv: MetricConvention = DEFAULT_CONVENTION) -> float:
    """``lam * arccos|<a|b>|``, the great-circle distance between rays."""
    ov = overlap(a, b)
    perp = np.linalg.norm(b.amplitudes - ov * a.amplitudes)
    return conv.lam * float(np.arctan2(perp, abs(ov)))


def central_tangent(curve: SampledCurve, index: int) -> np.ndarray:
    """Central finite-difference estimate of the tangent vector at ``index``."""
    n = len(curve)
    if not 0 < index < n - 1:
        raise IndexOutOfRange(f"index {index} is not interior to a curve of {n} samples")
    p = curve.params
    span = p[-1] - p[0]
    local = max(p[index + 1] - p[index], p[index] - p[index - 1])
    if local > RESOLUTION_GUARD * span:
        raise CurveTooCoarse(
            f"local spacing {local:.3g} exceeds {RESOLUTION_GUARD:g} of the range {span:.3g}"
        )
    h_left = p[index] - p[index - 1]
    h_right = p[index + 1] - p[index]
    psi_m, psi_0, psi_p = curve.states[index - 1 : index + 2]
    # second-order accurate on non-uniform grids
    return (
        -h_right / (h_left * (h_left + h_right)) * psi_m
        + (h_right - h_left) / (h_left * h_right) * psi_0
        + h_left / (h_right * (h_left + h_right)) * psi_p
    )


def metric_at(
    curve: SampledCurve, index: int, conv: MetricConvention = DEFAULT_CONVENTION
) -> MetricSample:
    """Single-parameter Fubini-Study metric at an interior sample."""
    dpsi = central_tangent(curve, index)
    psi = curve.states[index]
    gamma = float(np.vdot(dpsi, dpsi).real)
    beta_c = -1j * np.vdot(psi, dpsi)
    if abs(beta_c.imag) > BETA_IMAG_WARN:
        logger.warning(
            "connection term has imaginary part %.3e at index %d; keeping its real part",
            beta_c.imag,
            index,
        )
    beta = float(beta_c.real)
    return MetricSample(gamma, beta, conv.lam**2 * (gamma - beta**2))


def segment_lengths(curve: SampledCurve, conv: MetricConvention = DEFAULT_CONVENTION) -> np.ndarray:
    """Wootters length of each consecutive pair of samples."""
    perp, mag = _perp_norm(curve.states[:-1], curve.states[1:])
    return conv.lam * np.arctan2(perp, mag)


def cumulative_length(curve: SampledCurve, conv: MetricConvention = DEFAULT_CONVENTION) -> np.ndarray:
    """Running chained length, starting at 0 for the first sample."""
    out = np.zeros(len(curve))
    # sequential sum keeps the final value identical to path_length
    np.cumsum(segment_lengths(curve, conv), out=out[1:])
    return out


def path_length(curve: SampledCurve, conv: MetricConvention = DEFAULT_CONVENTION) -> float:
    """Length of the ray-space path traced by the samples.

    Segments are chained with the Wootters distance, which agrees with the
    infinitesimal Fubini-Study length to third order per step and is exactly
    invariant under reparametrization of the samples.
    """
    return float(cumulative_length(curve, conv)[-1])
