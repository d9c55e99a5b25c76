"""Pure states, overlaps, gauge fixing and the Bloch chart for qubits."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import (
    AntipodalStates,
    DimensionMismatch,
    DimensionTooSmall,
    IdenticalRays,
    NotNormalized,
    ZeroVector,
)

NORM_TOL = 1e-12
ZERO_NORM = 1e-14
RAY_TOL = 1e-12


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.complex128, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PureState:
    """A normalized complex amplitude vector.

    Build instances with :func:`normalize`; the constructor only checks the
    norm and never rescales.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _frozen(np.ravel(self.amplitudes))
        if amps.size < 2:
            raise DimensionTooSmall(f"dimension must be >= 2, got {amps.size}")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NotNormalized(f"squared norm {norm2!r} differs from 1")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.amplitudes
        return self.amplitudes.astype(dtype)

    def __repr__(self):
        return f"PureState({np.array2string(self.amplitudes, precision=6)})"

    def rephase(self, alpha: float) -> "PureState":
        """Return ``exp(i*alpha)`` times this state (same ray)."""
        return PureState(np.exp(1j * alpha) * self.amplitudes)

    def to_json(self) -> dict:
        return {"amplitudes": [[float(c.real), float(c.imag)] for c in self.amplitudes]}

    @classmethod
    def from_json(cls, data: dict) -> "PureState":
        """Parse ``{"amplitudes": [[re, im], ...]}``; amplitudes are normalized."""
        try:
            pairs = data["amplitudes"]
            raw = [complex(float(re), float(im)) for re, im in pairs]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed state JSON: {exc}") from exc
        return normalize(raw)


@dataclass(frozen=True)
class BlochPoint:
    x: float
    y: float
    z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


@dataclass(frozen=True)
class GaugeFixedPair:
    """Endpoint pair with ``<a|b> = exp(-i theta/2) cos(theta/2)``."""

    a: PureState
    b: PureState
    theta_fs: float


def normalize(raw: Sequence[complex] | np.ndarray) -> PureState:
    vec = np.asarray(raw, dtype=np.complex128).ravel()
    if vec.size < 2:
        raise DimensionTooSmall(f"dimension must be >= 2, got {vec.size}")
    norm = np.linalg.norm(vec)
    if norm < ZERO_NORM:
        raise ZeroVector("cannot normalize a vector with zero norm")
    return PureState(vec / norm)


def _check_dims(a: PureState, b: PureState) -> None:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} vs {b.dim}")


def overlap(a: PureState, b: PureState) -> complex:
    """Inner product ``<a|b>``, conjugate-linear in ``a``."""
    _check_dims(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def ray_angle(a: PureState, b: PureState) -> float:
    """``arccos|<a|b>|`` evaluated without cancellation near 0 and pi/2."""
    ov = overlap(a, b)
    perp = np.linalg.norm(b.amplitudes - ov * a.amplitudes)
    return float(np.arctan2(perp, abs(ov)))


def to_bloch(s: PureState) -> BlochPoint:
    if s.dim != 2:
        raise DimensionMismatch(f"Bloch chart needs dimension 2, got {s.dim}")
    c0, c1 = s.amplitudes
    cross = np.conj(c0) * c1
    return BlochPoint(
        float(2 * cross.real),
        float(2 * cross.imag),
        float(abs(c0) ** 2 - abs(c1) ** 2),
    )


def from_bloch(x: float, y: float, z: float) -> PureState:
    """Qubit state whose Bloch vector points along ``(x, y, z)``."""
    r = np.sqrt(x * x + y * y + z * z)
    if r < ZERO_NORM:
        raise ZeroVector("Bloch vector has zero length")
    polar = np.arccos(np.clip(z / r, -1.0, 1.0))
    azimuth = np.arctan2(y, x)
    return normalize([np.cos(polar / 2), np.exp(1j * azimuth) * np.sin(polar / 2)])


def check_distinct_rays(mag: float) -> None:
    """Raise when an overlap modulus marks orthogonal or identical rays."""
    if mag <= RAY_TOL:
        raise AntipodalStates(
            f"|<a|b>| = {mag:.3e}: orthogonal endpoints have no unique geodesic"
        )
    if mag >= 1.0 - RAY_TOL:
        raise IdenticalRays(f"|<a|b>| = {mag!r}: endpoints are the same ray")


def gauge_fix(a: PureState, b: PureState) -> GaugeFixedPair:
    """Rephase ``b`` so that ``<a|b>`` has phase ``-theta/2``.

    ``a`` is left untouched; ``theta = 2 arccos|<a|b>|``.
    """
    ov = overlap(a, b)
    mag = abs(ov)
    check_distinct_rays(mag)
    theta = 2.0 * ray_angle(a, b)
    # e^{i delta} <a|b> must equal e^{-i theta/2} |<a|b>|
    rephase = np.exp(-0.5j * theta) * mag / ov
    rephase /= abs(rephase)
    return GaugeFixedPair(a, PureState(rephase * b.amplitudes), float(theta))


def load_state(path: str | Path) -> PureState:
    with open(path) as fh:
        data = json.load(fh)
    return PureState.from_json(data)


def save_state(state: PureState, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(state.to_json(), fh)
