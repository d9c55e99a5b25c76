"""Optimal-speed Hamiltonian synthesis and the resulting qubit trajectory.

For endpoints ``a`` and ``b`` at Fubini-Study angle ``theta`` the traceless
generator with eigenvalues ``+E``/``-E`` drives ``a`` to the ray of ``b`` in
the shortest possible time ``hbar * theta / (2 E)``. The trajectory can be
obtained either from the closed form or by exact unitary propagation; the
two routes are kept independent so that one can check the other.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, NonPositiveEnergy, NotHermitian, ParamOutOfRange, ZeroVector
from .fsmetric import SampledCurve
from .statespace import GaugeFixedPair, PureState, gauge_fix, overlap

HERMITIAN_TOL = 1e-12
_T_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Hamiltonian:
    """Hermitian generator in energy units."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128, copy=True)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"Hamiltonian must be square, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T), initial=0.0) > HERMITIAN_TOL:
            raise NotHermitian("matrix is not Hermitian")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __add__(self, other: "Hamiltonian") -> "Hamiltonian":
        return Hamiltonian(self.matrix + other.matrix)

    def to_json(self, hbar: float = 1.0) -> dict:
        return {
            "matrix": [[[float(c.real), float(c.imag)] for c in row] for row in self.matrix],
            "hbar": float(hbar),
        }

    @classmethod
    def from_json(cls, data: dict) -> tuple["Hamiltonian", float]:
        """Parse the JSON form; returns the operator and its ``hbar``."""
        try:
            rows = [[complex(float(re), float(im)) for re, im in row] for row in data["matrix"]]
            hbar = float(data.get("hbar", 1.0))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed Hamiltonian JSON: {exc}") from exc
        return cls(np.array(rows)), hbar


PAULI_Z = Hamiltonian(np.diag([1.0, -1.0]))
PAULI_Y = Hamiltonian(np.array([[0, -1j], [1j, 0]]))
PAULI_X = Hamiltonian(np.array([[0, 1], [1, 0]]))


@dataclass(frozen=True)
class OptimalPlan:
    pair: GaugeFixedPair
    energy: float
    t_min: float
    hamiltonian: Hamiltonian
    hbar: float = 1.0

    @property
    def a(self) -> PureState:
        return self.pair.a

    @property
    def b(self) -> PureState:
        return self.pair.b

    @property
    def theta_fs(self) -> float:
        return self.pair.theta_fs


def _check_dims(h: Hamiltonian, s: PureState) -> None:
    if h.dim != s.dim:
        raise DimensionMismatch(f"Hamiltonian dimension {h.dim} vs state dimension {s.dim}")


def energy_dispersion(h: Hamiltonian, s: PureState) -> float:
    """Standard deviation of ``h`` in the state ``s``."""
    _check_dims(h, s)
    return float(dispersion_rows(h, s.amplitudes[None, :])[0])


def mean_energy_rows(h: Hamiltonian, states: np.ndarray) -> np.ndarray:
    """``<psi|H|psi>`` for every row of ``states``."""
    return np.einsum("ij,jk,ik->i", states.conj(), h.matrix, states).real


def dispersion_rows(h: Hamiltonian, states: np.ndarray) -> np.ndarray:
    """Energy dispersion for every row of ``states``."""
    h_psi = states @ h.matrix.T
    mean = np.einsum("ij,ij->i", states.conj(), h_psi).real
    # ||(H - <H>) psi|| avoids the cancellation in <H^2> - <H>^2
    return np.linalg.norm(h_psi - mean[:, None] * states, axis=1)


def dispersion_in_energy_basis(e1: float, e2: float, alpha1: complex, alpha2: complex) -> float:
    """Dispersion of a two-level Hamiltonian from the state's energy-basis weights."""
    w1, w2 = abs(alpha1) ** 2, abs(alpha2) ** 2
    total = w1 + w2
    if total == 0:
        raise ZeroVector("both energy-basis amplitudes vanish")
    imbalance = (w1 - w2) / total
    return float((e2 - e1) / 2 * np.sqrt(max(1.0 - imbalance * imbalance, 0.0)))


def _aligned_endpoints(pair: GaugeFixedPair) -> tuple[np.ndarray, np.ndarray]:
    """Unit vectors ``A`` and ``B`` with ``<A|B> = cos(theta/2)`` real."""
    half = pair.theta_fs / 2
    return pair.a.amplitudes, np.exp(1j * half) * pair.b.amplitudes


def hamiltonian_from_overlaps(pair: GaugeFixedPair, energy: float) -> Hamiltonian:
    """Generator written directly with overlap-normalized dyads.

    Kept as an independent route for cross-checking :func:`synthesize`;
    degrades as the endpoints approach orthogonality.
    """
    a, b = pair.a.amplitudes, pair.b.amplitudes
    ab = np.vdot(a, b)
    cot = 1.0 / np.tan(pair.theta_fs / 2)
    m = 1j * energy * cot * (np.outer(b, a.conj()) / ab - np.outer(a, b.conj()) / np.conj(ab))
    return Hamiltonian(m)


def energy_eigenbasis(plan: OptimalPlan) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvectors for ``-E`` and ``+E`` rebuilt from the endpoints."""
    a_vec, b_vec = _aligned_endpoints(plan.pair)
    half = plan.theta_fs / 2
    c_vec = (b_vec - np.cos(half) * a_vec) / np.sin(half)
    return (a_vec - 1j * c_vec) / np.sqrt(2), (a_vec + 1j * c_vec) / np.sqrt(2)


def synthesize(a: PureState, b: PureState, energy: float = 1.0, hbar: float = 1.0) -> OptimalPlan:
    """Build the optimal-speed generator steering ``a`` to the ray of ``b``.

    Raises:
        NonPositiveEnergy: if ``energy`` or ``hbar`` is not positive.
        AntipodalStates, IdenticalRays: from :func:`gauge_fix`.
    """
    if not energy > 0:
        raise NonPositiveEnergy(f"energy must be positive, got {energy}")
    if not hbar > 0:
        raise NonPositiveEnergy(f"hbar must be positive, got {hbar}")
    pair = gauge_fix(a, b)
    a_vec, b_vec = _aligned_endpoints(pair)
    half = pair.theta_fs / 2
    m = 1j * energy / np.sin(half) * (np.outer(b_vec, a_vec.conj()) - np.outer(a_vec, b_vec.conj()))
    # exact Hermitian symmetrization removes last-bit asymmetry
    m = 0.5 * (m + m.conj().T)
    h = Hamiltonian(m)
    plan = OptimalPlan(pair, float(energy), float(hbar * pair.theta_fs / (2 * energy)), h, float(hbar))
    _self_check(plan)
    return plan


def _self_check(plan: OptimalPlan) -> None:
    h, e = plan.hamiltonian.matrix, plan.energy
    scale = max(1.0, e)
    if abs(np.trace(h)) > 1e-12 * scale:
        raise ArithmeticError("synthesized Hamiltonian is not traceless")
    if abs(mean_energy_rows(plan.hamiltonian, plan.a.amplitudes[None, :])[0]) > 1e-12 * scale:
        raise ArithmeticError("initial state has nonzero mean energy")
    for value, vec in zip((-e, e), energy_eigenbasis(plan)):
        if np.max(np.abs(h @ vec - value * vec)) > 1e-10 * scale:
            raise ArithmeticError("reconstructed eigenvector check failed")
    if abs(overlap(plan.b, plan.a)) > 1e-6:
        alt = hamiltonian_from_overlaps(plan.pair, e).matrix
        if np.max(np.abs(alt - h)) > 1e-8 * scale:
            raise ArithmeticError("normalized and overlap forms of the generator disagree")


def propagator(h: Hamiltonian, t: float, hbar: float = 1.0) -> np.ndarray:
    """``exp(-i H t / hbar)`` via the Hermitian eigendecomposition."""
    w, v = np.linalg.eigh(h.matrix)
    return (v * np.exp(-1j * w * t / hbar)) @ v.conj().T


def propagate(h: Hamiltonian, s: PureState, t: float, hbar: float = 1.0) -> PureState:
    _check_dims(h, s)
    return PureState(propagator(h, t, hbar) @ s.amplitudes)


def propagate_curve(h: Hamiltonian, s: PureState, times: np.ndarray, hbar: float = 1.0) -> SampledCurve:
    """Sample ``exp(-i H t / hbar) s`` at each of ``times``."""
    _check_dims(h, s)
    times = np.asarray(times, dtype=float)
    w, v = np.linalg.eigh(h.matrix)
    coeffs = v.conj().T @ s.amplitudes
    phases = np.exp(-1j * np.outer(times, w) / hbar)
    states = (phases * coeffs) @ v.T
    return SampledCurve(times, states)


def _check_time(plan: OptimalPlan, t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    tol = _T_TOL * max(1.0, plan.t_min)
    if t.size and (t.min() < -tol or t.max() > plan.t_min + tol):
        raise ParamOutOfRange(f"time outside [0, {plan.t_min}]")
    return np.clip(t, 0.0, plan.t_min)


def trajectory_states(plan: OptimalPlan, times: np.ndarray) -> np.ndarray:
    """Closed-form trajectory at each of ``times`` as an ``(n, dim)`` array."""
    times = _check_time(plan, times)
    half = plan.theta_fs / 2
    wt = plan.energy * times / plan.hbar
    sin_h, cos_h = np.sin(half), np.cos(half)
    coef_a = np.cos(wt) - cos_h / sin_h * np.sin(wt)
    coef_b = np.exp(1j * half) / sin_h * np.sin(wt)
    return coef_a[:, None] * plan.a.amplitudes + coef_b[:, None] * plan.b.amplitudes


def trajectory_closed_form(plan: OptimalPlan, t: float) -> PureState:
    return PureState(trajectory_states(plan, np.array([t]))[0])


def sample_trajectory(plan: OptimalPlan, n: int) -> SampledCurve:
    """``n`` closed-form samples at uniform times over ``[0, t_min]``."""
    times = np.linspace(0.0, plan.t_min, n)
    return SampledCurve(times, trajectory_states(plan, times))


def xi_of_t(plan: OptimalPlan, t):
    """Map physical time to the ``xi`` parameter of the geodesic."""
    t = _check_time(plan, t)
    half = plan.theta_fs / 2
    wt = plan.energy * t / plan.hbar
    num = np.sin(wt)
    den = np.cos(wt) * np.sin(half) + (1.0 - np.cos(half)) * np.sin(wt)
    out = np.clip(num / den, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def eta_of_t(plan: OptimalPlan, t):
    """Map physical time to the angular ``theta`` parameter of the geodesic.

    The quadrant-aware arctangent keeps the map continuous where the
    denominator crosses zero at ``t_min``.
    """
    t = _check_time(plan, t)
    half = plan.theta_fs / 2
    wt = plan.energy * t / plan.hbar
    num = np.sin(wt)
    den = np.sin(half) * np.cos(wt) - np.cos(half) * np.sin(wt)
    out = np.clip(2.0 * np.arctan2(num, den), 0.0, np.pi)
    return float(out) if out.ndim == 0 else out


def xi_normalization_of_t(plan: OptimalPlan, t):
    """Normalization of the ``xi`` family expressed directly in time."""
    t = _check_time(plan, t)
    half = plan.theta_fs / 2
    wt = plan.energy * t / plan.hbar
    return np.cos(wt) + (1.0 - np.cos(half)) / np.sin(half) * np.sin(wt)


def load_hamiltonian(path: str | Path) -> tuple[Hamiltonian, float, dict]:
    """Read Hamiltonian JSON; returns ``(H, hbar, raw_dict)``."""
    with open(path) as fh:
        data = json.load(fh)
    h, hbar = Hamiltonian.from_json(data)
    return h, hbar, data
