"""Geodesicity verdicts for time-parametrized trajectories.

A trajectory generated by a known Hamiltonian is tested three ways: its
ray-space length against the great-circle distance of its endpoints, its
geometric efficiency, and its geometric phase. The Anandan-Aharonov
speed-limit inequality is reported alongside.

All time integrals use the trapezoidal rule on the supplied samples. The
efficiency uses the unit-sphere metric scale (``lam = 2``) regardless of
any convention used elsewhere.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import (
    CurveTooCoarse,
    CurveTooShort,
    DegenerateCurve,
    DimensionMismatch,
    GeneratorMismatch,
    OrthogonalEndpoints,
    SamplesTooFew,
)
from .fsmetric import DEFAULT_CONVENTION, SampledCurve, path_length, segment_lengths
from .optevolve import Hamiltonian, OptimalPlan, dispersion_rows, mean_energy_rows, sample_trajectory
from .statespace import PureState, ray_angle

GENERATOR_REL_TOL = 0.05
SPEED_LIMIT_SLACK = 1e-8
MIN_VERIFY_SAMPLES = 100
EFFICIENCY_TOL = 1e-6
PHASE_TOL = 1e-6
_DEGENERATE = 1e-14


def wrap_phase(phi: float) -> float:
    """Reduce an angle to ``(-pi, pi]``."""
    out = float(np.angle(np.exp(1j * phi)))
    return np.pi if out == -np.pi else out


@dataclass(frozen=True)
class PhaseReport:
    phi_total: float
    phi_dynamical: float
    phi_geometric: float


@dataclass(frozen=True)
class Verdicts:
    length_minimal: bool
    unit_efficiency: bool
    null_phase: bool
    length_tol: float
    efficiency_tol: float = EFFICIENCY_TOL
    phase_tol: float = PHASE_TOL

    @property
    def all(self) -> bool:
        return self.length_minimal and self.unit_efficiency and self.null_phase


@dataclass(frozen=True)
class VerificationReport:
    path_length: float
    geodesic_length: float
    delta_s: float
    efficiency: float
    phases: PhaseReport
    bound_lhs: float
    bound_rhs: float
    verdicts: Verdicts
    samples: int = 0
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = asdict(self)
        out["verdicts"]["all"] = self.verdicts.all
        return out


def _endpoints(curve: SampledCurve) -> tuple[PureState, PureState]:
    return curve.state(0), curve.state(len(curve) - 1)


def _check_dims(curve: SampledCurve, h: Hamiltonian) -> None:
    if h.dim != curve.dim:
        raise DimensionMismatch(f"Hamiltonian dimension {h.dim} vs curve dimension {curve.dim}")


def traversed_length(curve: SampledCurve, h: Hamiltonian, hbar: float = 1.0) -> float:
    """``int 2 dE(t)/hbar dt`` along the samples (trapezoidal)."""
    _check_dims(curve, h)
    return float(np.trapezoid(2.0 * dispersion_rows(h, curve.states) / hbar, curve.params))


def efficiency(curve: SampledCurve, h: Hamiltonian, hbar: float = 1.0) -> float:
    """Geometric efficiency: endpoint distance over traversed distance.

    Raises:
        DegenerateCurve: the Hamiltonian has no dispersion along the curve.
        GeneratorMismatch: chained segment lengths disagree with the
            dispersion integral by more than 5%.
    """
    if len(curve) < 2:
        raise CurveTooShort("efficiency needs at least two samples")
    traversed = traversed_length(curve, h, hbar)
    # small-step Fubini-Study lengths, lam = 2
    chained = float(np.sum(segment_lengths(curve, DEFAULT_CONVENTION)))
    if traversed < _DEGENERATE:
        raise DegenerateCurve("zero energy dispersion along the curve; efficiency undefined")
    if abs(chained - traversed) > GENERATOR_REL_TOL * traversed:
        raise GeneratorMismatch(
            f"segment length {chained:.6g} vs dispersion integral {traversed:.6g}"
        )
    first, last = _endpoints(curve)
    eta = 2.0 * ray_angle(first, last) / traversed
    return float(np.clip(eta, 0.0, 1.0 + 1e-9))


def aa_relation_check(curve: SampledCurve, h: Hamiltonian, hbar: float = 1.0) -> float:
    """Largest per-step mismatch between squared FS step and ``4 dE^2 dt^2 / hbar^2``.

    Both sides are divided by ``dt^2``; the residual shrinks linearly with
    the step size for a curve actually generated by ``h``.
    """
    if len(curve) < 3:
        raise CurveTooShort("relation check needs at least three samples")
    _check_dims(curve, h)
    dt = np.diff(curve.params)
    span = curve.params[-1] - curve.params[0]
    if dt.max() > 1e-3 * span:
        raise CurveTooCoarse(f"time step {dt.max():.3g} exceeds 1e-3 of the duration")
    psi = curve.states
    ov = np.abs(np.einsum("ij,ij->i", psi[:-1].conj(), psi[1:]))
    ds2 = 4.0 * (1.0 - np.minimum(ov, 1.0) ** 2)
    disp = dispersion_rows(h, psi)
    disp_mid2 = 0.5 * (disp[:-1] ** 2 + disp[1:] ** 2)
    residual = np.abs(ds2 - 4.0 * disp_mid2 / hbar**2 * dt**2) / dt**2
    return float(residual.max())


def phases(curve: SampledCurve, h: Hamiltonian, hbar: float = 1.0) -> PhaseReport:
    """Total, dynamical and geometric phase of an open Schrodinger curve.

    The dynamical phase is removed pointwise to build the horizontal lift;
    the geometric phase is the argument of the lift's endpoint overlap.
    """
    if len(curve) < 2:
        raise CurveTooShort("phases need at least two samples")
    _check_dims(curve, h)
    t = curve.params
    mean = mean_energy_rows(h, curve.states)
    running = np.concatenate([[0.0], np.cumsum(0.5 * (mean[1:] + mean[:-1]) * np.diff(t))])
    lift = np.exp(1j * running / hbar)[:, None] * curve.states
    lift_overlap = np.vdot(lift[0], lift[-1])
    if abs(lift_overlap) < 1e-10:
        raise OrthogonalEndpoints("endpoint states are orthogonal; phase undefined")
    phi_dyn = -running[-1] / hbar
    phi_tot = np.angle(np.vdot(curve.states[0], curve.states[-1]))
    return PhaseReport(wrap_phase(phi_tot), wrap_phase(phi_dyn), wrap_phase(np.angle(lift_overlap)))


def horizontal_lift(curve: SampledCurve) -> np.ndarray:
    """Discrete parallel transport of the samples.

    Each sample is rephased so its overlap with the previous lifted sample
    is real and positive. Needs no Hamiltonian and is blind to any gauge
    phase already present on the samples.
    """
    psi = curve.states
    ov = np.einsum("ij,ij->i", psi[:-1].conj(), psi[1:])
    if np.any(np.abs(ov) < 1e-10):
        raise OrthogonalEndpoints("consecutive samples are orthogonal; refine the curve")
    correction = np.concatenate([[0.0], np.cumsum(np.angle(ov))])
    return np.exp(-1j * correction)[:, None] * psi


def kinematic_geometric_phase(curve: SampledCurve) -> float:
    """Geometric phase from the samples alone, via :func:`horizontal_lift`."""
    lift = horizontal_lift(curve)
    ov = np.vdot(lift[0], lift[-1])
    if abs(ov) < 1e-10:
        raise OrthogonalEndpoints("endpoint states are orthogonal; phase undefined")
    return wrap_phase(np.angle(ov))


def speed_limit_check(curve: SampledCurve, h: Hamiltonian, hbar: float = 1.0) -> tuple[float, float]:
    """Both sides of ``int dE dt >= hbar arccos|<first|last>|``.

    Raises:
        GeneratorMismatch: the inequality fails beyond rounding slack, which
            cannot happen for a curve that ``h`` actually generates.
    """
    if len(curve) < 2:
        raise CurveTooShort("speed-limit check needs at least two samples")
    lhs = 0.5 * hbar * traversed_length(curve, h, hbar)
    first, last = _endpoints(curve)
    rhs = hbar * ray_angle(first, last)
    if lhs < rhs - SPEED_LIMIT_SLACK * max(1.0, rhs):
        raise GeneratorMismatch(f"speed limit violated: {lhs!r} < {rhs!r}")
    return float(lhs), float(rhs)


def length_tolerance(samples: int) -> float:
    return max(1e-6, 10.0 / samples**2)


def verify_curve(curve: SampledCurve, h: Hamiltonian, hbar: float = 1.0) -> VerificationReport:
    """Run every geodesicity check on a curve generated by ``h``."""
    n = len(curve)
    if n < MIN_VERIFY_SAMPLES:
        raise SamplesTooFew(f"need at least {MIN_VERIFY_SAMPLES} samples, got {n}")
    s = path_length(curve, DEFAULT_CONVENTION)
    first, last = _endpoints(curve)
    s0 = DEFAULT_CONVENTION.lam * ray_angle(first, last)
    eta = efficiency(curve, h, hbar)
    ph = phases(curve, h, hbar)
    lhs, rhs = speed_limit_check(curve, h, hbar)
    tol = length_tolerance(n)
    verdicts = Verdicts(
        length_minimal=abs(s - s0) <= tol,
        unit_efficiency=abs(eta - 1.0) <= EFFICIENCY_TOL,
        null_phase=abs(ph.phi_geometric) <= PHASE_TOL,
        length_tol=tol,
    )
    return VerificationReport(s, s0, s - s0, eta, ph, lhs, rhs, verdicts, samples=n)


def verify(plan: OptimalPlan, samples: int = 1000) -> VerificationReport:
    """Sample the optimal trajectory of ``plan`` and run every check."""
    if samples < MIN_VERIFY_SAMPLES:
        raise SamplesTooFew(f"need at least {MIN_VERIFY_SAMPLES} samples, got {samples}")
    curve = sample_trajectory(plan, samples)
    return verify_curve(curve, plan.hamiltonian, plan.hbar)
