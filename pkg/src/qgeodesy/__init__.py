"""Geometry of pure-state quantum evolution.

Fubini-Study and Wootters distances, analytic geodesics between rays,
optimal-speed Hamiltonian synthesis, and numerical geodesicity checks.
"""

from .errors import GeometryError
from .fsmetric import (
    MetricConvention,
    MetricSample,
    SampledCurve,
    cumulative_length,
    fs_distance,
    metric_at,
    path_length,
    wootters_distance,
)
from .geodesicfam import (
    GeodesicSpec,
    analytic_length,
    make_geodesic,
    metric_closed_form,
    point_theta,
    point_xi,
    theta_of_xi,
    xi_of_theta,
)
from .geodesy import (
    PhaseReport,
    VerificationReport,
    aa_relation_check,
    efficiency,
    phases,
    speed_limit_check,
    verify,
    verify_curve,
)
from .optevolve import (
    Hamiltonian,
    OptimalPlan,
    dispersion_in_energy_basis,
    energy_dispersion,
    eta_of_t,
    propagate,
    synthesize,
    trajectory_closed_form,
    xi_of_t,
)
from .statespace import BlochPoint, GaugeFixedPair, PureState, gauge_fix, normalize, overlap, to_bloch

__version__ = "0.1.0"
