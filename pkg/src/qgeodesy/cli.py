"""Command-line front end.

Exit codes:
    0  success (for ``verify``: all three verdicts hold)
    1  ``verify`` ran but at least one verdict failed
    2  unreadable or malformed input file
    3  dimension mismatch between inputs
    4  endpoints orthogonal or identical (no unique geodesic)
    5  non-positive energy, hbar or metric scale
    6  ``--perturb`` requested for a state that is not a qubit
    7  too few samples
    8  a numerical consistency check failed
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import errors
from .fsmetric import MetricConvention, SampledCurve, cumulative_length, fs_distance, wootters_distance
from .geodesicfam import make_geodesic, sample_theta, sample_xi, theta_of_xi, xi_of_theta
from .geodesy import MIN_VERIFY_SAMPLES, verify, verify_curve
from .optevolve import (
    PAULI_Z,
    Hamiltonian,
    eta_of_t,
    load_hamiltonian,
    propagate_curve,
    sample_trajectory,
    synthesize,
    xi_of_t,
)
from .statespace import PureState, load_state, to_bloch

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_PARSE = 2
EXIT_DIMENSION = 3
EXIT_RAYS = 4
EXIT_ENERGY = 5
EXIT_PERTURB_DIM = 6
EXIT_SAMPLES = 7
EXIT_NUMERIC = 8


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunConfig:
    lam: float = 2.0
    hbar: float = 1.0
    energy: float = 1.0
    samples: int = 1000
    output_path: str | None = None
    format: str = "csv"

    def validate(self, min_samples: int = 2) -> None:
        for name in ("lam", "hbar", "energy"):
            value = getattr(self, name)
            if not value > 0:
                raise CliError(EXIT_ENERGY, f"--{'lambda' if name == 'lam' else name} must be positive, got {value}")
        if self.samples < min_samples:
            raise CliError(EXIT_SAMPLES, f"--samples must be at least {min_samples}, got {self.samples}")

    @property
    def convention(self) -> MetricConvention:
        return MetricConvention(self.lam)


def _load_state(path: str) -> PureState:
    try:
        return load_state(path)
    except (OSError, ValueError) as exc:
        raise CliError(EXIT_PARSE, f"cannot read state file {path}: {exc}") from exc


def _load_hamiltonian(path: str):
    try:
        return load_hamiltonian(path)
    except (OSError, ValueError) as exc:
        raise CliError(EXIT_PARSE, f"cannot read Hamiltonian file {path}: {exc}") from exc


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _state_columns(dim: int) -> list[str]:
    cols = []
    for k in range(dim):
        cols += [f"re{k}", f"im{k}"]
    if dim == 2:
        cols += ["bx", "by", "bz"]
    return cols


def _state_values(vec: np.ndarray) -> list[float]:
    vals = []
    for c in vec:
        vals += [float(c.real), float(c.imag)]
    if vec.size == 2:
        bp = to_bloch(PureState(vec))
        vals += [bp.x, bp.y, bp.z]
    return vals


def _table(leading: list[str], lead_values: list[np.ndarray], curve: SampledCurve, conv: MetricConvention):
    header = leading + _state_columns(curve.dim) + ["cum_length"]
    cum = cumulative_length(curve, conv)
    rows = []
    for k in range(len(curve)):
        row = [float(col[k]) for col in lead_values]
        row += _state_values(curve.states[k])
        row.append(float(cum[k]))
        rows.append(row)
    return header, rows


def _emit(text: str, config: RunConfig) -> None:
    if config.output_path:
        Path(config.output_path).write_text(text)
    else:
        sys.stdout.write(text)


def _write_table(header: list[str], rows: list[list[float]], config: RunConfig) -> None:
    if config.format == "json":
        text = json.dumps({"columns": header, "rows": rows}) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
        text = buf.getvalue()
    _emit(text, config)


def _pair(args) -> tuple[PureState, PureState]:
    a = _load_state(args.state_a)
    b = _load_state(args.state_b)
    if a.dim != b.dim:
        raise CliError(EXIT_DIMENSION, f"state dimensions differ: {a.dim} vs {b.dim}")
    return a, b


def cmd_distance(args, config: RunConfig) -> int:
    config.validate()
    a, b = _pair(args)
    fn = fs_distance if args.metric == "fs" else wootters_distance
    print(f"{fn(a, b, config.convention):.12f}")
    return EXIT_OK


def cmd_geodesic(args, config: RunConfig) -> int:
    config.validate()
    a, b = _pair(args)
    spec = make_geodesic(a, b)
    if args.param == "xi":
        curve = sample_xi(spec, config.samples)
        xis = curve.params
        thetas = np.array([theta_of_xi(x) for x in xis])
    else:
        curve = sample_theta(spec, config.samples)
        thetas = curve.params
        xis = np.array([xi_of_theta(t) for t in thetas])
    header, rows = _table(["theta", "xi"], [thetas, xis], curve, config.convention)
    _write_table(header, rows, config)
    return EXIT_OK


def cmd_synthesize(args, config: RunConfig) -> int:
    config.validate()
    a, b = _pair(args)
    plan = synthesize(a, b, config.energy, config.hbar)
    data = plan.hamiltonian.to_json(plan.hbar)
    data["t_min"] = plan.t_min
    data["energy"] = plan.energy
    _emit(json.dumps(data) + "\n", config)
    return EXIT_OK


def cmd_evolve(args, config: RunConfig) -> int:
    config.validate()
    a, b = _pair(args)
    plan = synthesize(a, b, config.energy, config.hbar)
    if args.hamiltonian:
        h, hbar, raw = _load_hamiltonian(args.hamiltonian)
        if h.dim != a.dim:
            raise CliError(EXIT_DIMENSION, f"Hamiltonian dimension {h.dim} vs state dimension {a.dim}")
        duration = float(raw.get("t_min", plan.t_min))
        times = np.linspace(0.0, duration, config.samples)
        curve = propagate_curve(h, a, times, hbar)
    else:
        curve = sample_trajectory(plan, config.samples)
        times = curve.params
    if times[-1] <= plan.t_min * (1 + 1e-12):
        xis, etas = xi_of_t(plan, times), eta_of_t(plan, times)
    else:
        xis = etas = np.full(times.size, np.nan)
    header, rows = _table(["t", "xi", "eta"], [times, xis, etas], curve, config.convention)
    _write_table(header, rows, config)
    return EXIT_OK


def cmd_verify(args, config: RunConfig) -> int:
    config.validate(MIN_VERIFY_SAMPLES)
    a, b = _pair(args)
    plan = synthesize(a, b, config.energy, config.hbar)
    if args.perturb is None:
        report = verify(plan, config.samples)
    else:
        if a.dim != 2:
            raise CliError(EXIT_PERTURB_DIM, "--perturb adds a sigma_z term and needs a qubit")
        h = plan.hamiltonian + Hamiltonian(args.perturb * plan.energy * PAULI_Z.matrix)
        times = np.linspace(0.0, plan.t_min, config.samples)
        report = verify_curve(propagate_curve(h, a, times, plan.hbar), h, plan.hbar)
    data = report.to_json()
    data["perturb"] = args.perturb
    data["t_min"] = plan.t_min
    _emit(json.dumps(data, indent=2) + "\n", config)
    return EXIT_OK if report.verdicts.all else EXIT_VERDICT


COMMANDS = {
    "distance": cmd_distance,
    "geodesic": cmd_geodesic,
    "synthesize": cmd_synthesize,
    "evolve": cmd_evolve,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("state_a", help="JSON file with the initial state")
    common.add_argument("state_b", help="JSON file with the final state")
    common.add_argument("--lambda", dest="lam", type=float, default=2.0, help="metric scale (default 2)")
    common.add_argument("--hbar", type=float, default=1.0)
    common.add_argument("--energy", type=float, default=1.0, help="energy scale E of the generator")
    common.add_argument("--samples", type=int, default=1000)
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="qgeodesy", description="Geodesics and optimal-speed evolution of pure quantum states."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("distance", parents=[common], help="distance between two states")
    p.add_argument("--metric", choices=("fs", "wootters"), default="wootters")
    p = sub.add_parser("geodesic", parents=[common], help="sample the geodesic between two states")
    p.add_argument("--param", choices=("theta", "xi"), default="theta")
    sub.add_parser("synthesize", parents=[common], help="optimal-speed Hamiltonian as JSON")
    p = sub.add_parser("evolve", parents=[common], help="trajectory table under the optimal Hamiltonian")
    p.add_argument("--hamiltonian", default=None, help="propagate under this Hamiltonian JSON instead")
    p = sub.add_parser("verify", parents=[common], help="three-way geodesicity report")
    p.add_argument("--perturb", type=float, default=None, help="add perturb*E*sigma_z to the generator")
    return parser


_ERROR_CODES = [
    (errors.DimensionMismatch, EXIT_DIMENSION),
    (errors.AntipodalStates, EXIT_RAYS),
    (errors.IdenticalRays, EXIT_RAYS),
    (errors.NonPositiveEnergy, EXIT_ENERGY),
    (errors.CurveTooShort, EXIT_SAMPLES),
    (errors.GeometryError, EXIT_NUMERIC),
]


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    config = RunConfig(args.lam, args.hbar, args.energy, args.samples, args.out, args.format)
    try:
        return COMMANDS[args.command](args, config)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except errors.GeometryError as exc:
        code = next(c for cls, c in _ERROR_CODES if isinstance(exc, cls))
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
