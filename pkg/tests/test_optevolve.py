import numpy as np
import pytest

from conftest import KET0, KET1, PLUS
from oracles import expm_taylor, random_pair, random_state
from qgeodesy.errors import (
    AntipodalStates,
    DimensionMismatch,
    IdenticalRays,
    NonPositiveEnergy,
    NotHermitian,
    ParamOutOfRange,
    ZeroVector,
)
from qgeodesy.geodesicfam import make_geodesic, point_theta, point_xi, theta_of_xi, xi_normalization
from qgeodesy.optevolve import (
    PAULI_Y,
    PAULI_Z,
    Hamiltonian,
    dispersion_in_energy_basis,
    energy_dispersion,
    energy_eigenbasis,
    eta_of_t,
    hamiltonian_from_overlaps,
    mean_energy_rows,
    propagate,
    propagate_curve,
    propagator,
    sample_trajectory,
    synthesize,
    trajectory_closed_form,
    xi_normalization_of_t,
    xi_of_t,
)
from qgeodesy.statespace import normalize, overlap

SIGMA_Y = np.array([[0, -1j], [1j, 0]])


def random_hermitian(rng, dim, scale=1.0):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return Hamiltonian(scale * (m + m.conj().T) / 2)


class TestHamiltonianType:
    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            Hamiltonian(np.array([[0, 1], [0, 0]]))

    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatch):
            Hamiltonian(np.zeros((2, 3)))

    def test_json_round_trip(self, rng):
        h = random_hermitian(rng, 3)
        back, hbar = Hamiltonian.from_json(h.to_json(hbar=0.5))
        np.testing.assert_array_equal(back.matrix, h.matrix)
        assert hbar == 0.5

    def test_json_layout(self):
        data = PAULI_Y.to_json()
        assert data["matrix"] == [[[0.0, 0.0], [0.0, -1.0]], [[0.0, 1.0], [0.0, 0.0]]]
        assert data["hbar"] == 1.0


class TestDispersion:
    def test_eigenstate(self):
        assert energy_dispersion(PAULI_Z, KET0) == 0.0

    def test_plus(self):
        assert energy_dispersion(PAULI_Z, PLUS) == pytest.approx(1.0, abs=1e-15)

    def test_synthesized_initial_state(self):
        plan = synthesize(KET0, PLUS, 1.0, 1.0)
        assert energy_dispersion(plan.hamiltonian, KET0) == pytest.approx(1.0, abs=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            energy_dispersion(PAULI_Z, normalize([1, 0, 0]))

    @pytest.mark.parametrize(
        "alphas,expected",
        [((2**-0.5, 2**-0.5), 1.0), ((1.0, 0.0), 0.0), ((np.sqrt(3) / 2, 0.5), np.sqrt(3) / 2)],
    )
    def test_energy_basis(self, alphas, expected):
        assert dispersion_in_energy_basis(-1.0, 1.0, *alphas) == pytest.approx(expected, abs=1e-15)

    def test_energy_basis_zero(self):
        with pytest.raises(ZeroVector):
            dispersion_in_energy_basis(-1, 1, 0, 0)

    def test_energy_basis_matches_direct(self, rng):
        for _ in range(50):
            h = random_hermitian(rng, 2)
            w, v = np.linalg.eigh(h.matrix)
            s = random_state(rng)
            # unnormalized weights must not matter
            alphas = 3.7 * (v.conj().T @ s.amplitudes)
            assert dispersion_in_energy_basis(w[0], w[1], *alphas) == pytest.approx(
                energy_dispersion(h, s), abs=1e-12
            )

    def test_energy_basis_maximum(self):
        vals = [dispersion_in_energy_basis(-2, 3, np.cos(x), np.sin(x)) for x in np.linspace(0, np.pi / 2, 101)]
        assert max(vals) == pytest.approx(2.5)
        assert int(np.argmax(vals)) == 50


class TestSynthesize:
    def test_sigma_y(self):
        plan = synthesize(KET0, PLUS, 1.0, 1.0)
        np.testing.assert_allclose(plan.hamiltonian.matrix, SIGMA_Y, atol=1e-12, rtol=0)
        assert plan.t_min == pytest.approx(np.pi / 4, abs=1e-12)
        assert plan.theta_fs == pytest.approx(np.pi / 2, abs=1e-15)

    def test_errors(self):
        with pytest.raises(AntipodalStates):
            synthesize(KET0, KET1, 1, 1)
        with pytest.raises(IdenticalRays):
            synthesize(KET0, KET0, 1, 1)
        with pytest.raises(NonPositiveEnergy):
            synthesize(KET0, PLUS, -1.0)
        with pytest.raises(NonPositiveEnergy):
            synthesize(KET0, PLUS, 1.0, 0.0)

    def test_ray_gauge_invariant(self):
        base = synthesize(KET0, PLUS).hamiltonian.matrix
        phased = synthesize(KET0, PLUS.rephase(np.pi / 7)).hamiltonian.matrix
        np.testing.assert_allclose(phased, base, atol=1e-14)

    @pytest.mark.parametrize("dim", [2, 3, 4])
    def test_plan_invariants(self, rng, dim):
        for _ in range(30):
            a, b = random_pair(rng, dim)
            energy, hbar = rng.uniform(0.2, 3.0, 2)
            plan = synthesize(a, b, energy, hbar)
            m = plan.hamiltonian.matrix
            assert np.max(np.abs(m - m.conj().T)) <= 1e-12
            assert abs(np.trace(m)) < 1e-12
            assert plan.t_min == pytest.approx(hbar * plan.theta_fs / (2 * energy), abs=1e-12)
            assert abs(np.vdot(a.amplitudes, m @ a.amplitudes)) < 1e-12
            assert energy_dispersion(plan.hamiltonian, a) == pytest.approx(energy, abs=1e-10)
            # spectrum: +-E on span{a, b}, zero elsewhere
            expected = sorted([-energy, energy] + [0.0] * (dim - 2))
            np.testing.assert_allclose(np.linalg.eigvalsh(m), expected, atol=1e-10)

    def test_eigenbasis(self, rng):
        for _ in range(30):
            plan = synthesize(*random_pair(rng), energy=1.5)
            m = plan.hamiltonian.matrix
            lo, hi = energy_eigenbasis(plan)
            np.testing.assert_allclose(m @ lo, -1.5 * lo, atol=1e-10)
            np.testing.assert_allclose(m @ hi, 1.5 * hi, atol=1e-10)
            assert abs(np.vdot(lo, hi)) < 1e-12
            # initial state has equal weight on both levels
            assert abs(np.vdot(lo, plan.a.amplitudes)) == pytest.approx(abs(np.vdot(hi, plan.a.amplitudes)))

    def test_overlap_form_agrees(self, rng):
        for _ in range(30):
            plan = synthesize(*random_pair(rng, 3), energy=0.7)
            alt = hamiltonian_from_overlaps(plan.pair, 0.7).matrix
            np.testing.assert_allclose(alt, plan.hamiltonian.matrix, atol=1e-10)


class TestPropagate:
    def test_identity(self, rng):
        s = random_state(rng, 3)
        np.testing.assert_allclose(propagate(random_hermitian(rng, 3), s, 0.0).amplitudes, s.amplitudes, atol=1e-15)

    def test_sigma_y_quarter(self):
        out = propagate(PAULI_Y, KET0, np.pi / 4)
        np.testing.assert_allclose(out.amplitudes, PLUS.amplitudes, atol=1e-15)

    def test_sigma_y_half(self):
        np.testing.assert_allclose(propagate(PAULI_Y, KET0, np.pi / 2).amplitudes, [0, 1], atol=1e-15)

    def test_hbar_scaling(self, rng):
        h, s = random_hermitian(rng, 3), random_state(rng, 3)
        np.testing.assert_allclose(propagate(h, s, 2.0, hbar=2.0).amplitudes, propagate(h, s, 1.0).amplitudes, atol=1e-13)

    def test_against_taylor(self, rng):
        for dim in (2, 3, 5):
            h = random_hermitian(rng, dim)
            t = rng.uniform(-3, 3)
            np.testing.assert_allclose(propagator(h, t, 1.3), expm_taylor(h.matrix, t, 1.3), atol=1e-12)

    def test_unitarity(self, rng):
        for _ in range(100):
            dim = int(rng.integers(2, 6))
            h = random_hermitian(rng, dim, scale=5.0)
            out = propagate(h, random_state(rng, dim), rng.uniform(-10, 10))
            assert abs(np.vdot(out.amplitudes, out.amplitudes) - 1) <= 1e-12

    def test_curve_matches_pointwise(self, rng):
        h, s = random_hermitian(rng, 3), random_state(rng, 3)
        times = np.linspace(0, 2, 7)
        curve = propagate_curve(h, s, times, 0.8)
        for k, t in enumerate(times):
            np.testing.assert_allclose(curve.states[k], propagate(h, s, t, 0.8).amplitudes, atol=1e-14)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            propagate(PAULI_Z, normalize([1, 0, 0]), 1.0)


class TestTrajectory:
    def test_endpoints(self, rng):
        for _ in range(20):
            plan = synthesize(*random_pair(rng))
            np.testing.assert_allclose(trajectory_closed_form(plan, 0.0).amplitudes, plan.a.amplitudes, atol=1e-15)
            end = trajectory_closed_form(plan, plan.t_min).amplitudes
            np.testing.assert_allclose(end, np.exp(0.5j * plan.theta_fs) * plan.b.amplitudes, atol=1e-12)
            assert overlap(plan.a, trajectory_closed_form(plan, plan.t_min)) == pytest.approx(
                np.cos(plan.theta_fs / 2), abs=1e-12
            )

    def test_sigma_y_eighth(self):
        plan = synthesize(KET0, PLUS)
        expected = [np.cos(np.pi / 8), np.sin(np.pi / 8)]
        np.testing.assert_allclose(trajectory_closed_form(plan, np.pi / 8).amplitudes, expected, atol=1e-15)
        np.testing.assert_allclose(propagate(PAULI_Y, KET0, np.pi / 8).amplitudes, expected, atol=1e-15)

    def test_range(self):
        plan = synthesize(KET0, PLUS)
        with pytest.raises(ParamOutOfRange):
            trajectory_closed_form(plan, plan.t_min * 1.01)
        with pytest.raises(ParamOutOfRange):
            trajectory_closed_form(plan, -0.1)

    @pytest.mark.parametrize("dim", [2, 3])
    def test_matches_propagator(self, rng, dim):
        for _ in range(20):
            plan = synthesize(*random_pair(rng, dim), energy=rng.uniform(0.5, 2), hbar=rng.uniform(0.5, 2))
            times = np.linspace(0, plan.t_min, 50)
            closed = sample_trajectory(plan, 50).states
            exact = propagate_curve(plan.hamiltonian, plan.a, times, plan.hbar).states
            assert np.max(np.linalg.norm(closed - exact, axis=1)) <= 1e-10

    def test_constant_speed_zero_mean(self, rng):
        for _ in range(20):
            plan = synthesize(*random_pair(rng), energy=2.0)
            curve = sample_trajectory(plan, 200)
            for k in range(0, 200, 13):
                assert energy_dispersion(plan.hamiltonian, curve.state(k)) == pytest.approx(2.0, abs=1e-10)
            assert np.max(np.abs(mean_energy_rows(plan.hamiltonian, curve.states))) < 1e-10


class TestParameterMaps:
    def test_xi_values(self):
        plan = synthesize(KET0, PLUS)
        assert xi_of_t(plan, 0.0) == 0.0
        assert xi_of_t(plan, plan.t_min) == pytest.approx(1.0, abs=1e-12)
        assert xi_of_t(plan, np.pi / 8) == pytest.approx(0.5, abs=1e-14)

    def test_eta_values(self):
        plan = synthesize(KET0, PLUS)
        assert eta_of_t(plan, 0.0) == 0.0
        assert eta_of_t(plan, plan.t_min) == pytest.approx(np.pi, abs=1e-9)
        assert eta_of_t(plan, np.pi / 8) == pytest.approx(np.pi / 2, abs=1e-14)

    def test_eta_direct_formula_before_pole(self, rng):
        plan = synthesize(*random_pair(rng), energy=1.3)
        half = plan.theta_fs / 2
        for t in np.linspace(0, 0.99 * plan.t_min, 30):
            wt = 1.3 * t
            ratio = np.sin(wt) / (np.sin(half) * np.cos(wt) - np.cos(half) * np.sin(wt))
            assert eta_of_t(plan, t) == pytest.approx(2 * np.arctan(ratio), abs=1e-12)

    def test_monotone_and_chained(self, rng):
        for _ in range(20):
            plan = synthesize(*random_pair(rng), energy=rng.uniform(0.5, 2))
            times = np.linspace(0, plan.t_min, 500)
            xis = xi_of_t(plan, times)
            etas = eta_of_t(plan, times)
            assert np.all(np.diff(xis) > 0) and np.all(np.diff(etas) > 0)
            chained = np.array([theta_of_xi(x) for x in xis])
            np.testing.assert_allclose(etas, chained, atol=1e-10)

    def test_state_identification(self, rng):
        for dim in (2, 3):
            plan = synthesize(*random_pair(rng, dim), energy=0.9)
            spec = make_geodesic(plan.a, plan.b)
            for t in np.linspace(0, plan.t_min, 60):
                psi = trajectory_closed_form(plan, t).amplitudes
                np.testing.assert_allclose(point_theta(spec, eta_of_t(plan, t)).amplitudes, psi, atol=1e-10)
                np.testing.assert_allclose(point_xi(spec, xi_of_t(plan, t)).amplitudes, psi, atol=1e-10)

    def test_xi_normalization_closed_form(self, rng):
        plan = synthesize(*random_pair(rng), energy=1.7, hbar=0.6)
        spec = make_geodesic(plan.a, plan.b)
        for t in np.linspace(0, plan.t_min, 40):
            assert xi_normalization(spec, xi_of_t(plan, t)) == pytest.approx(
                xi_normalization_of_t(plan, t), abs=1e-10
            )

    def test_range(self):
        plan = synthesize(KET0, PLUS)
        with pytest.raises(ParamOutOfRange):
            xi_of_t(plan, 1.0)
        with pytest.raises(ParamOutOfRange):
            eta_of_t(plan, -1.0)
