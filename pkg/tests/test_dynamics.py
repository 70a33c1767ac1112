"""Derivative oracles, integrator invariants, and the two-path cross-check."""

import math

import numpy as np
import pytest

from memdimer import (
    CircuitParams,
    EnergyForm,
    IntegrationDiverged,
    Meminductive,
    Meminductor,
    Memristive,
    Memristor,
    Static,
    amplification_factor,
    build_hbar_eff,
    build_heff,
    build_kirchhoff_matrix,
    check_pt_symmetry,
    derivative_meminductive,
    derivative_memristive,
    derivative_static,
    eigenvalues_closed_form,
    gamma_pt,
    integrate,
    integrate_psi,
    mu_pt,
    parity_matrix,
    write_trajectory_csv,
)

T0 = 2.0 * math.pi


class TestDerivativeStatic:
    def test_single_voltage_state(self):
        p = CircuitParams.make(mu=0.5, Gamma=0.0)
        rate = derivative_static([2.0, 0, 0, 0, 0], p, 0.0)
        np.testing.assert_allclose(rate, [0, 0, 2.0 / p.L, 0, 2.0 / p.Lc], atol=1e-15)

    def test_energy_conserved_at_zero_gamma(self):
        p = CircuitParams.make(mu=1.2, Gamma=0.0)
        A = EnergyForm.from_params(p).diag
        rng = np.random.default_rng(0)
        for _ in range(20):
            phi = rng.normal(size=5)
            rate = derivative_static(phi, p, 0.0)
            # dE/dt = 2 phi^T A dphi/dt
            assert abs(2.0 * np.dot(A * phi, rate)) < 1e-13 * np.dot(A * phi, phi)

    def test_matches_matrix_vector_oracle(self):
        p = CircuitParams.make(mu=1.0, Gamma=0.5)
        M = build_kirchhoff_matrix(p, 0.5, 0.5)
        rng = np.random.default_rng(1)
        for _ in range(10):
            phi = rng.normal(size=5)
            np.testing.assert_allclose(
                derivative_static(phi, p, 0.5), np.real(-1j * M @ phi), atol=1e-14)


class TestDerivativeMemristive:
    def setup_method(self):
        g_pt = gamma_pt(0.3)
        self.m = Memristor.from_gamma_bounds(0.3 * g_pt, 2.0 * g_pt, x=0.5)
        self.p = CircuitParams.make(mu=0.3, Gamma=0.0)

    def test_zero_voltage_freezes_state(self):
        _, dxdt = derivative_memristive([0.0, 3.0, -1.0, 2.0, 0.7], 0.4, self.m, self.p)
        assert dxdt == 0.0

    def test_window_suppression_near_boundary(self):
        _, near = derivative_memristive([50.0, 0, 0, 0, 0], 1.0 - 1e-9, self.m, self.p)
        _, mid = derivative_memristive([50.0, 0, 0, 0, 0], 0.5, self.m, self.p)
        assert abs(near) < 1e-7 * abs(mid)

    def test_full_rhs_against_direct_kirchhoff_oracle(self):
        # energy-dependence scenario at t=0 with V1(0) = 10 v0: write every
        # term straight from the circuit laws, independent implementation
        phi = np.array([10.0, 0.0, 0.0, 0.0, 0.0])
        x = 0.5
        m, p = self.m, self.p
        R = x * m.r_on + (1.0 - x) * m.r_off
        g = 1.0 / (R * p.C)
        expected_phi = np.array([
            -g * phi[0] - phi[2] / p.C - phi[4] / p.C,
            +g * phi[1] - phi[3] / p.C + phi[4] / p.C,
            phi[0] / p.L,
            phi[1] / p.L,
            (phi[0] - phi[1]) / p.Lc,
        ])
        expected_dxdt = (1.0 - (2 * x - 1) ** 2) * (m.r_on / R) * (phi[0] / m.v0) / T0
        got_phi, got_dxdt = derivative_memristive(phi, x, m, p)
        np.testing.assert_allclose(got_phi, expected_phi, rtol=1e-14)
        assert abs(got_dxdt - expected_dxdt) < 1e-14 * abs(expected_dxdt)


class TestDerivativeMeminductive:
    def setup_method(self):
        m_pt = mu_pt(0.5)
        self.md = Meminductor.from_couplings(1.3 * m_pt, 1.0 * m_pt, y=0.5)
        self.p = CircuitParams.make(
            mu=math.sqrt(1.0 / self.md.inductance(0.5)), Gamma=0.5)

    def test_frozen_memory_reduces_to_static(self):
        phi = np.array([1.0, -2.0, 0.3, 0.4, 0.0])  # ic = 0 so dy/dt = 0
        rate, dydt = derivative_meminductive(phi, 0.5, self.md, self.p, 0.5)
        assert dydt == 0.0
        p_static = CircuitParams.make(
            mu=math.sqrt(1.0 / self.md.inductance(0.5)), Gamma=0.5)
        np.testing.assert_allclose(rate, derivative_static(phi, p_static, 0.5), rtol=1e-14)

    def test_zero_memory_range_is_static_for_all_states(self):
        md = Meminductor(l_small=0.9, l_large=0.9, y=0.4)
        p = CircuitParams.make(mu=math.sqrt(1.0 / 0.9), Gamma=0.2)
        rng = np.random.default_rng(2)
        for _ in range(10):
            phi = rng.normal(size=5)
            rate, _ = derivative_meminductive(phi, 0.4, md, p, 0.2)
            np.testing.assert_allclose(rate, derivative_static(phi, p, 0.2), rtol=1e-13)

    def test_initial_coupling_current_state_hand_evaluation(self):
        # state with only a coupling current: voltage terms vanish and the
        # coupling-current rate is pure back-action
        md, p = self.md, self.p
        ic0 = md.i0
        phi = np.array([0.0, 0.0, 0.0, 0.0, ic0])
        rate, dydt = derivative_meminductive(phi, 0.5, md, p, 0.5)
        lc = md.inductance(0.5)
        expected_dydt = 1.0 * 1.0 * (ic0 / md.i0) * p.omega0  # window=1 at midpoint
        expected_dic = -(md.delta_l / lc) * expected_dydt * ic0
        assert abs(dydt - expected_dydt) < 1e-14
        assert rate[0] == -ic0 / p.C and rate[1] == +ic0 / p.C
        assert rate[2] == 0.0 and rate[3] == 0.0
        assert abs(rate[4] - expected_dic) < 1e-14 * abs(expected_dic)


class TestHbarEff:
    def setup_method(self):
        m_pt = mu_pt(0.5)
        self.md = Meminductor.from_couplings(1.3 * m_pt, 1.0 * m_pt, y=0.5)
        self.p = CircuitParams.make(
            mu=math.sqrt(1.0 / self.md.inductance(0.5)), Gamma=0.5)

    def test_reduces_to_heff_when_memory_frozen(self):
        H = build_hbar_eff(self.p, self.md, 0.5, 0.0)
        mu_y = math.sqrt(self.p.L / self.md.inductance(0.5))
        base = CircuitParams.make(mu=mu_y, Gamma=0.5)
        np.testing.assert_allclose(H, build_heff(base, 0.5), atol=1e-15)

    def test_gauge_term_vanishes_for_zero_range(self):
        md = Meminductor(l_small=1.0, l_large=1.0)
        p = CircuitParams.make(mu=1.0, Gamma=0.5)
        H = build_hbar_eff(p, md, 0.5, 3.7)
        np.testing.assert_allclose(H, build_heff(p, 0.5), atol=1e-15)

    def test_gauge_entry_location_and_value(self):
        dydt = 0.8
        H = build_hbar_eff(self.p, self.md, 0.5, dydt)
        lc = self.md.inductance(0.5)
        mu_y = math.sqrt(self.p.L / lc)
        base = build_heff(CircuitParams.make(mu=mu_y, Gamma=0.5), 0.5)
        diff = H - base
        expected = -0.5j * self.md.delta_l * dydt / lc
        assert diff[4, 4] == expected
        diff[4, 4] = 0.0
        assert np.all(diff == 0.0)

    def test_pt_symmetry_reported_not_asserted_on_sampled_states(self):
        # with a nonzero gauge term the check may legitimately fail; we only
        # record that the checker runs and returns a bool
        results = {check_pt_symmetry(build_hbar_eff(self.p, self.md, y, dydt))
                   for y, dydt in [(0.5, 0.0), (0.5, 1.0), (0.8, -2.0)]}
        assert results <= {True, False}


class TestIntegrate:
    def test_energy_conservation_hermitian_limit(self):
        p = CircuitParams.make(mu=1.0, Gamma=0.0)
        traj = integrate(Static(0.0), p, [1, 0, 0, 0, 0], dt=T0 / 1000, t_end=10 * T0)
        drift = np.abs(traj.energy / traj.energy[0] - 1.0).max()
        assert drift < 1e-8

    def test_growth_rate_matches_closed_form(self):
        p = CircuitParams.make(mu=1.0, Gamma=1.5)
        traj = integrate(Static(1.5), p, [1, 0, 0, 0, 0], dt=T0 / 1000,
                         t_end=60 * T0, divergence_cutoff=1e250)
        tau = traj.times[-1] / 2.0
        lam = amplification_factor(traj.energy, traj.times, tau)
        sigma = max(e.imag for e in eigenvalues_closed_form(1.0, 1.5).nonzero)
        assert abs(lam - 2.0 * sigma) < 0.02 * 2.0 * sigma

    def test_rk4_fourth_order_convergence(self):
        p = CircuitParams.make(mu=1.0, Gamma=0.5)
        t_end, dt = 5 * T0, T0 / 200

        def endpoint(step):
            n = int(round(t_end / step))
            tr = integrate(Static(0.5), p, [1, 0, 0, 0, 0], dt=step, t_end=t_end,
                           record_every=n)
            return tr.states[-1]

        ref = endpoint(dt / 8)
        e1 = np.linalg.norm(endpoint(dt) - ref)
        e2 = np.linalg.norm(endpoint(dt / 2) - ref)
        assert 12.0 < e1 / e2 < 20.0

    def test_deterministic_bit_identical(self):
        g_pt = gamma_pt(0.3)
        m = Memristor.from_gamma_bounds(0.3 * g_pt, 2.0 * g_pt, x=0.5)
        p = CircuitParams.make(mu=0.3, Gamma=0.0)
        a = integrate(Memristive(m), p, [10, 0, 0, 0, 0], dt=T0 / 500, t_end=20 * T0)
        b = integrate(Memristive(m), p, [10, 0, 0, 0, 0], dt=T0 / 500, t_end=20 * T0)
        assert np.array_equal(a.states, b.states)
        assert np.array_equal(a.memory, b.memory)
        assert np.array_equal(a.energy, b.energy)

    def test_uniform_time_grid_and_lengths(self):
        p = CircuitParams.make(mu=0.5, Gamma=0.1)
        traj = integrate(Static(0.1), p, [1, 0, 0, 0, 0], dt=T0 / 100, t_end=3 * T0,
                         record_every=5)
        steps = np.diff(traj.times)
        np.testing.assert_allclose(steps, steps[0], rtol=1e-12)
        assert len(traj.times) == len(traj.energy) == traj.states.shape[0]

    def test_divergence_cutoff_keeps_partial_data(self):
        p = CircuitParams.make(mu=1.0, Gamma=1.5)
        traj = integrate(Static(1.5), p, [1, 0, 0, 0, 0], dt=T0 / 500, t_end=100 * T0,
                         divergence_cutoff=1e10)
        assert traj.diverged and traj.divergence_reason == "energy-cutoff"
        assert traj.energy[-1] > 1e10 * traj.energy[0]
        assert traj.times[-1] < 100 * T0

    def test_memory_bounds_on_randomized_configs(self):
        rng = np.random.default_rng(42)
        for _ in range(10):
            mu = rng.uniform(0.2, 1.5)
            g_pt = gamma_pt(mu)
            m = Memristor.from_gamma_bounds(
                rng.uniform(0.05, 0.8) * g_pt, rng.uniform(1.1, 2.5) * g_pt,
                polarity=int(rng.choice([-1, 1])), x=rng.uniform(0.1, 0.9))
            p = CircuitParams.make(mu=mu, Gamma=0.0)
            amp = rng.uniform(1.0, 300.0)
            try:
                traj = integrate(Memristive(m), p, [amp, 0, 0, 0, 0],
                                 dt=T0 / 500, t_end=20 * T0, record_every=1)
            except IntegrationDiverged as exc:
                traj = exc.trajectory
            assert np.all(traj.memory > 0.0) and np.all(traj.memory < 1.0)

    def test_parity_duality_under_gamma_negation(self):
        # swapping the lossy and amplifying circuits and parity-reflecting
        # the state maps trajectories onto each other
        p = CircuitParams.make(mu=0.8, Gamma=0.4)
        P = parity_matrix()
        phi0 = np.array([0.7, -0.2, 0.1, 0.4, -0.3])
        a = integrate(Static(0.4), p, phi0, dt=T0 / 500, t_end=5 * T0, record_every=1)
        b = integrate(Static(-0.4), p, P @ phi0, dt=T0 / 500, t_end=5 * T0, record_every=1)
        scale = np.abs(a.states).max()
        assert np.abs(b.states - a.states @ P.T).max() < 1e-10 * scale

    def test_validation_errors(self):
        p = CircuitParams.make(mu=1.0, Gamma=0.0)
        with pytest.raises(ValueError):
            integrate(Static(0.0), p, [1, 0, 0, 0, 0], dt=-0.1, t_end=1.0)
        with pytest.raises(ValueError):
            integrate(Static(0.0), p, [1, 0, 0, 0, 0], dt=1.0, t_end=0.5)
        m = Memristor(r_on=1.0, r_off=10.0)
        with pytest.raises(ValueError):
            integrate(Memristive(m), p, [1, 0, 0, 0, 0], mem0=1.5, dt=0.1, t_end=1.0)


class TestAgainstIndependentIntegrator:
    """The compiled fixed-step cores vs scipy's adaptive solver, fed by the
    public derivative functions.  Smooth interior configs only (the clamp
    is a non-smooth regularization the reference solver does not have)."""

    def test_memristive_matches_solve_ivp(self):
        solve_ivp = pytest.importorskip("scipy.integrate").solve_ivp
        g_pt = gamma_pt(0.3)
        m = Memristor.from_gamma_bounds(0.3 * g_pt, 2.0 * g_pt, x=0.5)
        p = CircuitParams.make(mu=0.3, Gamma=0.0)
        phi0 = [0.5, 0, 0, 0, 0]

        def rhs(t, s):
            dphi, dx = derivative_memristive(s[:5], s[5], m, p)
            return np.append(dphi, dx)

        t_end = 20 * T0
        traj = integrate(Memristive(m), p, phi0, 0.5, dt=T0 / 1000, t_end=t_end)
        sol = solve_ivp(rhs, (0, t_end), phi0 + [0.5], rtol=1e-11, atol=1e-12,
                        dense_output=True)
        ref = sol.sol(traj.times)
        assert 0.05 < traj.memory.min() and traj.memory.max() < 0.95
        assert np.abs(ref[:5].T - traj.states).max() < 1e-7 * np.abs(traj.states).max()
        assert np.abs(ref[5] - traj.memory).max() < 1e-8

    def test_meminductive_matches_solve_ivp(self):
        solve_ivp = pytest.importorskip("scipy.integrate").solve_ivp
        m_pt = mu_pt(0.5)
        md = Meminductor.from_couplings(1.5 * m_pt, 1.2 * m_pt, y=0.5)
        p = CircuitParams.make(mu=math.sqrt(1.0 / md.inductance(0.5)), Gamma=0.5)
        phi0 = [0, 0, 0, 0, 0.02]

        def rhs(t, s):
            dphi, dy = derivative_meminductive(s[:5], s[5], md, p, 0.5)
            return np.append(dphi, dy)

        t_end = 20 * T0
        traj = integrate(Meminductive(md, 0.5), p, phi0, 0.5, dt=T0 / 1000, t_end=t_end)
        sol = solve_ivp(rhs, (0, t_end), phi0 + [0.5], rtol=1e-11, atol=1e-12,
                        dense_output=True)
        ref = sol.sol(traj.times)
        assert traj.memory.max() < 0.999  # no clamp events in this config
        assert np.abs(ref[:5].T - traj.states).max() < 1e-7 * np.abs(traj.states).max()
        assert np.abs(ref[5] - traj.memory).max() < 1e-8


class TestTwoPathEquivalence:
    def test_static(self):
        p = CircuitParams.make(mu=1.0, Gamma=0.4)
        a = integrate(Static(0.4), p, [1, 0, 0, 0, 0], dt=T0 / 1000, t_end=50 * T0)
        b = integrate_psi(Static(0.4), p, [1, 0, 0, 0, 0], dt=T0 / 1000, t_end=50 * T0)
        assert np.abs(a.energy - b.energy).max() < 1e-6 * a.energy.max()

    def test_memristive(self):
        g_pt = gamma_pt(0.3)
        m = Memristor.from_gamma_bounds(0.3 * g_pt, 2.0 * g_pt, x=0.5)
        p = CircuitParams.make(mu=0.3, Gamma=0.0)
        phi0 = [20.0 * math.pi, 0, 0, 0, 0]
        a = integrate(Memristive(m), p, phi0, 0.5, dt=T0 / 1000, t_end=50 * T0)
        b = integrate_psi(Memristive(m), p, phi0, 0.5, dt=T0 / 1000, t_end=50 * T0)
        n = min(len(a.times), len(b.times))
        assert np.abs(a.energy[:n] - b.energy[:n]).max() < 1e-6 * a.energy[:n].max()

    def test_meminductive_with_interior_memory(self):
        # small drive keeps y away from the clamp so the comparison probes
        # the smooth flow (and in particular pins the gauge-term sign)
        m_pt = mu_pt(0.5)
        md = Meminductor.from_couplings(1.5 * m_pt, 1.2 * m_pt, y=0.5)
        p = CircuitParams.make(mu=math.sqrt(1.0 / md.inductance(0.5)), Gamma=0.5)
        phi0 = [0, 0, 0, 0, 0.02]
        a = integrate(Meminductive(md, 0.5), p, phi0, 0.5, dt=T0 / 1000, t_end=50 * T0)
        b = integrate_psi(Meminductive(md, 0.5), p, phi0, 0.5, dt=T0 / 1000, t_end=50 * T0)
        assert a.memory.min() > 0.01 and a.memory.max() < 0.9999
        assert np.abs(a.energy - b.energy).max() < 1e-6 * a.energy.max()


class TestTrajectoryExport:
    def test_csv_columns_and_static_empties(self, tmp_path):
        p = CircuitParams.make(mu=1.0, Gamma=0.1)
        traj = integrate(Static(0.1), p, [1, 0, 0, 0, 0], dt=T0 / 100, t_end=T0)
        path = tmp_path / "traj.csv"
        write_trajectory_csv(traj, path, header_lines=["schema=1"])
        lines = path.read_text().splitlines()
        assert lines[0] == "# schema=1"
        assert lines[1] == "t,V1,V2,I1,I2,Ic,mem,E,gamma_inst,gamma_avg"
        first = lines[2].split(",")
        assert len(first) == 10
        assert first[6] == "" and first[8] == "" and first[9] == ""
        assert float(first[7]) == traj.energy[0]

    def test_csv_memristive_columns_roundtrip(self, tmp_path):
        g_pt = gamma_pt(0.3)
        m = Memristor.from_gamma_bounds(0.3 * g_pt, 2.0 * g_pt, x=0.5)
        p = CircuitParams.make(mu=0.3, Gamma=0.0)
        traj = integrate(Memristive(m), p, [1, 0, 0, 0, 0], dt=T0 / 100, t_end=T0)
        path = tmp_path / "traj.csv"
        write_trajectory_csv(traj, path)
        rows = [l.split(",") for l in path.read_text().splitlines()[1:]]
        assert len(rows) == len(traj.times)
        k = len(rows) // 2
        assert float(rows[k][6]) == traj.memory[k]
        assert float(rows[k][8]) == traj.gamma_inst[k]
        assert float(rows[k][9]) == traj.gamma_avg[k]
