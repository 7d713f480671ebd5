"""Velocity-law and Newtonian trajectory tests.

The cosine superposition with a = 1/2 gives closed forms at t = 0:
psi = (1 + cos th)/sqrt(3 pi), so Q = (1/2) cos th / (1 + cos th) and
-dQ/dth = (1/2) sin th / (1 + cos th)^2 (hbar = I = 1). Eigenstates give
uniform drift, and the equal two-mode state co-moves with its node at
angular velocity 1/2. These anchor the spectral machinery pointwise;
the integration tests then check row layout, kick jumps, and the
constrained-Newton equivalence.
"""
import math

import numpy as np
import pytest

from bohmrotor import (
    HorizonError,
    NodeProximityError,
    ParameterDomainError,
    TWO_PI,
    bohm_velocity,
    free_timeline,
    integrate_bohm_trajectory,
    integrate_newton_trajectory,
    make_eigenstate,
    make_two_mode,
    quantum_force,
    quantum_potential,
    wrap_angle,
)

from conftest import assert_rows_sorted


class TestPointwise:
    def test_eigenstate_velocity_uniform(self, params):
        tl = free_timeline(make_eigenstate(2), params)
        for th, t in ((0.0, 0.0), (2.5, 1.7), (5.9, 40.0)):
            assert bohm_velocity(tl, th, t) == pytest.approx(2.0, abs=1e-13)

    def test_real_state_velocity_zero(self, cosine_timeline):
        assert bohm_velocity(cosine_timeline, 1.0, 0.0) == pytest.approx(0.0, abs=1e-13)

    def test_quantum_potential_closed_form(self, cosine_timeline):
        for th in (0.5, math.pi / 3.0, 2.0, 4.5):
            ref = 0.5 * math.cos(th) / (1.0 + math.cos(th))
            got = quantum_potential(cosine_timeline, th, 0.0)
            assert got == pytest.approx(ref, abs=1e-10)

    def test_quantum_force_closed_form(self, cosine_timeline):
        for th in (0.5, math.pi / 3.0, 2.0):
            ref = 0.5 * math.sin(th) / (1.0 + math.cos(th)) ** 2
            got = quantum_force(cosine_timeline, th, 0.0)
            assert got == pytest.approx(ref, abs=1e-9)

    def test_force_is_minus_potential_gradient(self, cosine_timeline):
        th, h = 1.2, 1e-6
        qp = quantum_potential(cosine_timeline, th + h, 0.4)
        qm = quantum_potential(cosine_timeline, th - h, 0.4)
        fd = -(qp - qm) / (2.0 * h)
        assert quantum_force(cosine_timeline, th, 0.4) == pytest.approx(fd, rel=1e-5)

    def test_node_raises(self, cosine_timeline):
        # psi(pi, 0) = 0 exactly
        for fn in (bohm_velocity, quantum_potential, quantum_force):
            with pytest.raises(NodeProximityError) as err:
                fn(cosine_timeline, math.pi, 0.0)
            assert err.value.event.density < 1e-12


class TestVelocityLawIntegration:
    def test_eigenstate_drift(self, params):
        tl = free_timeline(make_eigenstate(2), params)
        traj = integrate_bohm_trajectory(tl, 0.3, (0.0, 3.0), rtol=1e-10)
        ref = 0.3 + 2.0 * traj.t
        assert np.max(np.abs(traj.theta_unwrapped - ref)) < 1e-9
        assert np.max(np.abs(traj.p_theta - 2.0)) < 1e-9

    def test_two_mode_comoves_with_node(self, params):
        s = make_two_mode(1.0, 1.0)
        tl = free_timeline(s, params)
        traj = integrate_bohm_trajectory(tl, 1.0, (0.0, 8.0), rtol=1e-10)
        ref = 1.0 + 0.5 * traj.t
        assert np.max(np.abs(traj.theta_unwrapped - ref)) < 1e-8

    def test_free_rotor_implicit_relation(self, cosine_timeline):
        """(1+2a^2)(th-th0) + a^2(sin 2th - sin 2th0)
        + 4a(cos(t/2) sin th - sin th0) = 0 along every trajectory."""
        a, th0 = 0.5, 0.5
        traj = integrate_bohm_trajectory(cosine_timeline, th0, (0.0, 2.0),
                                         rtol=1e-9)
        th = traj.theta_unwrapped
        res = ((1.0 + 2.0 * a * a) * (th - th0)
               + a * a * (np.sin(2.0 * th) - math.sin(2.0 * th0))
               + 4.0 * a * (np.cos(traj.t / 2.0) * np.sin(th) - math.sin(th0)))
        assert np.max(np.abs(res)) < 1e-8

    def test_wrapped_matches_unwrapped(self, params):
        tl = free_timeline(make_eigenstate(3), params)
        traj = integrate_bohm_trajectory(tl, 0.1, (0.0, 10.0))
        w = wrap_angle(traj.theta_unwrapped)
        assert np.max(np.abs(w - traj.theta_wrapped)) < 1e-10

    def test_node_start_fails(self, cosine_timeline):
        with pytest.raises(NodeProximityError):
            integrate_bohm_trajectory(cosine_timeline, math.pi, (0.0, 1.0))


class TestKickedRows:
    def test_row_layout(self, params, ground_timeline):
        T = params.period
        traj = integrate_bohm_trajectory(ground_timeline, 0.5, (0.0, 2.0 * T),
                                         rtol=1e-8, cadence=4)
        assert_rows_sorted(traj)
        # 5 rows in each of two segments plus the final post-kick row
        assert len(traj) == 11
        assert list(traj.kick) == [0] * 5 + [1] * 5 + [2]
        assert traj.t[0] == 0.0
        assert traj.t[4] == pytest.approx(T)
        assert traj.t[5] == pytest.approx(T)
        assert traj.t[-2] == pytest.approx(2.0 * T)
        assert traj.t[-1] == pytest.approx(2.0 * T)
        # angle continuous across both kick instants
        assert traj.theta_unwrapped[5] == pytest.approx(traj.theta_unwrapped[4],
                                                        abs=1e-12)
        assert traj.theta_unwrapped[10] == pytest.approx(traj.theta_unwrapped[9],
                                                         abs=1e-12)

    def test_momentum_jump_is_classical_impulse(self, params, ground_timeline):
        """p(NT+) - p(NT-) = -hbar k sin(theta) at every kick crossing."""
        T = params.period
        traj = integrate_bohm_trajectory(ground_timeline, 0.5, (0.0, 4.0 * T),
                                         rtol=1e-8, cadence=10)
        hk = params.hbar * params.k
        found = 0
        for i in range(len(traj) - 1):
            if traj.t[i + 1] == traj.t[i] and traj.kick[i + 1] == traj.kick[i] + 1:
                jump = traj.p_theta[i + 1] - traj.p_theta[i]
                ref = -hk * math.sin(traj.theta_wrapped[i])
                assert jump == pytest.approx(ref, abs=1e-8)
                found += 1
        assert found == 4

    def test_partial_span(self, params, ground_timeline):
        traj = integrate_bohm_trajectory(ground_timeline, 0.5, (0.3, 0.9),
                                         rtol=1e-8, cadence=5)
        assert traj.t[0] == 0.3
        assert traj.t[-1] == pytest.approx(0.9)
        assert traj.kick[0] == 0 and traj.kick[-1] == 1
        assert_rows_sorted(traj)

    def test_meta(self, params, ground_timeline):
        traj = integrate_bohm_trajectory(ground_timeline, 0.5, (0.0, 1.0),
                                         rtol=1e-7, description="unit test")
        m = traj.meta
        assert m.mode == "bohm_velocity"
        assert m.description == "unit test"
        assert m.rtol == 1e-7 and m.atol == pytest.approx(1e-9)
        assert m.steps > 0 and m.rejects >= 0
        assert 0.0 < m.min_density < math.inf
        assert m.t_span == (0.0, 1.0)
        assert m.period == params.period


class TestSpanValidation:
    def test_bad_spans(self, ground_timeline):
        with pytest.raises(ParameterDomainError):
            integrate_bohm_trajectory(ground_timeline, 0.5, (-0.1, 1.0))
        with pytest.raises(ParameterDomainError):
            integrate_bohm_trajectory(ground_timeline, 0.5, (1.0, 1.0))
        with pytest.raises(HorizonError):
            integrate_bohm_trajectory(ground_timeline, 0.5, (0.0, 99.0))

    def test_free_timeline_has_no_horizon(self, cosine_timeline):
        traj = integrate_bohm_trajectory(cosine_timeline, 0.5, (0.0, 30.0),
                                         rtol=1e-6)
        assert traj.t[-1] == pytest.approx(30.0)


class TestNewton:
    def test_constrained_matches_velocity_law_free(self, cosine_timeline):
        th0 = 0.5
        v0 = bohm_velocity(cosine_timeline, th0, 0.0)
        newton = integrate_newton_trajectory(cosine_timeline, th0, v0,
                                             (0.0, 3.0), rtol=1e-9)
        bohm = integrate_bohm_trajectory(cosine_timeline, th0, (0.0, 3.0),
                                         rtol=1e-9)
        # same cadence grid, so the rows align
        assert np.allclose(newton.t, bohm.t)
        assert np.max(np.abs(newton.theta_unwrapped - bohm.theta_unwrapped)) < 1e-6

    def test_constrained_matches_velocity_law_kicked(self, params, ground_timeline):
        T = params.period
        th0 = 0.5
        v0 = bohm_velocity(ground_timeline, th0, 0.0)
        newton = integrate_newton_trajectory(ground_timeline, th0, v0,
                                             (0.0, 2.0 * T), rtol=1e-8)
        bohm = integrate_bohm_trajectory(ground_timeline, th0, (0.0, 2.0 * T),
                                         rtol=1e-8)
        assert np.max(np.abs(newton.theta_unwrapped - bohm.theta_unwrapped)) < 1e-3

    def test_kick_impulse_on_flat_state(self, params, ground_timeline):
        # epoch 0 is the ground state: uniform density, zero quantum force,
        # so the angle drifts linearly and the first kick applies exactly
        # -hbar k sin(theta(T)) / I on top
        T = params.period
        th0, w0 = 0.3, 1.0
        traj = integrate_newton_trajectory(ground_timeline, th0, w0,
                                           (0.0, T), rtol=1e-10,
                                           cadence=4)
        i_pre = int(np.nonzero((np.abs(traj.t - T) < 1e-12) & (traj.kick == 0))[0][0])
        i_post = int(np.nonzero((np.abs(traj.t - T) < 1e-12) & (traj.kick == 1))[0][0])
        th_T = th0 + w0 * T
        assert traj.theta_unwrapped[i_pre] == pytest.approx(th_T, abs=1e-10)
        assert traj.p_theta[i_pre] == pytest.approx(w0 * params.inertia, abs=1e-10)
        ref = params.inertia * (w0 - params.hbar * params.k
                                / params.inertia * math.sin(th_T))
        assert traj.p_theta[i_post] == pytest.approx(ref, abs=1e-9)

    def test_mode_label(self, cosine_timeline):
        traj = integrate_newton_trajectory(cosine_timeline, 0.5, 0.0, (0.0, 0.5))
        assert traj.meta.mode == "newton"
        assert traj.meta.omega0 == 0.0
