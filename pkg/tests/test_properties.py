"""Property-based checks of the algebraic contracts the suite leans on.

Each test states an identity that must hold for every input in its
domain: angle reduction stays congruent mod 2*pi at a graded tolerance,
derived parameters satisfy their defining products, the Bessel table
obeys the quadratic sum rule, free flight composes additively, kicks
are unitary, and the classical map inverts cleanly.
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bohmrotor import (
    MapState,
    RotorParams,
    Trajectory,
    TrajectoryMeta,
    classical_energy_series,
    divergence_report,
    make_eigenstate,
    make_cosine_superposition,
    make_gaussian_packet,
    mean_energy,
    standard_map_inverse,
    standard_map_step,
    wrap_angle,
)
from bohmrotor.core import TWO_PI
from bohmrotor.spectral import (
    apply_kick,
    bessel_j_sequence,
    evolve_timeline,
    free_propagate,
)

_PARAMS = RotorParams.from_dimensionless(10.0, 0.5)
_KICKED = evolve_timeline(make_eigenstate(0), _PARAMS, 1).epochs[1]


def _congruence_gap(a, b):
    # distance between a and b modulo 2*pi, in [0, pi]
    return abs(math.remainder(a - b, TWO_PI))


class TestWrapAngle:
    @given(st.floats(-1e3, 1e3))
    def test_graded_tolerance_small(self, theta):
        w = wrap_angle(theta)
        assert 0.0 <= w < TWO_PI
        assert _congruence_gap(w, theta) < 1e-12

    @given(st.floats(-1e6, 1e6))
    def test_graded_tolerance_large(self, theta):
        w = wrap_angle(theta)
        assert 0.0 <= w < TWO_PI
        assert _congruence_gap(w, theta) < 1e-9

    @given(st.floats(-1e6, 1e6))
    def test_idempotent(self, theta):
        w = wrap_angle(theta)
        assert wrap_angle(w) == w


class TestParams:
    @given(st.floats(1e-3, 1e3), st.floats(1e-3, 1e2))
    def test_stochasticity_is_literal_product(self, k, tau):
        p = RotorParams.from_dimensionless(k, tau)
        assert p.stochasticity == p.k * p.tau
        assert p.k == pytest.approx(k, rel=1e-12)
        assert p.tau == pytest.approx(tau, rel=1e-12)

    @given(st.floats(1e-2, 1e2), st.floats(1e-2, 1e2),
           st.floats(1e-2, 1e2), st.floats(1e-2, 1e2))
    def test_dimensional_identity(self, hbar, inertia, omega0, period):
        p = RotorParams(hbar=hbar, inertia=inertia, omega0=omega0,
                        period=period)
        assert p.stochasticity == p.k * p.tau
        assert p.stochasticity == pytest.approx((p.omega0 * p.period) ** 2,
                                                rel=1e-12)


class TestBessel:
    @given(st.floats(0.1, 30.0))
    @settings(max_examples=40)
    def test_quadratic_sum_rule(self, x):
        # sum over all integer orders of J_n(x)^2 is exactly 1; the table
        # is normalized with the linear even-order rule, so this one is an
        # independent cross-check
        j = bessel_j_sequence(int(x) + 45, x)
        total = j[0] ** 2 + 2.0 * float(np.sum(j[1:] ** 2))
        assert total == pytest.approx(1.0, abs=1e-12)


class TestSpectral:
    @given(st.floats(0.0, 4.0), st.floats(0.0, 4.0))
    @settings(max_examples=40)
    def test_free_flight_composes(self, dt1, dt2):
        s = make_cosine_superposition(0.5)
        a = free_propagate(free_propagate(s, dt1, _PARAMS), dt2, _PARAMS)
        b = free_propagate(s, dt1 + dt2, _PARAMS)
        assert np.max(np.abs(a.coeffs - b.coeffs)) < 1e-12
        assert a.time == pytest.approx(b.time, rel=1e-15)

    @given(st.floats(-5.0, 5.0), st.floats(0.3, 2.0))
    @settings(max_examples=25, deadline=None)
    def test_kick_is_unitary(self, p_mean, halfwidth):
        s = make_gaussian_packet(p_mean, halfwidth)
        kicked, defect = apply_kick(s, _PARAMS)
        assert defect < 1e-10
        assert np.sum(np.abs(kicked.coeffs) ** 2) == pytest.approx(1.0,
                                                                   abs=1e-12)

    @given(st.floats(0.0, TWO_PI))
    def test_energy_ignores_global_phase(self, phi):
        rotated = _KICKED.replace_coeffs(_KICKED.coeffs * np.exp(1j * phi))
        assert mean_energy(rotated, _PARAMS) == pytest.approx(
            mean_energy(_KICKED, _PARAMS), rel=1e-12)


class TestClassicalMap:
    @given(st.floats(0.0, 6.28), st.floats(-50.0, 50.0), st.floats(0.0, 10.0))
    def test_inverse_round_trip(self, theta, p, bigK):
        s = MapState(theta=theta, p=p)
        r = standard_map_inverse(standard_map_step(s, bigK), bigK)
        assert _congruence_gap(r.theta, theta) < 1e-12
        assert r.p == pytest.approx(p, abs=1e-9)

    @given(st.integers(1, 200), st.integers(0, 50), st.floats(-5.0, 5.0))
    @settings(max_examples=30, deadline=None)
    def test_zero_k_energy_is_flat(self, m, n_kicks, p0):
        e = classical_energy_series(0.0, m, n_kicks, seed=7, p0=p0)
        assert e.shape == (n_kicks + 1,)
        assert np.allclose(e, 0.5 * p0 * p0, rtol=1e-13, atol=0.0)


def _synth(t, theta_u):
    t = np.asarray(t, float)
    th = np.asarray(theta_u, float)
    meta = TrajectoryMeta(mode="synthetic", description="", theta0=float(th[0]),
                          omega0=None, t_span=(float(t[0]), float(t[-1])),
                          rtol=0.0, atol=0.0, steps=0, rejects=0,
                          min_density=math.inf, period=1.0)
    return Trajectory(t=t, kick=np.zeros(t.size, np.int64),
                      theta_wrapped=wrap_angle(th), theta_unwrapped=th,
                      p_theta=np.zeros_like(th), meta=meta)


class TestDiagnostics:
    @given(st.floats(1e-6, 1e-2), st.floats(0.0, 0.6), st.integers(21, 301))
    @settings(max_examples=40)
    def test_divergence_is_symmetric(self, amp, rate, n):
        t = np.linspace(0.0, 20.0, n)
        a = _synth(t, 0.05 * t)
        b = _synth(t, 0.05 * t + amp * np.exp(rate * t))
        ra = divergence_report(a, b)
        rb = divergence_report(b, a)
        assert ra.verdict == rb.verdict
        assert np.array_equal(ra.separations, rb.separations)
        assert ra.log_fit_rate == rb.log_fit_rate
        assert ra.n_fit == rb.n_fit
