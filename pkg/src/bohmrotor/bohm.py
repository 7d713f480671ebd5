"""Pilot-wave dynamics on an evolved timeline.

The velocity law reads the phase gradient straight off the wavefunction,
I*dtheta/dt = hbar*Im(psi* dpsi/dtheta)/|psi|^2, so a trajectory is an
integral curve of a field the timeline already determines. The Newtonian
alternative integrates I*theta'' = -dQ/dtheta with the quantum potential
Q = -(hbar^2/2I) R''/R; with the initial angular velocity constrained to
the phase gradient it retraces the velocity-law path, and with that
constraint relaxed it need not.

Trajectories are integrated segment by segment between kicks. Positions
are continuous across a kick; only the momentum read from the new
wavefunction jumps. Integration error is controlled per step against
atol + rtol on a one-radian angle scale (and atol + rtol*max(1,|omega|)
on the Newtonian angular velocity).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import TWO_PI, wrap_angle
from .errors import (
    HorizonError,
    NodeProximityError,
    NumericalError,
    ParameterDomainError,
)
from .spectral import evaluate_psi
from .kernels._tableau import NODE, OK, UNDERFLOW

DEFAULT_RTOL = 1e-9
DEFAULT_NODE_FLOOR = 1e-10
DEFAULT_MAX_HALVINGS = 40
DEFAULT_CADENCE = 20

_TINY_FRAC = 1e-9


@dataclass(frozen=True)
class NodeEvent:
    """Closest recorded approach to a wavefunction node."""

    t: float
    theta: float
    density: float


@dataclass(frozen=True)
class TrajectoryMeta:
    """Provenance and integrator statistics for one trajectory."""

    mode: str
    description: str
    theta0: float
    omega0: float | None
    t_span: tuple
    rtol: float
    atol: float
    steps: int
    rejects: int
    min_density: float
    period: float


@dataclass(frozen=True)
class Trajectory:
    """Sampled path: parallel arrays of time, kick index, angle, momentum.

    Rows are ordered lexicographically by (t, kick): each interior kick
    instant appears twice, first with the pre-kick epoch's momentum, then
    with the post-kick one at the same t. theta_wrapped is congruent to
    theta_unwrapped mod 2*pi.
    """

    t: np.ndarray
    kick: np.ndarray
    theta_wrapped: np.ndarray
    theta_unwrapped: np.ndarray
    p_theta: np.ndarray
    meta: TrajectoryMeta

    def __len__(self):
        return self.t.size


def _floor_values(timeline, epoch_idx, frac):
    """(kernel-unit floor, physical floor) for the node guard."""
    state = timeline.epochs[epoch_idx]
    norm_sq = float(np.sum(np.abs(state.coeffs) ** 2))
    return frac * norm_sq, frac * norm_sq / TWO_PI


def bohm_velocity(timeline, theta, t, node_floor_frac=DEFAULT_NODE_FLOOR):
    """Angular velocity (hbar/I) Im(psi* psi')/|psi|^2 at one point."""
    sample = evaluate_psi(timeline, theta, t)
    idx = timeline.epoch_at(t)
    _, floor_phys = _floor_values(timeline, idx, node_floor_frac)
    if sample.density < floor_phys:
        raise NodeProximityError(NodeEvent(t=t, theta=theta, density=sample.density))
    p = timeline.params
    num = (sample.psi.conjugate() * sample.d1).imag
    return (p.hbar / p.inertia) * num / sample.density


def quantum_potential(timeline, theta, t, node_floor_frac=DEFAULT_NODE_FLOOR):
    """Q = -(hbar^2 / 2I) R''/R from the polar decomposition psi = R e^(iS/hbar)."""
    sample = evaluate_psi(timeline, theta, t)
    idx = timeline.epoch_at(t)
    _, floor_phys = _floor_values(timeline, idx, node_floor_frac)
    if sample.density < floor_phys:
        raise NodeProximityError(NodeEvent(t=t, theta=theta, density=sample.density))
    p = timeline.params
    r = math.sqrt(sample.density)
    rp = (sample.psi.conjugate() * sample.d1).real / r
    rpp = (abs(sample.d1) ** 2 + (sample.psi.conjugate() * sample.d2).real
           - rp * rp) / r
    return -(p.hbar ** 2 / (2.0 * p.inertia)) * rpp / r


def quantum_force(timeline, theta, t, node_floor_frac=DEFAULT_NODE_FLOOR):
    """-dQ/dtheta, from exact spectral derivatives of psi up to third order."""
    sample = evaluate_psi(timeline, theta, t)
    idx = timeline.epoch_at(t)
    _, floor_phys = _floor_values(timeline, idx, node_floor_frac)
    if sample.density < floor_phys:
        raise NodeProximityError(NodeEvent(t=t, theta=theta, density=sample.density))
    p = timeline.params
    r = math.sqrt(sample.density)
    rp = (sample.psi.conjugate() * sample.d1).real / r
    rpp = (abs(sample.d1) ** 2 + (sample.psi.conjugate() * sample.d2).real
           - rp * rp) / r
    rppp = (3.0 * (sample.d1.conjugate() * sample.d2).real
            + (sample.psi.conjugate() * sample.d3).real - 3.0 * rp * rpp) / r
    return (p.hbar ** 2 / (2.0 * p.inertia)) * (rppp * r - rpp * rp) / sample.density


def _check_span(timeline, t_span):
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not (0.0 <= t0 < t1):
        raise ParameterDomainError("t_span must satisfy 0 <= t0 < t1")
    if t1 > timeline.horizon:
        raise HorizonError(
            "t_span end %g beyond evolved horizon %g" % (t1, timeline.horizon)
        )
    return t0, t1


def _segment_samples(pos, seg_end, grid_step, t1):
    """Local sample offsets within one segment: endpoints plus cadence grid."""
    span = seg_end - pos
    tiny = _TINY_FRAC * max(grid_step, 1.0)
    offs = [0.0]
    if grid_step > 0.0:
        m = math.floor(pos / grid_step) + 1
        while m * grid_step < seg_end - tiny:
            val = m * grid_step - pos
            if val > tiny:
                offs.append(val)
            m += 1
    offs.append(span)
    return np.asarray(offs)


def _segment_bounds(timeline, e, pos, t1):
    if timeline.free:
        return t1
    T = timeline.params.period
    if e < timeline.n_kicks:
        return min(t1, (e + 1) * T)
    return min(t1, timeline.horizon)


def _raise_for_status(status, pos, node_t, node_th, node_rho):
    if status == NODE:
        raise NodeProximityError(
            NodeEvent(t=pos + node_t, theta=wrap_angle(node_th),
                      density=node_rho / TWO_PI)
        )
    if status == UNDERFLOW:
        raise NumericalError(
            "step size underflow near t=%.9g (theta=%.9g)" % (pos + node_t, node_th)
        )


def integrate_bohm_trajectory(timeline, theta0, t_span, rtol=DEFAULT_RTOL,
                              atol=None, cadence=DEFAULT_CADENCE,
                              node_floor_frac=DEFAULT_NODE_FLOOR,
                              max_halvings=DEFAULT_MAX_HALVINGS,
                              description="spectral state"):
    """Integrate the velocity law from theta0 across t_span.

    Samples land on every kick instant inside the span (both the pre- and
    post-kick row) and on a uniform grid of `cadence` points per kick
    period. Returns a Trajectory; raises on node proximity or when the
    span leaves the timeline horizon.
    """
    t0, t1 = _check_span(timeline, t_span)
    if atol is None:
        atol = rtol * 1e-2
    prm = timeline.params
    vel_scale = prm.hbar / prm.inertia
    beta_rate = prm.hbar / (2.0 * prm.inertia)
    grid_step = prm.period / cadence if cadence else 0.0

    ts, ks, th_w, th_u, ps = [], [], [], [], []
    theta_u = float(theta0)
    pos = t0
    e = timeline.epoch_at(t0)
    h_carry = 0.0
    steps = rejects = 0
    min_rho = math.inf

    while True:
        seg_end = _segment_bounds(timeline, e, pos, t1)
        epoch = timeline.epochs[e]
        floor_kernel, _ = _floor_values(timeline, e, node_floor_frac)
        sample_dts = _segment_samples(pos, seg_end, grid_step, t1)
        w0 = wrap_angle(theta_u)
        res = kernels.active.integrate_velocity_segment(
            epoch.coeffs, epoch.n_min, vel_scale, beta_rate,
            pos - epoch.time, seg_end - pos, w0, sample_dts,
            rtol, atol, floor_kernel, h_carry, max_halvings,
        )
        thetas, vels, status, h_carry, st, rj, mr, node_t, node_th, node_rho = res
        _raise_for_status(status, pos, node_t, node_th, node_rho)
        steps += st
        rejects += rj
        min_rho = min(min_rho, mr)

        base = theta_u - w0
        for i in range(sample_dts.size):
            ts.append(pos + sample_dts[i])
            ks.append(e)
            th_u.append(base + thetas[i])
            th_w.append(wrap_angle(thetas[i]))
            ps.append(prm.inertia * vels[i])
        theta_u = base + thetas[-1]

        pos = seg_end
        if pos >= t1 - _TINY_FRAC * max(1.0, prm.period):
            break
        e += 1

    # final post-kick row when the span ends exactly on a kick instant
    if not timeline.free:
        T = prm.period
        n_end = int(round(t1 / T))
        if (abs(t1 - n_end * T) < _TINY_FRAC * T and 0 < n_end <= timeline.n_kicks
                and n_end > e):
            v = bohm_velocity(timeline, th_w[-1], t1, node_floor_frac)
            ts.append(t1)
            ks.append(n_end)
            th_u.append(theta_u)
            th_w.append(th_w[-1])
            ps.append(prm.inertia * v)

    meta = TrajectoryMeta(
        mode="bohm_velocity", description=description, theta0=float(theta0),
        omega0=None, t_span=(t0, t1), rtol=rtol, atol=atol, steps=steps,
        rejects=rejects, min_density=min_rho / TWO_PI, period=prm.period,
    )
    return Trajectory(
        t=np.asarray(ts), kick=np.asarray(ks, dtype=np.int64),
        theta_wrapped=np.asarray(th_w), theta_unwrapped=np.asarray(th_u),
        p_theta=np.asarray(ps), meta=meta,
    )


def integrate_newton_trajectory(timeline, theta0, omega0_init, t_span,
                                rtol=DEFAULT_RTOL, atol=None,
                                cadence=DEFAULT_CADENCE,
                                node_floor_frac=DEFAULT_NODE_FLOOR,
                                max_halvings=DEFAULT_MAX_HALVINGS,
                                description="spectral state"):
    """Integrate I*theta'' = -dQ/dtheta from (theta0, omega0_init).

    No constraint ties omega0_init to the phase gradient. Between kicks
    the only force is the quantum force; each kick contributes the
    classical potential impulse delta omega = -(hbar k / I) sin(theta)
    on top of the new wavefunction's quantum force.
    """
    t0, t1 = _check_span(timeline, t_span)
    if atol is None:
        atol = rtol * 1e-2
    prm = timeline.params
    acc_scale = prm.hbar ** 2 / (2.0 * prm.inertia ** 2)
    beta_rate = prm.hbar / (2.0 * prm.inertia)
    grid_step = prm.period / cadence if cadence else 0.0
    impulse = prm.hbar * prm.k / prm.inertia

    ts, ks, th_w, th_u, ps = [], [], [], [], []
    theta_u = float(theta0)
    omega = float(omega0_init)
    pos = t0
    e = timeline.epoch_at(t0)
    h_carry = 0.0
    steps = rejects = 0
    min_rho = math.inf

    while True:
        seg_end = _segment_bounds(timeline, e, pos, t1)
        epoch = timeline.epochs[e]
        floor_kernel, _ = _floor_values(timeline, e, node_floor_frac)
        sample_dts = _segment_samples(pos, seg_end, grid_step, t1)
        w0 = wrap_angle(theta_u)
        res = kernels.active.integrate_newton_segment(
            epoch.coeffs, epoch.n_min, acc_scale, beta_rate,
            pos - epoch.time, seg_end - pos, w0, omega, sample_dts,
            rtol, atol, floor_kernel, h_carry, max_halvings,
        )
        thetas, omegas, status, h_carry, st, rj, mr, node_t, node_th, node_rho = res
        _raise_for_status(status, pos, node_t, node_th, node_rho)
        steps += st
        rejects += rj
        min_rho = min(min_rho, mr)

        base = theta_u - w0
        for i in range(sample_dts.size):
            ts.append(pos + sample_dts[i])
            ks.append(e)
            th_u.append(base + thetas[i])
            th_w.append(wrap_angle(thetas[i]))
            ps.append(prm.inertia * omegas[i])
        theta_u = base + thetas[-1]
        omega = float(omegas[-1])

        pos = seg_end
        if pos >= t1 - _TINY_FRAC * max(1.0, prm.period):
            break
        e += 1
        # crossing a kick: position continuous, angular velocity kicked
        omega -= impulse * math.sin(theta_u)

    if not timeline.free:
        T = prm.period
        n_end = int(round(t1 / T))
        if (abs(t1 - n_end * T) < _TINY_FRAC * T and 0 < n_end <= timeline.n_kicks
                and n_end > e):
            omega -= impulse * math.sin(theta_u)
            ts.append(t1)
            ks.append(n_end)
            th_u.append(theta_u)
            th_w.append(th_w[-1])
            ps.append(prm.inertia * omega)

    meta = TrajectoryMeta(
        mode="newton", description=description, theta0=float(theta0),
        omega0=float(omega0_init), t_span=(t0, t1), rtol=rtol, atol=atol,
        steps=steps, rejects=rejects, min_density=min_rho / TWO_PI,
        period=prm.period,
    )
    return Trajectory(
        t=np.asarray(ts), kick=np.asarray(ks, dtype=np.int64),
        theta_wrapped=np.asarray(th_w), theta_unwrapped=np.asarray(th_u),
        p_theta=np.asarray(ps), meta=meta,
    )
