"""Classical kicked-rotor dynamics: the standard map and its diagnostics.

One kick period maps (theta, p) to (theta + p', p') with
p' = p + K sin(theta), angles taken mod 2*pi. K = k * tau is the single
parameter separating quasi-regular motion (small K) from large-scale
chaos; K = 5 sits well above the last invariant circle.

The momentum here is the dimensionless p = omega * T; multiply by
I/T to recover angular momentum in the dimensional units of RotorParams.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .bohm import Trajectory, TrajectoryMeta
from .core import TWO_PI
from .errors import ParameterDomainError

DEFAULT_RENORM_EVERY = 10
DEFAULT_PAIR_OFFSET = 1e-8


@dataclass(frozen=True)
class MapState:
    """One point of the standard map's cylinder phase space."""

    theta: float
    p: float

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.p)):
            raise ParameterDomainError("map state must be finite")


def standard_map_step(s, bigK):
    """Advance one kick period: kick the momentum, then rotate.

    Angles reduce with plain modulo, matching the batch kernels bit for
    bit; under chaotic stretching any sub-ulp reduction error is
    meaningless, so agreement with the hot path wins over the compensated
    reduction wrap_angle uses for winding bookkeeping.
    """
    p_new = s.p + bigK * math.sin(s.theta)
    return MapState(theta=(s.theta + p_new) % TWO_PI, p=p_new)


def standard_map_inverse(s, bigK):
    """Inverse step; composing with standard_map_step recovers the input."""
    theta_old = (s.theta - s.p) % TWO_PI
    return MapState(theta=theta_old, p=s.p - bigK * math.sin(theta_old))


def map_orbit(initial, bigK, n_steps):
    """Iterate n_steps times; returns (thetas, ps) arrays of n_steps+1 points."""
    if n_steps < 0:
        raise ParameterDomainError("n_steps must be nonnegative")
    return kernels.active.standard_map_orbit(
        float(initial.theta), float(initial.p), float(bigK), int(n_steps)
    )


def map_trajectory(initial, bigK, n_steps, period=1.0, description="standard map"):
    """Present a map orbit as a Trajectory sampled at kick instants.

    Row N sits at t = N*period with kick index N, so stroboscopic
    sectioning returns the raw iterates. The p_theta column carries the
    map's dimensionless momentum; the unwrapped angle accumulates the
    pre-wrap increments theta' = theta + p', which the momenta determine
    exactly.
    """
    if period <= 0.0:
        raise ParameterDomainError("period must be positive")
    thetas, ps = map_orbit(initial, bigK, n_steps)
    th_u = np.empty_like(thetas)
    th_u[0] = initial.theta
    np.cumsum(ps[1:], out=th_u[1:])
    th_u[1:] += initial.theta
    t = period * np.arange(n_steps + 1, dtype=float)
    meta = TrajectoryMeta(
        mode="classical_map", description=description,
        theta0=float(initial.theta), omega0=float(initial.p),
        t_span=(0.0, float(t[-1])), rtol=0.0, atol=0.0, steps=int(n_steps),
        rejects=0, min_density=math.inf, period=float(period),
    )
    return Trajectory(
        t=t, kick=np.arange(n_steps + 1, dtype=np.int64),
        theta_wrapped=thetas, theta_unwrapped=th_u, p_theta=ps, meta=meta,
    )


def lyapunov_exponent(bigK, n_iter, initial=None,
                      renorm_every=DEFAULT_RENORM_EVERY):
    """Largest Lyapunov exponent per kick, from the exact tangent map.

    A unit tangent vector is carried along the orbit and renormalized
    every few steps; the exponent is the mean log stretch per step. For
    strongly chaotic K the Chirikov estimate ln(K/2) is a good check.
    """
    if n_iter < 1:
        raise ParameterDomainError("n_iter must be positive")
    if initial is None:
        initial = MapState(theta=1.0, p=0.3)
    return float(kernels.active.lyapunov_tangent(
        float(initial.theta), float(initial.p), float(bigK),
        int(n_iter), int(renorm_every),
    ))


def lyapunov_pair_estimate(bigK, n_iter, initial=None,
                           offset=DEFAULT_PAIR_OFFSET,
                           renorm_every=DEFAULT_RENORM_EVERY):
    """Lyapunov exponent from a shadowing pair of orbits.

    Finite-separation variant of lyapunov_exponent: a second orbit is kept
    at distance `offset` by rescaling toward the reference orbit after each
    renormalization window. Noisier than the tangent-map route but needs
    nothing beyond the map itself.
    """
    if n_iter < 1:
        raise ParameterDomainError("n_iter must be positive")
    if not (0.0 < offset < 1.0):
        raise ParameterDomainError("offset must be in (0, 1)")
    if initial is None:
        initial = MapState(theta=1.0, p=0.3)
    return float(kernels.active.lyapunov_pair(
        float(initial.theta), float(initial.p), float(bigK),
        int(n_iter), int(renorm_every), float(offset),
    ))


def draw_ensemble(ensemble_size, seed, p0=0.0):
    """Initial conditions: theta uniform on [0, 2*pi), momentum fixed at p0.

    Philox counter RNG keyed by the seed, so the draw is reproducible
    across platforms and independent of global numpy state.
    """
    if ensemble_size < 1:
        raise ParameterDomainError("ensemble_size must be positive")
    gen = np.random.Generator(np.random.Philox(seed))
    thetas = gen.uniform(0.0, TWO_PI, size=ensemble_size)
    ps = np.full(ensemble_size, float(p0))
    return thetas, ps


def classical_energy_series(bigK, ensemble_size, n_kicks, seed=0, p0=0.0):
    """Ensemble mean of p^2/2 after each kick; index 0 is the initial value.

    For K well above threshold the growth is diffusive, <p^2>/2 ~ D*n with
    D near K^2/4; quantum suppression is read against this baseline.
    """
    if n_kicks < 0:
        raise ParameterDomainError("n_kicks must be nonnegative")
    thetas, ps = draw_ensemble(ensemble_size, seed, p0)
    return kernels.active.standard_map_energy(thetas, ps, float(bigK),
                                              int(n_kicks))
