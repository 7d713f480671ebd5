"""Observables and chaos indicators.

Covers the quantities the trajectory and spectral layers are compared
on: mean rotational energy of a spectral state, its per-kick series,
pairwise trajectory separation with an exponential-rate fit, and
stroboscopic (kick-period) phase-space sections.

Separation is measured on unwrapped angles rather than circle distance,
so a persistent difference in winding number registers as divergence
instead of aliasing back into [0, 2*pi).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterDomainError, SamplingContractError

DIVERGENCE_RATE_PER_PERIOD = 0.05
DIVERGENCE_GROWTH_FACTOR = 20.0
DIVERGENCE_MIN_FIT_SAMPLES = 10

_KICK_SNAP = 1e-9


@dataclass(frozen=True)
class DivergenceReport:
    """Separation series between two trajectories plus a rate verdict.

    verdict is "divergent" only when the fitted exponential rate exceeds
    threshold_rate, the fit spans at least DIVERGENCE_MIN_FIT_SAMPLES
    strictly positive separations, and the peak separation exceeds
    DIVERGENCE_GROWTH_FACTOR times the initial one; otherwise "bounded".
    """

    times: np.ndarray
    separations: np.ndarray
    log_fit_rate: float
    fit_window: tuple
    verdict: str
    threshold_rate: float
    growth_factor: float
    n_fit: int

    @property
    def max_separation(self):
        return float(np.max(self.separations)) if self.separations.size else 0.0


@dataclass(frozen=True)
class PoincareSection:
    """Phase-space samples at each completed kick: (N, theta(NT+), p(NT+))."""

    kick: np.ndarray
    theta: np.ndarray
    p_theta: np.ndarray

    def __len__(self):
        return self.kick.size


def mean_energy(state, params):
    """Rotational energy (hbar^2 / 2I) sum n^2 |a_n|^2 of a spectral state."""
    n = state.mode_numbers()
    weights = np.abs(state.coeffs) ** 2
    return float(params.hbar ** 2 / (2.0 * params.inertia)
                 * np.dot(n.astype(float) ** 2, weights))


def quantum_energy_series(timeline):
    """Mean energy at each epoch; index 0 is the initial state."""
    prm = timeline.params
    return np.array([mean_energy(s, prm) for s in timeline.epochs])


def _common_grid(a, b):
    """Overlap grid per the finer-grid rule; ties merge both grids."""
    lo = max(a.t[0], b.t[0])
    hi = min(a.t[-1], b.t[-1])
    if lo > hi:
        raise SamplingContractError(
            "trajectories cover disjoint time ranges [%g, %g] and [%g, %g]"
            % (a.t[0], a.t[-1], b.t[0], b.t[-1])
        )
    ga = np.unique(a.t[(a.t >= lo) & (a.t <= hi)])
    gb = np.unique(b.t[(b.t >= lo) & (b.t <= hi)])
    if ga.size > gb.size:
        return ga
    if gb.size > ga.size:
        return gb
    return np.union1d(ga, gb)


def divergence_report(a, b, threshold_rate=None):
    """Fit an exponential rate to |delta theta_unwrapped|(t) and judge it.

    The two trajectories are brought onto a common grid (the finer of the
    two, restricted to the overlap of their spans) by linear interpolation
    of the unwrapped angle; duplicate kick-instant rows collapse cleanly
    because the angle is continuous across a kick. threshold_rate defaults
    to 0.05 per kick period.
    """
    if threshold_rate is None:
        threshold_rate = DIVERGENCE_RATE_PER_PERIOD / a.meta.period
    grid = _common_grid(a, b)
    th_a = np.interp(grid, a.t, a.theta_unwrapped)
    th_b = np.interp(grid, b.t, b.theta_unwrapped)
    sep = np.abs(th_a - th_b)

    mask = sep > 0.0
    n_fit = int(np.count_nonzero(mask))
    if n_fit >= 2:
        tf = grid[mask]
        rate = float(np.polyfit(tf, np.log(sep[mask]), 1)[0])
        window = (float(tf[0]), float(tf[-1]))
        base = sep[0] if sep[0] > 0.0 else float(sep[mask][0])
        growth = float(np.max(sep) / base)
    else:
        rate = 0.0
        window = (float(grid[0]), float(grid[0]))
        growth = 1.0

    divergent = (rate > threshold_rate
                 and n_fit >= DIVERGENCE_MIN_FIT_SAMPLES
                 and growth > DIVERGENCE_GROWTH_FACTOR)
    return DivergenceReport(
        times=grid, separations=sep, log_fit_rate=rate, fit_window=window,
        verdict="divergent" if divergent else "bounded",
        threshold_rate=float(threshold_rate), growth_factor=growth,
        n_fit=n_fit,
    )


def poincare_section(trajectory, period):
    """Stroboscopic section: the post-kick row at every completed kick.

    Completed kicks are the instants N*period inside the trajectory's
    span, N >= 1. Each must be present as a sampled row carrying kick
    index N (the convention integrate_* and map_trajectory follow); a
    missing row means the trajectory was sampled on an incompatible grid.
    """
    if not (period > 0.0 and math.isfinite(period)):
        raise ParameterDomainError("period must be positive and finite")
    tol = _KICK_SNAP * max(1.0, period)
    t0, t1 = trajectory.t[0], trajectory.t[-1]
    n_lo = max(1, int(math.ceil((t0 - tol) / period)))
    n_hi = int(math.floor((t1 + tol) / period))

    ks, ths, ps = [], [], []
    for n in range(n_lo, n_hi + 1):
        hit = np.nonzero((np.abs(trajectory.t - n * period) <= tol)
                         & (trajectory.kick == n))[0]
        if hit.size == 0:
            raise SamplingContractError(
                "no post-kick sample at t = %g (kick %d)" % (n * period, n)
            )
        i = int(hit[0])
        ks.append(n)
        ths.append(trajectory.theta_wrapped[i])
        ps.append(trajectory.p_theta[i])
    return PoincareSection(
        kick=np.asarray(ks, dtype=np.int64),
        theta=np.asarray(ths), p_theta=np.asarray(ps),
    )
