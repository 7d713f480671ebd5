"""Spectral evolution of the kicked rotor.

The state between kicks is a band of free-rotor mode amplitudes; free
flight multiplies each a_n by exp(-i*hbar*n^2*dt/(2I)) and a kick maps

    a_n' = sum_r a_r * i^(n-r) * J_(n-r)(k) * exp(-i r^2 tau / 2)

which is a discrete convolution of the free-phased coefficients with a
Bessel kernel. The kernel is negligible beyond |s| of roughly 2k, so a
kick spreads the band by about that much; the band management policy
(grow before, trim after, cap, renormalize) lives in apply_kick.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import RotorParams, SpectralState, TWO_PI
from .errors import (
    HorizonError,
    ParameterDomainError,
    TruncationFailureError,
)

# Band-policy constants: amplitudes below EDGE_TRIM are clipped from the
# band edges after a kick; band growth before a kick extends GROW_PAD
# modes beyond the outermost amplitude above SIGNIFICANT.
SIGNIFICANT = 1e-12
EDGE_TRIM = 1e-14
GROW_PAD = 10
KERNEL_CUTOFF = 1e-18

DEFAULT_NORM_TOLERANCE = 1e-8

_SQRT_TWO_PI = math.sqrt(TWO_PI)


def bessel_j_sequence(order_max, x):
    """J_0(x) .. J_order_max(x) by backward recurrence.

    The downward three-term recurrence J_{m-1} = (2m/x) J_m - J_{m+1} is
    dominated by the J solution, so iterating from a seed high above both
    order_max and x converges onto the true values up to one overall
    scale, which the sum rule J_0 + 2*sum J_{2m} = 1 fixes. Overflow of
    the unnormalized iterates is headed off by periodic rescaling.
    """
    if x < 0.0:
        raise ParameterDomainError("Bessel argument must be non-negative")
    out = np.zeros(order_max + 1)
    if x == 0.0:
        out[0] = 1.0
        return out
    start = max(order_max, int(math.ceil(1.2 * x))) + 50
    if start % 2 == 1:
        start += 1
    jp = 0.0  # J_{m+1}
    jc = 1e-30  # J_m
    ssum = 0.0
    for m in range(start, 0, -1):
        jm = (2.0 * m / x) * jc - jp
        jp = jc
        jc = jm
        if m - 1 <= order_max:
            out[m - 1] = jc
        if (m - 1) % 2 == 0:
            ssum += 2.0 * jc if m - 1 > 0 else jc
        if abs(jc) > 1e250:
            jp /= 1e250
            jc /= 1e250
            ssum /= 1e250
            out /= 1e250
    out /= ssum
    return out


def bessel_j(order, argument):
    """Bessel function of integer order, J_order(argument ≥ 0)."""
    s = abs(int(order))
    val = float(bessel_j_sequence(s, float(argument))[s])
    if order < 0 and s % 2 == 1:
        val = -val
    return val


_KICK_KERNEL_CACHE = {}


def kick_kernel(k):
    """Convolution kernel c_s = i^s J_s(k) for s in [-reach, reach].

    Symmetric under s -> -s because i^(-s) J_(-s) = i^s J_s. Truncated
    where |J_s(k)| drops below KERNEL_CUTOFF.
    """
    key = float(k)
    hit = _KICK_KERNEL_CACHE.get(key)
    if hit is not None:
        return hit
    probe = int(math.ceil(1.5 * key)) + 60
    seq = bessel_j_sequence(probe, key)
    keep = np.nonzero(np.abs(seq) >= KERNEL_CUTOFF)[0]
    reach = int(keep[-1]) if keep.size else 0
    i_pow = (1j) ** np.arange(reach + 1)
    half = i_pow * seq[: reach + 1]
    kern = np.concatenate([half[:0:-1], half])
    _KICK_KERNEL_CACHE[key] = (kern, reach)
    return kern, reach


def free_propagate(state, dt, params):
    """Free-rotor flight: a_n picks up exp(-i*hbar*n^2*dt/(2I))."""
    if dt < 0.0:
        raise ParameterDomainError("free propagation requires dt >= 0")
    if dt == 0.0:
        return state
    n = state.mode_numbers()
    phase = np.exp(-1j * (params.hbar * dt / (2.0 * params.inertia)) * n * n)
    return state.replace_coeffs(state.coeffs * phase, time=state.time + dt)


def apply_kick(state, params, band_cap=None, norm_tolerance=DEFAULT_NORM_TOLERANCE):
    """One kick: free phases over a period, then the Bessel convolution.

    The band is grown by ceil(2k) + GROW_PAD beyond the outermost
    significant mode (clamped to band_cap on each side), the convolution
    is evaluated there, edge amplitudes below EDGE_TRIM are clipped, and
    the pre-renormalization norm defect is recorded. A defect beyond
    norm_tolerance means the cap genuinely cut off amplitude.

    Returns (new_state, defect).
    """
    from .core import DEFAULT_BAND_CAP

    cap = DEFAULT_BAND_CAP if band_cap is None else int(band_cap)
    k = params.k
    kern, reach = kick_kernel(k)

    coeffs = state.coeffs
    mags = np.abs(coeffs)
    sig = np.nonzero(mags > SIGNIFICANT)[0]
    if sig.size:
        sig_lo = state.n_min + int(sig[0])
        sig_hi = state.n_min + int(sig[-1])
    else:
        sig_lo = sig_hi = 0
    pad = int(math.ceil(2.0 * k)) + GROW_PAD
    lo = max(min(sig_lo - pad, 0), -cap)
    hi = min(max(sig_hi + pad, 0), cap)

    n = state.mode_numbers()
    phased = coeffs * np.exp(-1j * (params.tau / 2.0) * n * n)

    conv = kernels.active.kick_convolve(phased, kern)
    conv_lo = state.n_min - reach  # mode number of conv[0]

    out = np.zeros(hi - lo + 1, dtype=np.complex128)
    src_lo = max(lo, conv_lo)
    src_hi = min(hi, conv_lo + conv.size - 1)
    if src_lo <= src_hi:
        out[src_lo - lo: src_hi - lo + 1] = conv[src_lo - conv_lo: src_hi - conv_lo + 1]

    norm_sq = float(np.sum(np.abs(out) ** 2))
    defect = abs(1.0 - norm_sq)
    if defect > norm_tolerance:
        raise TruncationFailureError(defect, cap, state.kicks_applied + 1)

    # clip negligible edges, keeping mode 0 inside the band
    mags = np.abs(out)
    keep = np.nonzero(mags >= EDGE_TRIM)[0]
    if keep.size:
        t_lo = min(lo + int(keep[0]), 0)
        t_hi = max(lo + int(keep[-1]), 0)
        out = out[t_lo - lo: t_hi - lo + 1]
        lo, hi = t_lo, t_hi

    out = out / math.sqrt(norm_sq)
    new_state = SpectralState(
        n_min=lo,
        n_max=hi,
        coeffs=out,
        time=state.time + params.period,
        kicks_applied=state.kicks_applied + 1,
    )
    return new_state, defect


@dataclass(frozen=True)
class EvolutionTimeline:
    """The post-kick history of one evolving state.

    epochs[N] is the state just after the Nth kick (epoch 0 is the initial
    state); norm_history[N-1] is the pre-renormalization norm defect of
    kick N. Free timelines have a single epoch and an unbounded horizon.
    """

    params: RotorParams
    epochs: tuple
    norm_history: np.ndarray
    free: bool = False

    @property
    def n_kicks(self):
        return len(self.epochs) - 1

    @property
    def horizon(self):
        if self.free:
            return math.inf
        return self.epochs[-1].time + self.params.period

    def epoch_at(self, t):
        """Epoch index N with N*T <= t, clamped to the last epoch."""
        if t < 0.0 or t > self.horizon:
            raise HorizonError(
                "t=%g outside the evolved range [0, %g]" % (t, self.horizon)
            )
        if self.free:
            return 0
        idx = int(math.floor(t / self.params.period + 1e-12))
        return min(idx, self.n_kicks)


def evolve_timeline(initial, params, n_kicks, band_cap=None,
                    norm_tolerance=DEFAULT_NORM_TOLERANCE):
    """Run n_kicks kicks from the initial state, recording every epoch."""
    if n_kicks < 0:
        raise ParameterDomainError("n_kicks must be non-negative")
    epochs = [initial]
    defects = np.zeros(n_kicks)
    state = initial
    for j in range(n_kicks):
        state, defects[j] = apply_kick(state, params, band_cap, norm_tolerance)
        epochs.append(state)
    return EvolutionTimeline(params=params, epochs=tuple(epochs),
                             norm_history=defects, free=False)


def free_timeline(initial, params):
    """A kick-free timeline: one epoch, unbounded horizon."""
    return EvolutionTimeline(params=params, epochs=(initial,),
                             norm_history=np.zeros(0), free=True)


@dataclass(frozen=True)
class PsiSample:
    """Pointwise wavefunction value with exact spectral derivatives."""

    psi: complex
    d1: complex
    d2: complex
    d3: complex
    density: float


def evaluate_psi(timeline, theta, t):
    """psi(theta, t) and its first three theta-derivatives.

    Locates the governing epoch (the last kick at or before t), applies
    the residual free-flight phases analytically, and sums the band with
    the 1/sqrt(2*pi) normalization so |psi|^2 integrates to one.
    """
    idx = timeline.epoch_at(t)
    state = timeline.epochs[idx]
    dt = t - state.time
    beta = timeline.params.hbar * dt / (2.0 * timeline.params.inertia)
    s, d1, d2, d3 = kernels.active.psi_derivs(state.coeffs, state.n_min,
                                              float(theta), beta)
    inv = 1.0 / _SQRT_TWO_PI
    psi = s * inv
    return PsiSample(
        psi=psi,
        d1=d1 * inv,
        d2=d2 * inv,
        d3=d3 * inv,
        density=psi.real * psi.real + psi.imag * psi.imag,
    )
