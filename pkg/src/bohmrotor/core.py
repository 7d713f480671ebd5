"""Rotor parameters, angle bookkeeping, and initial spectral states.

Everything here is an immutable value object. :class:`RotorParams` ties
the dimensional constants (hbar, moment of inertia, kick strength
frequency, kick period) to the dimensionless kick parameter ``k``, the
effective Planck parameter ``tau``, and the classical stochasticity
parameter ``K = k * tau``. :class:`SpectralState` is a normalized band
of angular-momentum mode amplitudes, the common currency of the whole
package.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateStateError, ParameterDomainError

TWO_PI = 2.0 * math.pi

# Double-double split of 2*pi: TWO_PI_HI is the float64 nearest 2*pi and
# TWO_PI_LO the next correction term, so TWO_PI_HI + TWO_PI_LO carries
# roughly 32 significant digits of the true period.
_TWO_PI_HI = 6.283185307179586
_TWO_PI_LO = 2.4492935982947064e-16

# Modes kept on each side beyond the outermost populated one when a state
# band is first laid out.
BAND_MARGIN = 8

DEFAULT_BAND_CAP = 1024


def wrap_angle(theta):
    """Reduce an angle (scalar or array) to the principal range [0, 2*pi).

    Plain ``theta % (2*pi)`` loses accuracy once ``theta`` winds many
    times, because the float64 value of 2*pi is itself off by about
    2.4e-16. ``math.fmod`` is exact for the float modulus, so the residual
    error is the quotient times the 2*pi representation error; subtracting
    that correction keeps the reduction near machine precision out to
    around a million radians.
    """
    scalar = np.isscalar(theta) or np.ndim(theta) == 0
    th = np.asarray(theta, dtype=np.float64)
    r = np.fmod(th, _TWO_PI_HI)
    q = (th - r) / _TWO_PI_HI
    r = r - q * _TWO_PI_LO
    r = np.where(r < 0.0, r + TWO_PI, r)
    r = np.where(r >= TWO_PI, r - TWO_PI, r)
    if scalar:
        return float(r)
    return r


@dataclass(frozen=True)
class Angle:
    """An orientation carrying both its wrapped and unwrapped values.

    ``wrapped`` lives in [0, 2*pi); ``unwrapped`` accumulates winding.
    The two stay congruent modulo 2*pi by construction.
    """

    wrapped: float
    unwrapped: float

    @classmethod
    def from_unwrapped(cls, theta):
        return cls(wrap_angle(theta), float(theta))


@dataclass(frozen=True)
class RotorParams:
    """Physical constants of one kicked-rotor scenario.

    ``k`` and ``tau`` are stored rather than recomputed so that
    ``stochasticity == k * tau`` holds bit-exactly; ``stochasticity``
    equals ``(omega0 * period) ** 2`` up to float rounding.
    """

    hbar: float
    inertia: float
    omega0: float
    period: float
    k: float = field(init=False)
    tau: float = field(init=False)
    stochasticity: float = field(init=False)

    def __post_init__(self):
        if not (self.hbar > 0.0 and math.isfinite(self.hbar)):
            raise ParameterDomainError("hbar must be positive and finite")
        if not (self.inertia > 0.0 and math.isfinite(self.inertia)):
            raise ParameterDomainError("inertia must be positive and finite")
        if not (self.period > 0.0 and math.isfinite(self.period)):
            raise ParameterDomainError("period must be positive and finite")
        if not (self.omega0 >= 0.0 and math.isfinite(self.omega0)):
            raise ParameterDomainError("omega0 must be non-negative and finite")
        k = self.inertia * self.omega0 ** 2 * self.period / self.hbar
        tau = self.hbar * self.period / self.inertia
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "stochasticity", k * tau)

    @classmethod
    def from_dimensionless(cls, k, tau, hbar=1.0, inertia=1.0):
        """Build params from the (k, tau) pair instead of (omega0, period)."""
        if k < 0.0:
            raise ParameterDomainError("k must be non-negative")
        if tau <= 0.0:
            raise ParameterDomainError("tau must be positive")
        period = tau * inertia / hbar
        omega0 = (hbar / inertia) * math.sqrt(k / tau)
        return cls(hbar=hbar, inertia=inertia, omega0=omega0, period=period)

    @property
    def rotation_quantum(self):
        """hbar / I, the angular velocity of the first excited mode."""
        return self.hbar / self.inertia


@dataclass(frozen=True)
class SpectralState:
    """A free-rotor wavefunction as a finite band of mode amplitudes.

    ``coeffs[j]`` multiplies ``exp(i * (n_min + j) * theta) / sqrt(2*pi)``.
    The band always brackets mode zero and the coefficients are stored
    unit-norm unless ``normalize=False`` was requested by a constructor
    that already guarantees it.
    """

    n_min: int
    n_max: int
    coeffs: np.ndarray
    time: float = 0.0
    kicks_applied: int = 0

    def __post_init__(self):
        if self.n_min > 0 or self.n_max < 0:
            raise DegenerateStateError("mode band must bracket n = 0")
        c = np.ascontiguousarray(self.coeffs, dtype=np.complex128)
        if c.ndim != 1 or c.size != self.n_max - self.n_min + 1:
            raise DegenerateStateError(
                "coefficient array must have n_max - n_min + 1 entries"
            )
        if not np.all(np.isfinite(c.view(np.float64))):
            raise DegenerateStateError("coefficients must be finite")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    def mode_numbers(self):
        return np.arange(self.n_min, self.n_max + 1)

    def norm(self):
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    def amplitude(self, n):
        """Amplitude of mode n, zero outside the stored band."""
        if n < self.n_min or n > self.n_max:
            return 0.0 + 0.0j
        return complex(self.coeffs[n - self.n_min])

    def band_width(self):
        return self.n_max - self.n_min + 1

    def replace_coeffs(self, coeffs, n_min=None, n_max=None, time=None, kicks=None):
        return SpectralState(
            n_min=self.n_min if n_min is None else n_min,
            n_max=self.n_max if n_max is None else n_max,
            coeffs=coeffs,
            time=self.time if time is None else time,
            kicks_applied=self.kicks_applied if kicks is None else kicks,
        )


def _normalized(coeffs):
    nrm = np.sqrt(np.sum(np.abs(coeffs) ** 2))
    if nrm == 0.0 or not np.isfinite(nrm):
        raise DegenerateStateError("state has zero or non-finite norm")
    return coeffs / nrm


def make_eigenstate(n0, margin=BAND_MARGIN):
    """Single angular-momentum eigenstate |n0>."""
    n0 = int(n0)
    n_min = min(n0, 0) - margin
    n_max = max(n0, 0) + margin
    c = np.zeros(n_max - n_min + 1, dtype=np.complex128)
    c[n0 - n_min] = 1.0
    return SpectralState(n_min, n_max, c)


def make_cosine_superposition(a, margin=BAND_MARGIN):
    """State proportional to 1 + 2*a*cos(theta), i.e. modes (a, 1, a)."""
    if a == 0.0:
        raise DegenerateStateError("cosine superposition needs a != 0")
    n_min, n_max = -1 - margin, 1 + margin
    c = np.zeros(n_max - n_min + 1, dtype=np.complex128)
    c[-1 - n_min] = a
    c[0 - n_min] = 1.0
    c[1 - n_min] = a
    return SpectralState(n_min, n_max, _normalized(c))


def make_two_mode(a0, a1, margin=BAND_MARGIN):
    """Superposition of modes 0 and 1 with amplitudes (a0, a1)."""
    n_min, n_max = -margin, 1 + margin
    c = np.zeros(n_max - n_min + 1, dtype=np.complex128)
    c[0 - n_min] = a0
    c[1 - n_min] = a1
    return SpectralState(n_min, n_max, _normalized(c))


def make_gaussian_packet(p_mean, p_halfwidth, theta_center=0.0, margin=BAND_MARGIN):
    """Gaussian distribution over momentum modes, centred on p_mean.

    Amplitudes follow exp(-(n - p_mean)^2 / (4 * sigma^2)) with sigma the
    half-width in mode units, so the momentum-space density |a_n|^2 has
    standard deviation sigma. A nonzero theta_center rotates the packet's
    density peak there via the translation phases exp(-i n theta_center).
    The band extends far enough that dropped tails sit below 1e-18 in
    amplitude.
    """
    if p_halfwidth <= 0.0:
        raise ParameterDomainError("p_halfwidth must be positive")
    sigma = float(p_halfwidth)
    reach = int(math.ceil(sigma * 2.0 * math.sqrt(math.log(1e18)))) + 1
    n_min = min(int(math.floor(p_mean)) - reach, 0) - margin
    n_max = max(int(math.ceil(p_mean)) + reach, 0) + margin
    n = np.arange(n_min, n_max + 1)
    c = np.exp(-((n - p_mean) ** 2) / (4.0 * sigma ** 2)).astype(np.complex128)
    if theta_center != 0.0:
        c = c * np.exp(-1j * n * theta_center)
    return SpectralState(n_min, n_max, _normalized(c))
