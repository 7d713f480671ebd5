"""Jitted kernel backend.

Same contract as the numpy module, compiled with numba. The pointwise
mode sums replace the vectorized exp calls with two constant-twist phase
recurrences: along each chain the phase of mode n+1 is the phase of mode
n times u, and u itself advances by the fixed factor w = exp(-2i*beta),
because the exponent n*theta - beta*n^2 is quadratic in n. That brings
the per-evaluation trig count down to a handful regardless of band width;
unit-magnitude rounding drift over a ~1000-mode chain stays below 1e-13.

Import of this module requires numba; the package selector falls back to
the numpy backend when it is absent.
"""
from __future__ import annotations

import math

import numpy as np
from numba import njit

from ._tableau import (
    A21, A31, A32, A41, A42, A43, A51, A52, A53, A54,
    A61, A62, A63, A64, A65, B1, B3, B4, B5, B6, C2, C3, C4, C5,
    E1, E3, E4, E5, E6, E7, FAC_MAX, FAC_MIN, SAFETY,
    OK, NODE, UNDERFLOW,
)

BACKEND = "numba"


@njit(cache=True)
def psi_derivs(coeffs, n_min, theta, beta):
    """Bare mode sum and first three theta-derivatives at one point."""
    idx0 = -n_min
    n_max = coeffs.size - 1 + n_min
    w = complex(math.cos(2.0 * beta), -math.sin(2.0 * beta))

    s = coeffs[idx0]
    q1 = 0.0j
    q2 = 0.0j
    q3 = 0.0j

    u = complex(math.cos(theta - beta), math.sin(theta - beta))
    p = 1.0 + 0.0j
    for n in range(1, n_max + 1):
        p = p * u
        u = u * w
        cp = coeffs[idx0 + n] * p
        nf = float(n)
        s += cp
        q1 += nf * cp
        q2 += nf * nf * cp
        q3 += nf * nf * nf * cp

    d = complex(math.cos(theta + beta), -math.sin(theta + beta))
    p = 1.0 + 0.0j
    for m in range(1, idx0 + 1):
        p = p * d
        d = d * w
        cp = coeffs[idx0 - m] * p
        nf = -float(m)
        s += cp
        q1 += nf * cp
        q2 += nf * nf * cp
        q3 += nf * nf * nf * cp

    return s, 1j * q1, -q2, -1j * q3


@njit(cache=True)
def kick_convolve(phased, kern):
    na = phased.size
    nb = kern.size
    out = np.zeros(na + nb - 1, dtype=np.complex128)
    for i in range(na):
        a = phased[i]
        for j in range(nb):
            out[i + j] += a * kern[j]
    return out


@njit(cache=True)
def _vel_rho(coeffs, ncoeffs, n_min, theta, beta, vel_scale):
    idx0 = -n_min
    n_max = coeffs.size - 1 + n_min
    w = complex(math.cos(2.0 * beta), -math.sin(2.0 * beta))

    s = coeffs[idx0]
    q = 0.0j

    u = complex(math.cos(theta - beta), math.sin(theta - beta))
    p = 1.0 + 0.0j
    for n in range(1, n_max + 1):
        p = p * u
        u = u * w
        s += coeffs[idx0 + n] * p
        q += ncoeffs[idx0 + n] * p

    d = complex(math.cos(theta + beta), -math.sin(theta + beta))
    p = 1.0 + 0.0j
    for m in range(1, idx0 + 1):
        p = p * d
        d = d * w
        s += coeffs[idx0 - m] * p
        q += ncoeffs[idx0 - m] * p

    rho = s.real * s.real + s.imag * s.imag
    if rho <= 0.0:
        return 0.0, rho
    v = vel_scale * (s.real * q.real + s.imag * q.imag) / rho
    return v, rho


@njit(cache=True)
def _accel_rho(coeffs, n_min, theta, beta, acc_scale):
    s, d1, d2, d3 = psi_derivs(coeffs, n_min, theta, beta)
    rho = s.real * s.real + s.imag * s.imag
    if rho <= 0.0:
        return 0.0, rho
    r = math.sqrt(rho)
    rp = (s.real * d1.real + s.imag * d1.imag) / r
    rpp = (d1.real * d1.real + d1.imag * d1.imag
           + s.real * d2.real + s.imag * d2.imag - rp * rp) / r
    rppp = (3.0 * (d1.real * d2.real + d1.imag * d2.imag)
            + s.real * d3.real + s.imag * d3.imag - 3.0 * rp * rpp) / r
    acc = acc_scale * (rppp * r - rpp * rp) / rho
    return acc, rho


@njit(cache=True)
def integrate_velocity_segment(coeffs, n_min, vel_scale, beta_rate, t_base,
                               dt_seg, theta0, sample_dts, rtol, atol,
                               rho_floor, h0, max_halvings):
    ncoeffs = np.empty_like(coeffs)
    for i in range(coeffs.size):
        ncoeffs[i] = float(n_min + i) * coeffs[i]

    n_samples = sample_dts.size
    thetas = np.empty(n_samples)
    vels = np.empty(n_samples)

    tol = atol + rtol
    snap = 1e-12 * max(1.0, dt_seg)
    h_floor = 1e-14 * max(1.0, dt_seg)

    t = 0.0
    th = theta0
    f, rho = _vel_rho(coeffs, ncoeffs, n_min, th, beta_rate * t_base, vel_scale)
    if not (rho >= rho_floor) or not math.isfinite(f):
        return thetas, vels, NODE, h0, 0, 0, rho, 0.0, th, rho

    min_rho = rho
    steps = 0
    rejects = 0
    halvings = 0
    si = 0
    if sample_dts[0] <= snap:
        thetas[0] = th
        vels[0] = f
        si = 1

    h = min(h0, dt_seg)
    if h <= 0.0:
        h = dt_seg / 100.0

    while si < n_samples:
        ev = sample_dts[si]
        h_use = h
        hitting = False
        if t + h_use >= ev - snap:
            h_use = ev - t
            hitting = True

        b = beta_rate
        bad = False
        bad_t = 0.0
        bad_th = 0.0
        bad_rho = 0.0
        thn = th
        f7 = f
        rho7 = rho
        f2 = 0.0
        f3 = 0.0
        f4 = 0.0
        f5 = 0.0
        f6 = 0.0

        th2 = th + h_use * (A21 * f)
        f2, r2 = _vel_rho(coeffs, ncoeffs, n_min, th2, b * (t_base + t + C2 * h_use), vel_scale)
        if not (r2 >= rho_floor) or not math.isfinite(f2):
            bad, bad_t, bad_th, bad_rho = True, t + C2 * h_use, th2, r2
        if not bad:
            th3 = th + h_use * (A31 * f + A32 * f2)
            f3, r3 = _vel_rho(coeffs, ncoeffs, n_min, th3, b * (t_base + t + C3 * h_use), vel_scale)
            if not (r3 >= rho_floor) or not math.isfinite(f3):
                bad, bad_t, bad_th, bad_rho = True, t + C3 * h_use, th3, r3
        if not bad:
            th4 = th + h_use * (A41 * f + A42 * f2 + A43 * f3)
            f4, r4 = _vel_rho(coeffs, ncoeffs, n_min, th4, b * (t_base + t + C4 * h_use), vel_scale)
            if not (r4 >= rho_floor) or not math.isfinite(f4):
                bad, bad_t, bad_th, bad_rho = True, t + C4 * h_use, th4, r4
        if not bad:
            th5 = th + h_use * (A51 * f + A52 * f2 + A53 * f3 + A54 * f4)
            f5, r5 = _vel_rho(coeffs, ncoeffs, n_min, th5, b * (t_base + t + C5 * h_use), vel_scale)
            if not (r5 >= rho_floor) or not math.isfinite(f5):
                bad, bad_t, bad_th, bad_rho = True, t + C5 * h_use, th5, r5
        if not bad:
            th6 = th + h_use * (A61 * f + A62 * f2 + A63 * f3 + A64 * f4 + A65 * f5)
            f6, r6 = _vel_rho(coeffs, ncoeffs, n_min, th6, b * (t_base + t + h_use), vel_scale)
            if not (r6 >= rho_floor) or not math.isfinite(f6):
                bad, bad_t, bad_th, bad_rho = True, t + h_use, th6, r6
        if not bad:
            thn = th + h_use * (B1 * f + B3 * f3 + B4 * f4 + B5 * f5 + B6 * f6)
            f7, rho7 = _vel_rho(coeffs, ncoeffs, n_min, thn, b * (t_base + t + h_use), vel_scale)
            if not (rho7 >= rho_floor) or not math.isfinite(f7):
                bad, bad_t, bad_th, bad_rho = True, t + h_use, thn, rho7

        if bad:
            halvings += 1
            rejects += 1
            if halvings > max_halvings:
                return thetas, vels, NODE, h, steps, rejects, min_rho, bad_t, bad_th, bad_rho
            h = h_use * 0.5
            if h < h_floor:
                return thetas, vels, UNDERFLOW, h, steps, rejects, min_rho, bad_t, bad_th, bad_rho
            continue

        err = h_use * abs(E1 * f + E3 * f3 + E4 * f4 + E5 * f5 + E6 * f6 + E7 * f7)
        if err > tol:
            rejects += 1
            ratio = err / tol
            h = h_use * max(FAC_MIN, SAFETY * ratio ** -0.2)
            if h < h_floor:
                return thetas, vels, UNDERFLOW, h, steps, rejects, min_rho, t, th, rho7
            continue

        steps += 1
        halvings = 0
        t = ev if hitting else t + h_use
        th = thn
        f = f7
        rho = rho7
        if rho < min_rho:
            min_rho = rho
        if hitting:
            thetas[si] = th
            vels[si] = f
            si += 1
        if err == 0.0:
            fac = FAC_MAX
        else:
            fac = min(FAC_MAX, max(FAC_MIN, SAFETY * (tol / err) ** 0.2))
        cand = h_use * fac
        if hitting:
            if cand > h:
                h = cand
        else:
            h = cand

    return thetas, vels, OK, h, steps, rejects, min_rho, np.nan, np.nan, np.nan


@njit(cache=True)
def integrate_newton_segment(coeffs, n_min, acc_scale, beta_rate, t_base,
                             dt_seg, theta0, omega0, sample_dts, rtol, atol,
                             rho_floor, h0, max_halvings):
    n_samples = sample_dts.size
    thetas = np.empty(n_samples)
    omegas = np.empty(n_samples)

    tol_th = atol + rtol
    snap = 1e-12 * max(1.0, dt_seg)
    h_floor = 1e-14 * max(1.0, dt_seg)

    t = 0.0
    th = theta0
    om = omega0
    g, rho = _accel_rho(coeffs, n_min, th, beta_rate * t_base, acc_scale)
    if not (rho >= rho_floor) or not math.isfinite(g):
        return thetas, omegas, NODE, h0, 0, 0, rho, 0.0, th, rho

    min_rho = rho
    steps = 0
    rejects = 0
    halvings = 0
    si = 0
    if sample_dts[0] <= snap:
        thetas[0] = th
        omegas[0] = om
        si = 1

    h = min(h0, dt_seg)
    if h <= 0.0:
        h = dt_seg / 100.0

    while si < n_samples:
        ev = sample_dts[si]
        h_use = h
        hitting = False
        if t + h_use >= ev - snap:
            h_use = ev - t
            hitting = True

        b = beta_rate
        bad = False
        bad_t = 0.0
        bad_th = 0.0
        bad_rho = 0.0
        thn = th
        omn = om
        g7 = g
        rho7 = rho
        o2 = 0.0
        o3 = 0.0
        o4 = 0.0
        o5 = 0.0
        o6 = 0.0
        g2 = 0.0
        g3 = 0.0
        g4 = 0.0
        g5 = 0.0
        g6 = 0.0

        th2 = th + h_use * (A21 * om)
        o2 = om + h_use * (A21 * g)
        g2, r2 = _accel_rho(coeffs, n_min, th2, b * (t_base + t + C2 * h_use), acc_scale)
        if not (r2 >= rho_floor) or not math.isfinite(g2):
            bad, bad_t, bad_th, bad_rho = True, t + C2 * h_use, th2, r2
        if not bad:
            th3 = th + h_use * (A31 * om + A32 * o2)
            o3 = om + h_use * (A31 * g + A32 * g2)
            g3, r3 = _accel_rho(coeffs, n_min, th3, b * (t_base + t + C3 * h_use), acc_scale)
            if not (r3 >= rho_floor) or not math.isfinite(g3):
                bad, bad_t, bad_th, bad_rho = True, t + C3 * h_use, th3, r3
        if not bad:
            th4 = th + h_use * (A41 * om + A42 * o2 + A43 * o3)
            o4 = om + h_use * (A41 * g + A42 * g2 + A43 * g3)
            g4, r4 = _accel_rho(coeffs, n_min, th4, b * (t_base + t + C4 * h_use), acc_scale)
            if not (r4 >= rho_floor) or not math.isfinite(g4):
                bad, bad_t, bad_th, bad_rho = True, t + C4 * h_use, th4, r4
        if not bad:
            th5 = th + h_use * (A51 * om + A52 * o2 + A53 * o3 + A54 * o4)
            o5 = om + h_use * (A51 * g + A52 * g2 + A53 * g3 + A54 * g4)
            g5, r5 = _accel_rho(coeffs, n_min, th5, b * (t_base + t + C5 * h_use), acc_scale)
            if not (r5 >= rho_floor) or not math.isfinite(g5):
                bad, bad_t, bad_th, bad_rho = True, t + C5 * h_use, th5, r5
        if not bad:
            th6 = th + h_use * (A61 * om + A62 * o2 + A63 * o3 + A64 * o4 + A65 * o5)
            o6 = om + h_use * (A61 * g + A62 * g2 + A63 * g3 + A64 * g4 + A65 * g5)
            g6, r6 = _accel_rho(coeffs, n_min, th6, b * (t_base + t + h_use), acc_scale)
            if not (r6 >= rho_floor) or not math.isfinite(g6):
                bad, bad_t, bad_th, bad_rho = True, t + h_use, th6, r6
        if not bad:
            thn = th + h_use * (B1 * om + B3 * o3 + B4 * o4 + B5 * o5 + B6 * o6)
            omn = om + h_use * (B1 * g + B3 * g3 + B4 * g4 + B5 * g5 + B6 * g6)
            g7, rho7 = _accel_rho(coeffs, n_min, thn, b * (t_base + t + h_use), acc_scale)
            if not (rho7 >= rho_floor) or not math.isfinite(g7) or not math.isfinite(omn):
                bad, bad_t, bad_th, bad_rho = True, t + h_use, thn, rho7

        if bad:
            halvings += 1
            rejects += 1
            if halvings > max_halvings:
                return thetas, omegas, NODE, h, steps, rejects, min_rho, bad_t, bad_th, bad_rho
            h = h_use * 0.5
            if h < h_floor:
                return thetas, omegas, UNDERFLOW, h, steps, rejects, min_rho, bad_t, bad_th, bad_rho
            continue

        e_th = h_use * abs(E1 * om + E3 * o3 + E4 * o4 + E5 * o5 + E6 * o6 + E7 * omn)
        e_om = h_use * abs(E1 * g + E3 * g3 + E4 * g4 + E5 * g5 + E6 * g6 + E7 * g7)
        ratio = max(e_th / tol_th, e_om / (atol + rtol * max(1.0, abs(omn))))
        if ratio > 1.0:
            rejects += 1
            h = h_use * max(FAC_MIN, SAFETY * ratio ** -0.2)
            if h < h_floor:
                return thetas, omegas, UNDERFLOW, h, steps, rejects, min_rho, t, th, rho7
            continue

        steps += 1
        halvings = 0
        t = ev if hitting else t + h_use
        th = thn
        om = omn
        g = g7
        rho = rho7
        if rho < min_rho:
            min_rho = rho
        if hitting:
            thetas[si] = th
            omegas[si] = om
            si += 1
        if ratio == 0.0:
            fac = FAC_MAX
        else:
            fac = min(FAC_MAX, max(FAC_MIN, SAFETY * ratio ** -0.2))
        cand = h_use * fac
        if hitting:
            if cand > h:
                h = cand
        else:
            h = cand

    return thetas, omegas, OK, h, steps, rejects, min_rho, np.nan, np.nan, np.nan


@njit(cache=True)
def standard_map_energy(theta0s, p0s, bigK, n_kicks):
    m = theta0s.size
    th = theta0s.copy()
    p = p0s.copy()
    out = np.empty(n_kicks + 1)
    acc = 0.0
    for i in range(m):
        acc += p[i] * p[i]
    out[0] = 0.5 * acc / m
    two_pi = 2.0 * math.pi
    for j in range(1, n_kicks + 1):
        acc = 0.0
        for i in range(m):
            pn = p[i] + bigK * math.sin(th[i])
            tn = (th[i] + pn) % two_pi
            p[i] = pn
            th[i] = tn
            acc += pn * pn
        out[j] = 0.5 * acc / m
    return out


@njit(cache=True)
def standard_map_orbit(theta0, p0, bigK, n_steps):
    th = np.empty(n_steps + 1)
    p = np.empty(n_steps + 1)
    two_pi = 2.0 * math.pi
    t0 = theta0 % two_pi
    th[0] = t0
    p[0] = p0
    for j in range(n_steps):
        pn = p[j] + bigK * math.sin(th[j])
        tn = (th[j] + pn) % two_pi
        th[j + 1] = tn
        p[j + 1] = pn
    return th, p


@njit(cache=True)
def lyapunov_tangent(theta0, p0, bigK, n_iter, renorm_every):
    th = theta0
    p = p0
    v0 = 1.0
    v1 = 0.0
    acc = 0.0
    two_pi = 2.0 * math.pi
    since = 0
    for _ in range(n_iter):
        c = bigK * math.cos(th)
        p = p + bigK * math.sin(th)
        th = (th + p) % two_pi
        w0 = (1.0 + c) * v0 + v1
        w1 = c * v0 + v1
        v0 = w0
        v1 = w1
        since += 1
        if since == renorm_every:
            nrm = math.hypot(v0, v1)
            acc += math.log(nrm)
            v0 /= nrm
            v1 /= nrm
            since = 0
    if since > 0:
        acc += math.log(math.hypot(v0, v1))
    return acc / n_iter


@njit(cache=True)
def lyapunov_pair(theta0, p0, bigK, n_iter, renorm_every, d0):
    two_pi = 2.0 * math.pi
    th_a = theta0 % two_pi
    p_a = p0
    th_b = (theta0 + d0) % two_pi
    p_b = p0
    acc = 0.0
    done = 0
    while done < n_iter:
        block = renorm_every
        if n_iter - done < block:
            block = n_iter - done
        for _ in range(block):
            p_a = p_a + bigK * math.sin(th_a)
            th_a = (th_a + p_a) % two_pi
            p_b = p_b + bigK * math.sin(th_b)
            th_b = (th_b + p_b) % two_pi
        dth = th_b - th_a
        if dth > math.pi:
            dth -= two_pi
        elif dth < -math.pi:
            dth += two_pi
        dp = p_b - p_a
        d = math.hypot(dth, dp)
        if d == 0.0:
            d = 5e-324
        acc += math.log(d / d0)
        s = d0 / d
        th_b = (th_a + dth * s) % two_pi
        p_b = p_a + dp * s
        done += block
    return acc / n_iter
