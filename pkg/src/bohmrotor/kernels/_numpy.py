"""Pure-numpy kernel backend.

Reference implementations of the hot numerical paths: pointwise mode
sums, the kick convolution, adaptive trajectory integration, and the
classical map loops. The jitted backend mirrors this module exactly;
keep the two in sync (the parity test suite compares them directly).

Mode-sum convention: all kernels work with the bare coefficient sum
Sigma a_n exp(i(n*theta - beta*n^2)); the 1/sqrt(2*pi) wavefunction
prefactor cancels in every velocity/force ratio and is applied by the
caller where an absolute psi value is needed. Densities returned here
are therefore |Sigma|^2, whose circle average is Sigma|a_n|^2 (= 1 for
a normalized state); density floors must be supplied in that unit.
"""
from __future__ import annotations

import numpy as np

from ._tableau import (
    A21, A31, A32, A41, A42, A43, A51, A52, A53, A54,
    A61, A62, A63, A64, A65, B1, B3, B4, B5, B6, C2, C3, C4, C5,
    E1, E3, E4, E5, E6, E7, FAC_MAX, FAC_MIN, SAFETY,
    OK, NODE, UNDERFLOW,
)

BACKEND = "numpy"


def psi_derivs(coeffs, n_min, theta, beta):
    """Bare sum and its first three theta-derivatives at one point.

    beta is the accumulated free-rotation phase rate, hbar*dt/(2I), so
    each mode carries exp(i*(n*theta - beta*n^2)).
    """
    n = np.arange(n_min, n_min + coeffs.size, dtype=np.float64)
    w = coeffs * np.exp(1j * (n * theta - beta * n * n))
    psi = w.sum()
    s1 = (n * w).sum()
    s2 = (n * n * w).sum()
    s3 = (n * n * n * w).sum()
    return psi, 1j * s1, -s2, -1j * s3


def kick_convolve(phased, kern):
    """Full discrete convolution of phased coefficients with the kick kernel."""
    return np.convolve(phased, kern)


def _vel_rho(coeffs, ncoeffs, nvals, n2, theta, beta, vel_scale):
    ph = np.exp(1j * (nvals * theta - beta * n2))
    psi = (coeffs * ph).sum()
    s1 = (ncoeffs * ph).sum()
    rho = psi.real * psi.real + psi.imag * psi.imag
    if rho <= 0.0:
        return 0.0, rho
    # d1 = i*s1, so Im(conj(psi)*d1) = Re(conj(psi)*s1)
    v = vel_scale * (psi.real * s1.real + psi.imag * s1.imag) / rho
    return v, rho


def _accel_rho(coeffs, nvals, n2, n3, theta, beta, acc_scale):
    ph = np.exp(1j * (nvals * theta - beta * n2))
    w = coeffs * ph
    psi = w.sum()
    s1 = (nvals * w).sum()
    s2 = (n2 * w).sum()
    s3 = (n3 * w).sum()
    d1 = 1j * s1
    d2 = -s2
    d3 = -1j * s3
    rho = psi.real * psi.real + psi.imag * psi.imag
    if rho <= 0.0:
        return 0.0, rho
    r = np.sqrt(rho)
    rp = (psi.conjugate() * d1).real / r
    rpp = ((d1.conjugate() * d1).real + (psi.conjugate() * d2).real - rp * rp) / r
    rppp = (3.0 * (d1.conjugate() * d2).real + (psi.conjugate() * d3).real
            - 3.0 * rp * rpp) / r
    acc = acc_scale * (rppp * r - rpp * rp) / rho
    return acc, rho


def integrate_velocity_segment(coeffs, n_min, vel_scale, beta_rate, t_base,
                               dt_seg, theta0, sample_dts, rtol, atol,
                               rho_floor, h0, max_halvings):
    """Advance dtheta/dt = v(theta, t) across one free-flight segment.

    Embedded Dormand-Prince 5(4) pair with FSAL. sample_dts must be
    strictly increasing, start at 0, and end at dt_seg; theta and v are
    recorded at exactly those offsets. Error control is absolute on the
    angle increment with a one-radian reference scale: a step is accepted
    when |err| <= atol + rtol.

    Returns (thetas, vels, status, h_next, steps, rejects, min_rho,
    node_t, node_theta, node_rho).
    """
    nvals = np.arange(n_min, n_min + coeffs.size, dtype=np.float64)
    n2 = nvals * nvals
    ncoeffs = nvals * coeffs

    n_samples = sample_dts.size
    thetas = np.empty(n_samples)
    vels = np.empty(n_samples)

    tol = atol + rtol
    snap = 1e-12 * max(1.0, dt_seg)
    h_floor = 1e-14 * max(1.0, dt_seg)

    t = 0.0
    th = theta0
    f, rho = _vel_rho(coeffs, ncoeffs, nvals, n2, th,
                      beta_rate * t_base, vel_scale)
    if not (rho >= rho_floor) or not np.isfinite(f):
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

        bad = False
        bad_t = 0.0
        bad_th = 0.0
        bad_rho = 0.0
        err = np.inf
        thn = th
        f7 = f
        rho7 = rho

        b = beta_rate
        f2, r2 = _vel_rho(coeffs, ncoeffs, nvals, n2,
                          th + h_use * (A21 * f), b * (t_base + t + C2 * h_use), vel_scale)
        if not (r2 >= rho_floor) or not np.isfinite(f2):
            bad, bad_t, bad_th, bad_rho = True, t + C2 * h_use, th + h_use * (A21 * f), r2
        if not bad:
            th3 = th + h_use * (A31 * f + A32 * f2)
            f3, r3 = _vel_rho(coeffs, ncoeffs, nvals, n2, th3, b * (t_base + t + C3 * h_use), vel_scale)
            if not (r3 >= rho_floor) or not np.isfinite(f3):
                bad, bad_t, bad_th, bad_rho = True, t + C3 * h_use, th3, r3
        if not bad:
            th4 = th + h_use * (A41 * f + A42 * f2 + A43 * f3)
            f4, r4 = _vel_rho(coeffs, ncoeffs, nvals, n2, th4, b * (t_base + t + C4 * h_use), vel_scale)
            if not (r4 >= rho_floor) or not np.isfinite(f4):
                bad, bad_t, bad_th, bad_rho = True, t + C4 * h_use, th4, r4
        if not bad:
            th5 = th + h_use * (A51 * f + A52 * f2 + A53 * f3 + A54 * f4)
            f5, r5 = _vel_rho(coeffs, ncoeffs, nvals, n2, th5, b * (t_base + t + C5 * h_use), vel_scale)
            if not (r5 >= rho_floor) or not np.isfinite(f5):
                bad, bad_t, bad_th, bad_rho = True, t + C5 * h_use, th5, r5
        if not bad:
            th6 = th + h_use * (A61 * f + A62 * f2 + A63 * f3 + A64 * f4 + A65 * f5)
            f6, r6 = _vel_rho(coeffs, ncoeffs, nvals, n2, th6, b * (t_base + t + h_use), vel_scale)
            if not (r6 >= rho_floor) or not np.isfinite(f6):
                bad, bad_t, bad_th, bad_rho = True, t + h_use, th6, r6
        if not bad:
            thn = th + h_use * (B1 * f + B3 * f3 + B4 * f4 + B5 * f5 + B6 * f6)
            f7, rho7 = _vel_rho(coeffs, ncoeffs, nvals, n2, thn, b * (t_base + t + h_use), vel_scale)
            if not (rho7 >= rho_floor) or not np.isfinite(f7):
                bad, bad_t, bad_th, bad_rho = True, t + h_use, thn, rho7

        if bad:
            # Node guard: halve toward the obstruction, give up after a budget.
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

        # accept
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
        fac = FAC_MAX if err == 0.0 else min(FAC_MAX, max(FAC_MIN, SAFETY * (tol / err) ** 0.2))
        cand = h_use * fac
        h = max(h, cand) if hitting else cand

    return thetas, vels, OK, h, steps, rejects, min_rho, np.nan, np.nan, np.nan


def integrate_newton_segment(coeffs, n_min, acc_scale, beta_rate, t_base,
                             dt_seg, theta0, omega0, sample_dts, rtol, atol,
                             rho_floor, h0, max_halvings):
    """Advance I*theta'' = -dQ/dtheta across one free-flight segment.

    Same stepping machinery as the velocity law but on the (theta, omega)
    pair; acc_scale is hbar^2/(2 I^2) so the returned acceleration is
    already omega's time derivative. Error control: theta against
    atol + rtol (one-radian scale), omega against atol + rtol*max(1,|omega|).

    Returns (thetas, omegas, status, h_next, steps, rejects, min_rho,
    node_t, node_theta, node_rho).
    """
    nvals = np.arange(n_min, n_min + coeffs.size, dtype=np.float64)
    n2 = nvals * nvals
    n3 = n2 * nvals

    n_samples = sample_dts.size
    thetas = np.empty(n_samples)
    omegas = np.empty(n_samples)

    tol_th = atol + rtol
    snap = 1e-12 * max(1.0, dt_seg)
    h_floor = 1e-14 * max(1.0, dt_seg)

    t = 0.0
    th = theta0
    om = omega0
    g, rho = _accel_rho(coeffs, nvals, n2, n3, th,
                        beta_rate * t_base, acc_scale)
    if not (rho >= rho_floor) or not np.isfinite(g):
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

        # stage 1 is (om, g) by FSAL
        o1, g1 = om, g
        th2 = th + h_use * (A21 * o1)
        o2 = om + h_use * (A21 * g1)
        g2, r2 = _accel_rho(coeffs, nvals, n2, n3, th2, b * (t_base + t + C2 * h_use), acc_scale)
        if not (r2 >= rho_floor) or not np.isfinite(g2):
            bad, bad_t, bad_th, bad_rho = True, t + C2 * h_use, th2, r2
        if not bad:
            th3 = th + h_use * (A31 * o1 + A32 * o2)
            o3 = om + h_use * (A31 * g1 + A32 * g2)
            g3, r3 = _accel_rho(coeffs, nvals, n2, n3, th3, b * (t_base + t + C3 * h_use), acc_scale)
            if not (r3 >= rho_floor) or not np.isfinite(g3):
                bad, bad_t, bad_th, bad_rho = True, t + C3 * h_use, th3, r3
        if not bad:
            th4 = th + h_use * (A41 * o1 + A42 * o2 + A43 * o3)
            o4 = om + h_use * (A41 * g1 + A42 * g2 + A43 * g3)
            g4, r4 = _accel_rho(coeffs, nvals, n2, n3, th4, b * (t_base + t + C4 * h_use), acc_scale)
            if not (r4 >= rho_floor) or not np.isfinite(g4):
                bad, bad_t, bad_th, bad_rho = True, t + C4 * h_use, th4, r4
        if not bad:
            th5 = th + h_use * (A51 * o1 + A52 * o2 + A53 * o3 + A54 * o4)
            o5 = om + h_use * (A51 * g1 + A52 * g2 + A53 * g3 + A54 * g4)
            g5, r5 = _accel_rho(coeffs, nvals, n2, n3, th5, b * (t_base + t + C5 * h_use), acc_scale)
            if not (r5 >= rho_floor) or not np.isfinite(g5):
                bad, bad_t, bad_th, bad_rho = True, t + C5 * h_use, th5, r5
        if not bad:
            th6 = th + h_use * (A61 * o1 + A62 * o2 + A63 * o3 + A64 * o4 + A65 * o5)
            o6 = om + h_use * (A61 * g1 + A62 * g2 + A63 * g3 + A64 * g4 + A65 * g5)
            g6, r6 = _accel_rho(coeffs, nvals, n2, n3, th6, b * (t_base + t + h_use), acc_scale)
            if not (r6 >= rho_floor) or not np.isfinite(g6):
                bad, bad_t, bad_th, bad_rho = True, t + h_use, th6, r6
        if not bad:
            thn = th + h_use * (B1 * o1 + B3 * o3 + B4 * o4 + B5 * o5 + B6 * o6)
            omn = om + h_use * (B1 * g1 + B3 * g3 + B4 * g4 + B5 * g5 + B6 * g6)
            g7, rho7 = _accel_rho(coeffs, nvals, n2, n3, thn, b * (t_base + t + h_use), acc_scale)
            if not (rho7 >= rho_floor) or not np.isfinite(g7) or not np.isfinite(omn):
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

        e_th = h_use * abs(E1 * o1 + E3 * o3 + E4 * o4 + E5 * o5 + E6 * o6 + E7 * omn)
        e_om = h_use * abs(E1 * g1 + E3 * g3 + E4 * g4 + E5 * g5 + E6 * g6 + E7 * g7)
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
        fac = FAC_MAX if ratio == 0.0 else min(FAC_MAX, max(FAC_MIN, SAFETY * ratio ** -0.2))
        cand = h_use * fac
        h = max(h, cand) if hitting else cand

    return thetas, omegas, OK, h, steps, rejects, min_rho, np.nan, np.nan, np.nan


def standard_map_energy(theta0s, p0s, bigK, n_kicks):
    """Mean p^2/2 of an ensemble after each map iterate (index 0 = initial)."""
    th = theta0s.copy()
    p = p0s.copy()
    out = np.empty(n_kicks + 1)
    out[0] = 0.5 * np.mean(p * p)
    two_pi = 2.0 * np.pi
    for j in range(1, n_kicks + 1):
        p += bigK * np.sin(th)
        th = np.mod(th + p, two_pi)
        out[j] = 0.5 * np.mean(p * p)
    return out


def standard_map_orbit(theta0, p0, bigK, n_steps):
    """One orbit of the map; thetas wrapped to [0, 2*pi)."""
    th = np.empty(n_steps + 1)
    p = np.empty(n_steps + 1)
    th[0] = theta0 % (2.0 * np.pi)
    p[0] = p0
    two_pi = 2.0 * np.pi
    for j in range(n_steps):
        pn = p[j] + bigK * np.sin(th[j])
        th[j + 1] = (th[j] + pn) % two_pi
        p[j + 1] = pn
    return th, p


def lyapunov_tangent(theta0, p0, bigK, n_iter, renorm_every):
    """Largest Lyapunov exponent per iterate via tangent-map products."""
    th = theta0
    p = p0
    v0 = 1.0
    v1 = 0.0
    acc = 0.0
    two_pi = 2.0 * np.pi
    since = 0
    for _ in range(n_iter):
        c = bigK * np.cos(th)
        p = p + bigK * np.sin(th)
        th = (th + p) % two_pi
        w0 = (1.0 + c) * v0 + v1
        w1 = c * v0 + v1
        v0, v1 = w0, w1
        since += 1
        if since == renorm_every:
            nrm = np.hypot(v0, v1)
            acc += np.log(nrm)
            v0 /= nrm
            v1 /= nrm
            since = 0
    if since > 0:
        nrm = np.hypot(v0, v1)
        acc += np.log(nrm)
    return acc / n_iter


def lyapunov_pair(theta0, p0, bigK, n_iter, renorm_every, d0):
    """Benettin-style exponent from a shadow orbit renormalized to d0."""
    two_pi = 2.0 * np.pi
    th_a, p_a = theta0 % two_pi, p0
    th_b, p_b = (theta0 + d0) % two_pi, p0
    acc = 0.0
    done = 0
    while done < n_iter:
        block = min(renorm_every, n_iter - done)
        for _ in range(block):
            p_a = p_a + bigK * np.sin(th_a)
            th_a = (th_a + p_a) % two_pi
            p_b = p_b + bigK * np.sin(th_b)
            th_b = (th_b + p_b) % two_pi
        dth = th_b - th_a
        if dth > np.pi:
            dth -= two_pi
        elif dth < -np.pi:
            dth += two_pi
        dp = p_b - p_a
        d = np.hypot(dth, dp)
        if d == 0.0:
            d = 5e-324
        acc += np.log(d / d0)
        s = d0 / d
        th_b = (th_a + dth * s) % two_pi
        p_b = p_a + dp * s
        done += block
    return acc / n_iter
