"""Timing comparison of the two kernel backends.

Runs the same workloads through the jitted (numba) and pure-numpy
implementations and prints a table. The numba column excludes JIT
compilation; the warmup line reports it separately.

Usage:
    python benchmarks/bench_backends.py [--repeat N] [--quick]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from bohmrotor import RotorParams, evolve_timeline, make_eigenstate
from bohmrotor.kernels import get_backend


def _time_best(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _workloads(params, state, n_kicks, n_map, ensemble):
    """Build closures over a shared mid-evolution epoch so both backends
    see identical inputs."""
    timeline = evolve_timeline(state, params, n_kicks)
    epoch = timeline.epochs[n_kicks // 2]
    coeffs = epoch.coeffs
    n_min = epoch.n_min
    beta_rate = params.hbar / (2.0 * params.inertia)
    vel_scale = params.hbar / params.inertia
    period = params.period

    thetas = np.linspace(0.1, 6.0, 200)
    sample_dts = np.linspace(0.0, period, 21)
    rng = np.random.default_rng(7)
    th0 = rng.uniform(0.0, 2.0 * np.pi, ensemble)
    p0 = np.zeros(ensemble)

    def make(mod):
        return {
            "psi_derivs x200": lambda: [
                mod.psi_derivs(coeffs, n_min, th, 0.3) for th in thetas
            ],
            "velocity segment (1 kick)": lambda: mod.integrate_velocity_segment(
                coeffs, n_min, vel_scale, beta_rate, 0.0, period, 0.5,
                sample_dts, 1e-6, 1e-8, 1e-12, period / 50.0, 40
            ),
            "map energy %dx%d" % (ensemble, n_map): lambda: mod.standard_map_energy(
                th0, p0, 5.0, n_map
            ),
            "lyapunov tangent 2e4": lambda: mod.lyapunov_tangent(
                1.0, 0.3, 5.0, 20000, 10
            ),
        }

    return make


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3,
                    help="timing repeats, best-of (default 3)")
    ap.add_argument("--quick", action="store_true",
                    help="smaller workloads for smoke runs")
    args = ap.parse_args()

    n_kicks = 20 if args.quick else 60
    n_map = 50 if args.quick else 200
    ensemble = 1000 if args.quick else 10000

    params = RotorParams.from_dimensionless(10.0, 0.5)
    state = make_eigenstate(0)
    make = _workloads(params, state, n_kicks, n_map, ensemble)

    numpy_mod = get_backend("numpy")
    try:
        numba_mod = get_backend("numba")
    except ImportError:
        numba_mod = None

    numpy_work = make(numpy_mod)

    if numba_mod is not None:
        numba_work = make(numba_mod)
        t0 = time.perf_counter()
        for fn in numba_work.values():
            fn()
        warmup = time.perf_counter() - t0
        print("numba JIT warmup: %.2f s (one-time, excluded below)" % warmup)
    else:
        numba_work = None
        print("numba backend unavailable; numpy column only")

    print()
    header = "%-28s %12s %12s %8s" % ("workload", "numpy [ms]", "numba [ms]", "ratio")
    print(header)
    print("-" * len(header))
    for name, fn in numpy_work.items():
        t_np = _time_best(fn, args.repeat) * 1e3
        if numba_work is not None:
            t_nb = _time_best(numba_work[name], args.repeat) * 1e3
            print("%-28s %12.2f %12.2f %7.1fx" % (name, t_np, t_nb, t_np / t_nb))
        else:
            print("%-28s %12.2f %12s %8s" % (name, t_np, "-", "-"))


if __name__ == "__main__":
    main()
