"""Scenario execution: build, integrate, measure, write.

run_scenario turns a validated ScenarioConfig into files on disk: one
CSV per trajectory, stroboscopic sections, energy series, a pairwise
divergence series, and a YAML run summary that echoes the normalized
config (the echo re-parses to an equal ScenarioConfig). Identical
config and seed give byte-identical outputs. On any failure the files
written so far are removed.

CSV schemas are part of the package contract:
    trajectory  t,kick,theta_wrapped,theta_unwrapped,p_theta
    energy      kick,mean_energy
    section     kick,theta,p_theta
    divergence  t,separation
Floats are written with 17 significant digits.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import yaml

from ._version import __version__
from .bohm import (
    bohm_velocity,
    integrate_bohm_trajectory,
    integrate_newton_trajectory,
)
from .classical import MapState, classical_energy_series, map_trajectory
from .config import build_state
from .diagnostics import divergence_report, poincare_section, quantum_energy_series
from .errors import ConfigError
from .spectral import evolve_timeline, free_timeline

TRAJECTORY_HEADER = "t,kick,theta_wrapped,theta_unwrapped,p_theta"
ENERGY_HEADER = "kick,mean_energy"
SECTION_HEADER = "kick,theta,p_theta"
DIVERGENCE_HEADER = "t,separation"


@dataclass(frozen=True)
class RunResult:
    """Artifacts of one scenario run."""

    out_dir: str
    files: tuple
    summary: dict


def _fmt(value):
    if isinstance(value, (int,)):
        return str(value)
    return format(float(value), ".17g")


def _write_csv(path, header, columns):
    n = len(columns[0])
    with open(path, "w", newline="") as fh:
        fh.write(header + "\n")
        for i in range(n):
            fh.write(",".join(_fmt(col[i]) for col in columns) + "\n")


def _trajectory_columns(traj):
    return (
        [float(x) for x in traj.t],
        [int(x) for x in traj.kick],
        [float(x) for x in traj.theta_wrapped],
        [float(x) for x in traj.theta_unwrapped],
        [float(x) for x in traj.p_theta],
    )


def _integrate_one(config, timeline, ic, label):
    span = _run_span(config, timeline)
    if config.mode == "bohm_velocity":
        return integrate_bohm_trajectory(
            timeline, ic.theta0, span, rtol=config.rtol, atol=config.atol,
            cadence=config.cadence, description=label,
        )
    if config.mode == "newton_constrained":
        omega0 = bohm_velocity(timeline, ic.theta0, span[0])
    else:
        omega0 = ic.theta_dot0
    return integrate_newton_trajectory(
        timeline, ic.theta0, omega0, span, rtol=config.rtol,
        atol=config.atol, cadence=config.cadence, description=label,
    )


def _run_span(config, timeline):
    if config.t_max is not None:
        return (0.0, config.t_max)
    # end exactly on the last kick as the timeline accumulated it
    return (0.0, timeline.epochs[-1].time)


def run_scenario(config):
    """Execute one scenario and write its artifacts under config.out_dir."""
    out_dir = config.out_dir
    os.makedirs(out_dir, exist_ok=True)
    written = []

    def emit(name, header, columns):
        path = os.path.join(out_dir, name)
        _write_csv(path, header, columns)
        written.append(name)

    try:
        prm = config.params
        kicked = config.n_kicks is not None
        if kicked and config.n_kicks == 0 and config.trajectories:
            raise ConfigError(
                "schedule.n_kicks = 0 leaves no interval to integrate "
                "trajectories over"
            )

        timelines = []
        if config.mode != "classical_map":
            state = build_state(config.state)
            if kicked:
                timelines.append(evolve_timeline(
                    state, prm, config.n_kicks, band_cap=config.band_cap,
                    norm_tolerance=config.norm_tolerance))
            else:
                timelines.append(free_timeline(state, prm))
            if config.state_alt is not None:
                alt = build_state(config.state_alt)
                if kicked:
                    timelines.append(evolve_timeline(
                        alt, prm, config.n_kicks, band_cap=config.band_cap,
                        norm_tolerance=config.norm_tolerance))
                else:
                    timelines.append(free_timeline(alt, prm))

        trajectories = []
        if config.mode == "classical_map":
            for i, ic in enumerate(config.trajectories):
                orbit = map_trajectory(
                    MapState(theta=ic.theta0, p=ic.p0), prm.stochasticity,
                    config.n_kicks, period=prm.period,
                    description="map orbit %d" % i)
                trajectories.append(orbit)
        elif config.state_alt is not None:
            for j, tl in enumerate(timelines):
                trajectories.append(_integrate_one(
                    config, tl, config.trajectories[0],
                    "state %s" % ("primary", "alternate")[j]))
        else:
            for i, ic in enumerate(config.trajectories):
                trajectories.append(_integrate_one(
                    config, timelines[0], ic, "trajectory %d" % i))

        summary_trajectories = []
        for i, traj in enumerate(trajectories):
            name = "trajectory_%d.csv" % i
            emit(name, TRAJECTORY_HEADER, _trajectory_columns(traj))
            entry = {
                "file": name,
                "mode": traj.meta.mode,
                "theta0": float(traj.meta.theta0),
                "steps": int(traj.meta.steps),
                "rejects": int(traj.meta.rejects),
            }
            if traj.meta.mode != "classical_map":
                entry["min_density"] = float(traj.meta.min_density)
            summary_trajectories.append(entry)

        if kicked and config.n_kicks >= 1:
            for i, traj in enumerate(trajectories):
                sec = poincare_section(traj, prm.period)
                emit("section_%d.csv" % i, SECTION_HEADER,
                     ([int(x) for x in sec.kick],
                      [float(x) for x in sec.theta],
                      [float(x) for x in sec.p_theta]))

        norm_defects = []
        if config.mode != "classical_map" and kicked:
            energies = quantum_energy_series(timelines[0])
            emit("quantum_energy.csv", ENERGY_HEADER,
                 (list(range(len(energies))), [float(e) for e in energies]))
            norm_defects = [float(d) for d in timelines[0].norm_history]

        if config.ensemble is not None:
            ens = config.ensemble
            series = classical_energy_series(
                prm.stochasticity, ens.size, ens.n_kicks, seed=config.seed,
                p0=ens.p0)
            emit("classical_energy.csv", ENERGY_HEADER,
                 (list(range(len(series))), [float(e) for e in series]))

        divergence = None
        if len(trajectories) == 2:
            report = divergence_report(trajectories[0], trajectories[1],
                                       config.divergence_threshold)
            emit("divergence.csv", DIVERGENCE_HEADER,
                 ([float(t) for t in report.times],
                  [float(s) for s in report.separations]))
            divergence = {
                "verdict": report.verdict,
                "log_fit_rate": float(report.log_fit_rate),
                "threshold_rate": float(report.threshold_rate),
                "max_separation": float(report.max_separation),
                "growth_factor": float(report.growth_factor),
                "n_fit": int(report.n_fit),
            }

        if config.classical_overlay:
            traj0 = trajectories[0]
            p0_map = prm.tau * float(traj0.p_theta[0]) / prm.hbar
            overlay = map_trajectory(
                MapState(theta=float(traj0.theta_wrapped[0]), p=p0_map),
                prm.stochasticity, config.n_kicks, period=prm.period,
                description="classical overlay")
            sec = poincare_section(overlay, prm.period)
            emit("classical_section.csv", SECTION_HEADER,
                 ([int(x) for x in sec.kick],
                  [float(x) for x in sec.theta],
                  [float(x) for x in sec.p_theta]))

        summary = {
            "scenario": config.name,
            "version": __version__,
            "config": config.to_dict(),
            "outputs": list(written),
            "norm_defects": {
                "max": max(norm_defects) if norm_defects else None,
                "per_kick": norm_defects,
            },
            "divergence": divergence,
            "trajectories": summary_trajectories,
        }
        summary_path = os.path.join(out_dir, "summary.yaml")
        # register before opening so a failed dump can't strand a stub file
        written.append("summary.yaml")
        with open(summary_path, "w", newline="") as fh:
            yaml.safe_dump(summary, fh, sort_keys=True,
                           default_flow_style=False)
    except BaseException:
        for name in written:
            try:
                os.remove(os.path.join(out_dir, name))
            except OSError:
                pass
        raise

    return RunResult(out_dir=out_dir, files=tuple(written), summary=summary)
