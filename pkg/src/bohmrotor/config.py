"""Scenario configuration: YAML parsing, validation, normalization.

A config document (or a named preset it references under the `preset`
key) pins down one run: rotor parameters, the spectral initial state,
the dynamics mode, the kick schedule or free-flight horizon, trajectory
initial conditions, integrator knobs and output plumbing. Parsing is
strict: unknown keys anywhere are errors, exactly one of (omega0,
period) or (k, tau) may be given, and mode-specific fields are enforced
(theta_dot0 exists exactly when the mode is newton_relaxed).

Angles may be given in radians (theta0) or degrees (theta0_deg); the
normalized config is radians-only, and `to_dict` emits a document in
that normalized form which parses back to an equal ScenarioConfig.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import yaml

from .core import (
    DEFAULT_BAND_CAP,
    RotorParams,
    make_cosine_superposition,
    make_eigenstate,
    make_gaussian_packet,
    make_two_mode,
)
from .errors import ConfigError
from .spectral import DEFAULT_NORM_TOLERANCE

MODES = ("bohm_velocity", "newton_constrained", "newton_relaxed",
         "classical_map")
QUANTUM_MODES = MODES[:3]
STATE_KINDS = ("eigenstate", "cosine_superposition", "two_mode", "gaussian")

DEFAULT_RTOL = 1e-6
DEFAULT_CADENCE = 20
DEFAULT_OUT_DIR = "out"

_TOP_KEYS = frozenset((
    "preset", "name", "params", "state", "state_alt", "mode", "schedule",
    "trajectories", "integrator", "band_cap", "norm_tolerance",
    "divergence_threshold", "ensemble", "classical_overlay", "seed",
    "out_dir",
))
_PARAM_KEYS = frozenset(("hbar", "inertia", "omega0", "period", "k", "tau"))
_STATE_KEYS = {
    "eigenstate": frozenset(("kind", "n0")),
    "cosine_superposition": frozenset(("kind", "a")),
    "two_mode": frozenset(("kind", "a1_sq")),
    "gaussian": frozenset(("kind", "p_mean", "p_halfwidth", "theta_center",
                           "theta_center_deg")),
}
_SCHEDULE_KEYS = frozenset(("n_kicks", "t_max"))
_TRAJ_KEYS = frozenset(("theta0", "theta0_deg", "theta_dot0", "p0"))
_INTEGRATOR_KEYS = frozenset(("rtol", "atol", "cadence"))
_ENSEMBLE_KEYS = frozenset(("size", "n_kicks", "p0"))


def _check_keys(mapping, allowed, path):
    if not isinstance(mapping, dict):
        raise ConfigError("%s must be a mapping" % path)
    for key in mapping:
        if key not in allowed:
            raise ConfigError("unknown key %r in %s" % (key, path))


def _as_float(value, path):
    # YAML 1.1 reads bare "1e-6" as a string, so accept numeric strings
    if isinstance(value, bool) or value is None:
        raise ConfigError("%s must be a number" % path)
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError("%s must be a number, got %r" % (path, value)) from None


def _as_fraction(value, path):
    """Float, or an exact 'numerator/denominator' string."""
    if isinstance(value, str) and "/" in value:
        num, _, den = value.partition("/")
        try:
            return float(num) / float(den)
        except (ValueError, ZeroDivisionError):
            raise ConfigError("%s is not a valid fraction: %r"
                              % (path, value)) from None
    return _as_float(value, path)


def _as_int(value, path):
    if isinstance(value, bool):
        raise ConfigError("%s must be an integer" % path)
    if isinstance(value, int):
        return value
    if isinstance(value, (float, str)):
        try:
            as_f = float(value)
        except ValueError:
            raise ConfigError("%s must be an integer, got %r"
                              % (path, value)) from None
        if as_f == int(as_f):
            return int(as_f)
    raise ConfigError("%s must be an integer, got %r" % (path, value))


def _as_bool(value, path):
    if isinstance(value, bool):
        return value
    raise ConfigError("%s must be true or false" % path)


@dataclass(frozen=True)
class StateSpec:
    """Normalized initial-state description."""

    kind: str
    n0: int | None = None
    a: float | None = None
    a1_sq: float | None = None
    p_mean: float | None = None
    p_halfwidth: float | None = None
    theta_center: float | None = None

    def to_dict(self):
        out = {"kind": self.kind}
        for key in ("n0", "a", "a1_sq", "p_mean", "p_halfwidth",
                    "theta_center"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        return out


@dataclass(frozen=True)
class TrajectoryIC:
    """One trajectory's initial data, angles in radians."""

    theta0: float
    theta_dot0: float | None = None
    p0: float | None = None

    def to_dict(self):
        out = {"theta0": self.theta0}
        if self.theta_dot0 is not None:
            out["theta_dot0"] = self.theta_dot0
        if self.p0 is not None:
            out["p0"] = self.p0
        return out


@dataclass(frozen=True)
class EnsembleSpec:
    """Classical ensemble request for the energy-diffusion series."""

    size: int
    n_kicks: int
    p0: float = 0.0

    def to_dict(self):
        return {"size": self.size, "n_kicks": self.n_kicks, "p0": self.p0}


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated, normalized scenario description."""

    name: str
    params: RotorParams
    mode: str
    state: StateSpec | None
    state_alt: StateSpec | None
    n_kicks: int | None
    t_max: float | None
    trajectories: tuple
    rtol: float
    atol: float
    cadence: int
    band_cap: int
    norm_tolerance: float
    divergence_threshold: float | None
    ensemble: EnsembleSpec | None
    classical_overlay: bool
    seed: int
    out_dir: str

    def to_dict(self):
        """Document in the input schema; parses back to an equal config."""
        doc = {
            "name": self.name,
            "params": {
                "hbar": self.params.hbar, "inertia": self.params.inertia,
                "omega0": self.params.omega0, "period": self.params.period,
            },
            "mode": self.mode,
            "schedule": ({"n_kicks": self.n_kicks} if self.n_kicks is not None
                         else {"t_max": self.t_max}),
            "trajectories": [ic.to_dict() for ic in self.trajectories],
            "integrator": {"rtol": self.rtol, "atol": self.atol,
                           "cadence": self.cadence},
            "band_cap": self.band_cap,
            "norm_tolerance": self.norm_tolerance,
            "seed": self.seed,
            "out_dir": self.out_dir,
        }
        if self.state is not None:
            doc["state"] = self.state.to_dict()
        if self.state_alt is not None:
            doc["state_alt"] = self.state_alt.to_dict()
        if self.divergence_threshold is not None:
            doc["divergence_threshold"] = self.divergence_threshold
        if self.ensemble is not None:
            doc["ensemble"] = self.ensemble.to_dict()
        if self.classical_overlay:
            doc["classical_overlay"] = True
        return doc


def _parse_params(doc):
    _check_keys(doc, _PARAM_KEYS, "params")
    hbar = _as_float(doc.get("hbar", 1.0), "params.hbar")
    inertia = _as_float(doc.get("inertia", 1.0), "params.inertia")
    has_dim = "omega0" in doc or "period" in doc
    has_dimless = "k" in doc or "tau" in doc
    if has_dim and has_dimless:
        raise ConfigError(
            "params must give either (omega0, period) or (k, tau), not both"
        )
    if has_dim:
        if "omega0" not in doc or "period" not in doc:
            raise ConfigError("params needs both omega0 and period")
        return RotorParams(hbar=hbar, inertia=inertia,
                           omega0=_as_float(doc["omega0"], "params.omega0"),
                           period=_as_float(doc["period"], "params.period"))
    if has_dimless:
        if "k" not in doc or "tau" not in doc:
            raise ConfigError("params needs both k and tau")
        return RotorParams.from_dimensionless(
            k=_as_float(doc["k"], "params.k"),
            tau=_as_float(doc["tau"], "params.tau"),
            hbar=hbar, inertia=inertia,
        )
    raise ConfigError("params must give (omega0, period) or (k, tau)")


def _parse_state(doc, path):
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ConfigError("%s must be a mapping with a 'kind' key" % path)
    kind = doc["kind"]
    if kind not in STATE_KINDS:
        raise ConfigError("%s.kind must be one of %s, got %r"
                          % (path, "/".join(STATE_KINDS), kind))
    _check_keys(doc, _STATE_KEYS[kind], path)
    if kind == "eigenstate":
        if "n0" not in doc:
            raise ConfigError("%s: eigenstate needs n0" % path)
        return StateSpec(kind=kind, n0=_as_int(doc["n0"], path + ".n0"))
    if kind == "cosine_superposition":
        if "a" not in doc:
            raise ConfigError("%s: cosine_superposition needs a" % path)
        return StateSpec(kind=kind, a=_as_fraction(doc["a"], path + ".a"))
    if kind == "two_mode":
        if "a1_sq" not in doc:
            raise ConfigError("%s: two_mode needs a1_sq" % path)
        a1_sq = _as_fraction(doc["a1_sq"], path + ".a1_sq")
        if not 0.0 < a1_sq < 1.0:
            raise ConfigError("%s.a1_sq must lie strictly between 0 and 1"
                              % path)
        return StateSpec(kind=kind, a1_sq=a1_sq)
    for need in ("p_mean", "p_halfwidth"):
        if need not in doc:
            raise ConfigError("%s: gaussian needs %s" % (path, need))
    if "theta_center" in doc and "theta_center_deg" in doc:
        raise ConfigError("%s: give theta_center or theta_center_deg, not both"
                          % path)
    center = 0.0
    if "theta_center" in doc:
        center = _as_float(doc["theta_center"], path + ".theta_center")
    elif "theta_center_deg" in doc:
        center = math.radians(
            _as_float(doc["theta_center_deg"], path + ".theta_center_deg"))
    return StateSpec(kind=kind,
                     p_mean=_as_float(doc["p_mean"], path + ".p_mean"),
                     p_halfwidth=_as_float(doc["p_halfwidth"],
                                           path + ".p_halfwidth"),
                     theta_center=center)


def _parse_trajectory(doc, mode, path):
    _check_keys(doc, _TRAJ_KEYS, path)
    has_rad = "theta0" in doc
    has_deg = "theta0_deg" in doc
    if has_rad == has_deg:
        raise ConfigError("%s must give exactly one of theta0, theta0_deg"
                          % path)
    theta0 = (_as_float(doc["theta0"], path + ".theta0") if has_rad
              else math.radians(_as_float(doc["theta0_deg"],
                                          path + ".theta0_deg")))
    theta_dot0 = None
    if mode == "newton_relaxed":
        if "theta_dot0" not in doc:
            raise ConfigError("%s: newton_relaxed requires theta_dot0" % path)
        theta_dot0 = _as_float(doc["theta_dot0"], path + ".theta_dot0")
    elif "theta_dot0" in doc:
        raise ConfigError(
            "%s: theta_dot0 is only allowed in newton_relaxed mode" % path
        )
    p0 = None
    if mode == "classical_map":
        p0 = _as_float(doc.get("p0", 0.0), path + ".p0")
    elif "p0" in doc:
        raise ConfigError("%s: p0 is only allowed in classical_map mode" % path)
    return TrajectoryIC(theta0=theta0, theta_dot0=theta_dot0, p0=p0)


def _merge(base, override):
    """Recursive dict merge; non-dict values (lists included) replace."""
    out = dict(base)
    for key, val in override.items():
        if key in out and isinstance(out[key], dict) and isinstance(val, dict):
            out[key] = _merge(out[key], val)
        else:
            out[key] = val
    return out


def config_from_mapping(doc):
    """Validate and normalize an already-loaded config mapping."""
    if not isinstance(doc, dict):
        raise ConfigError("config document must be a mapping")
    preset_name = None
    if "preset" in doc:
        from .presets import preset_mapping  # late import: presets are configs

        preset_name = doc["preset"]
        base = preset_mapping(preset_name)
        overrides = {k: v for k, v in doc.items() if k != "preset"}
        doc = _merge(base, overrides)
    _check_keys(doc, _TOP_KEYS - {"preset"}, "config")

    name = doc.get("name", preset_name or "scenario")
    if not isinstance(name, str) or not name:
        raise ConfigError("name must be a nonempty string")

    if "params" not in doc:
        raise ConfigError("config needs a params block")
    params = _parse_params(doc["params"])

    mode = doc.get("mode")
    if mode not in MODES:
        raise ConfigError("mode must be one of %s, got %r"
                          % ("/".join(MODES), mode))

    if mode == "classical_map":
        for banned in ("state", "state_alt"):
            if banned in doc:
                raise ConfigError("%s has no meaning in classical_map mode"
                                  % banned)
        state = state_alt = None
    else:
        if "state" not in doc:
            raise ConfigError("quantum modes need a state block")
        state = _parse_state(doc["state"], "state")
        state_alt = (_parse_state(doc["state_alt"], "state_alt")
                     if "state_alt" in doc else None)

    if "schedule" not in doc:
        raise ConfigError("config needs a schedule block")
    sched = doc["schedule"]
    _check_keys(sched, _SCHEDULE_KEYS, "schedule")
    if ("n_kicks" in sched) == ("t_max" in sched):
        raise ConfigError("schedule must give exactly one of n_kicks, t_max")
    n_kicks = t_max = None
    if "n_kicks" in sched:
        n_kicks = _as_int(sched["n_kicks"], "schedule.n_kicks")
        if n_kicks < 0:
            raise ConfigError("schedule.n_kicks must be nonnegative")
    else:
        if mode == "classical_map":
            raise ConfigError("classical_map mode requires schedule.n_kicks")
        t_max = _as_float(sched["t_max"], "schedule.t_max")
        if not t_max > 0.0:
            raise ConfigError("schedule.t_max must be positive")

    raw_trajs = doc.get("trajectories", [])
    if not isinstance(raw_trajs, list):
        raise ConfigError("trajectories must be a list")
    trajectories = tuple(
        _parse_trajectory(entry, mode, "trajectories[%d]" % i)
        for i, entry in enumerate(raw_trajs)
    )
    if state_alt is not None and len(trajectories) != 1:
        raise ConfigError(
            "state_alt compares one initial condition across two states; "
            "give exactly one trajectory entry"
        )

    integ = doc.get("integrator", {})
    _check_keys(integ, _INTEGRATOR_KEYS, "integrator")
    rtol = _as_float(integ.get("rtol", DEFAULT_RTOL), "integrator.rtol")
    if not rtol > 0.0:
        raise ConfigError("integrator.rtol must be positive")
    atol = _as_float(integ.get("atol", rtol * 1e-2), "integrator.atol")
    if not atol > 0.0:
        raise ConfigError("integrator.atol must be positive")
    cadence = _as_int(integ.get("cadence", DEFAULT_CADENCE),
                      "integrator.cadence")
    if cadence < 1:
        raise ConfigError("integrator.cadence must be at least 1")

    band_cap = _as_int(doc.get("band_cap", DEFAULT_BAND_CAP), "band_cap")
    if band_cap < 1:
        raise ConfigError("band_cap must be positive")
    norm_tolerance = _as_float(doc.get("norm_tolerance",
                                       DEFAULT_NORM_TOLERANCE),
                               "norm_tolerance")
    if not norm_tolerance > 0.0:
        raise ConfigError("norm_tolerance must be positive")

    divergence_threshold = None
    if "divergence_threshold" in doc:
        divergence_threshold = _as_float(doc["divergence_threshold"],
                                         "divergence_threshold")
        if not divergence_threshold > 0.0:
            raise ConfigError("divergence_threshold must be positive")

    ensemble = None
    if "ensemble" in doc:
        ens = doc["ensemble"]
        _check_keys(ens, _ENSEMBLE_KEYS, "ensemble")
        if "size" not in ens:
            raise ConfigError("ensemble needs size")
        size = _as_int(ens["size"], "ensemble.size")
        if size < 1:
            raise ConfigError("ensemble.size must be positive")
        ens_kicks = _as_int(ens.get("n_kicks",
                                    n_kicks if n_kicks is not None else -1),
                            "ensemble.n_kicks")
        if ens_kicks < 0:
            raise ConfigError("ensemble.n_kicks must be given for free runs")
        ensemble = EnsembleSpec(size=size, n_kicks=ens_kicks,
                                p0=_as_float(ens.get("p0", 0.0),
                                             "ensemble.p0"))

    classical_overlay = _as_bool(doc.get("classical_overlay", False),
                                 "classical_overlay")
    if classical_overlay:
        if mode == "classical_map":
            raise ConfigError(
                "classical_overlay has no meaning in classical_map mode")
        if n_kicks is None:
            raise ConfigError("classical_overlay requires a kicked schedule")
        if not trajectories:
            raise ConfigError("classical_overlay requires a trajectory")

    seed = _as_int(doc.get("seed", 0), "seed")
    if not 0 <= seed < 2 ** 64:
        raise ConfigError("seed must fit in an unsigned 64-bit integer")

    out_dir = doc.get("out_dir", DEFAULT_OUT_DIR)
    if not isinstance(out_dir, str) or not out_dir:
        raise ConfigError("out_dir must be a nonempty string")

    return ScenarioConfig(
        name=name, params=params, mode=mode, state=state, state_alt=state_alt,
        n_kicks=n_kicks, t_max=t_max, trajectories=trajectories, rtol=rtol,
        atol=atol, cadence=cadence, band_cap=band_cap,
        norm_tolerance=norm_tolerance,
        divergence_threshold=divergence_threshold, ensemble=ensemble,
        classical_overlay=classical_overlay, seed=seed, out_dir=out_dir,
    )


def parse_config(text):
    """Parse a YAML scenario document into a validated ScenarioConfig.

    Syntax errors carry the line and column YAML reports; semantic errors
    name the offending key path.
    """
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        if mark is not None:
            raise ConfigError("config syntax error: %s" % exc,
                              line=mark.line + 1, column=mark.column + 1
                              ) from exc
        raise ConfigError("config syntax error: %s" % exc) from exc
    return config_from_mapping(doc)


def build_state(spec):
    """Construct the spectral initial state a StateSpec describes."""
    if spec.kind == "eigenstate":
        return make_eigenstate(spec.n0)
    if spec.kind == "cosine_superposition":
        return make_cosine_superposition(spec.a)
    if spec.kind == "two_mode":
        a1 = math.sqrt(spec.a1_sq)
        return make_two_mode(math.sqrt(1.0 - spec.a1_sq), a1)
    return make_gaussian_packet(spec.p_mean, spec.p_halfwidth,
                                theta_center=spec.theta_center)
