import filecmp
import math
import os

import numpy as np
import pytest
import yaml

from bohmrotor import (
    ConfigError,
    NodeProximityError,
    config_from_mapping,
    integrate_bohm_trajectory,
    run_scenario,
    __version__,
)
from bohmrotor.cli import main
from bohmrotor.runner import (
    DIVERGENCE_HEADER,
    ENERGY_HEADER,
    SECTION_HEADER,
    TRAJECTORY_HEADER,
)


def small_doc(out_dir, **over):
    doc = {
        "name": "unit",
        "params": {"k": 10.0, "tau": 0.5},
        "state": {"kind": "eigenstate", "n0": 0},
        "mode": "bohm_velocity",
        "schedule": {"n_kicks": 3},
        "trajectories": [{"theta0": 0.5}, {"theta0": 2.5}],
        "integrator": {"rtol": 1e-5, "cadence": 5},
        "out_dir": str(out_dir),
    }
    doc.update(over)
    return doc


def read_csv(path):
    with open(path) as fh:
        header = fh.readline().strip()
        rows = [line.strip().split(",") for line in fh if line.strip()]
    return header, rows


class TestRunScenario:
    def test_kicked_quantum_artifacts(self, tmp_path):
        cfg = config_from_mapping(small_doc(tmp_path))
        result = run_scenario(cfg)
        assert set(result.files) == {
            "trajectory_0.csv", "trajectory_1.csv",
            "section_0.csv", "section_1.csv",
            "quantum_energy.csv", "divergence.csv", "summary.yaml",
        }
        header, rows = read_csv(tmp_path / "trajectory_0.csv")
        assert header == TRAJECTORY_HEADER
        # cadence 5 over 3 segments: 6 rows each, plus the final post-kick row
        assert len(rows) == 19
        header, rows = read_csv(tmp_path / "section_0.csv")
        assert header == SECTION_HEADER
        assert len(rows) == 3
        header, rows = read_csv(tmp_path / "quantum_energy.csv")
        assert header == ENERGY_HEADER
        assert len(rows) == 4
        assert float(rows[0][1]) == 0.0
        assert float(rows[1][1]) == pytest.approx(25.0, abs=1e-8)
        header, _ = read_csv(tmp_path / "divergence.csv")
        assert header == DIVERGENCE_HEADER

    def test_csv_floats_round_trip(self, tmp_path):
        cfg = config_from_mapping(small_doc(tmp_path))
        run_scenario(cfg)
        from bohmrotor.config import build_state
        from bohmrotor.spectral import evolve_timeline

        tl = evolve_timeline(build_state(cfg.state), cfg.params, 3)
        ref = integrate_bohm_trajectory(tl, 0.5, (0.0, tl.epochs[-1].time),
                                        rtol=1e-5, atol=1e-7, cadence=5,
                                        description="trajectory 0")
        _, rows = read_csv(tmp_path / "trajectory_0.csv")
        got = np.array([[float(c) for c in row] for row in rows])
        assert np.array_equal(got[:, 0], ref.t)
        assert np.array_equal(got[:, 1].astype(int), ref.kick)
        assert np.array_equal(got[:, 2], ref.theta_wrapped)
        assert np.array_equal(got[:, 3], ref.theta_unwrapped)
        assert np.array_equal(got[:, 4], ref.p_theta)

    def test_deterministic_across_runs(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run_scenario(config_from_mapping(small_doc(a)))
        run_scenario(config_from_mapping(small_doc(b)))
        for name in os.listdir(a):
            if name == "summary.yaml":
                # the echoed out_dir differs by construction; compare the rest
                sa = yaml.safe_load(open(a / name))
                sb = yaml.safe_load(open(b / name))
                sa["config"].pop("out_dir"), sb["config"].pop("out_dir")
                assert sa == sb
            else:
                assert filecmp.cmp(a / name, b / name, shallow=False), name

    def test_summary_contents(self, tmp_path):
        cfg = config_from_mapping(small_doc(tmp_path))
        result = run_scenario(cfg)
        s = result.summary
        assert s["scenario"] == "unit"
        assert s["version"] == __version__
        assert config_from_mapping(s["config"]) == cfg
        assert s["norm_defects"]["max"] < 1e-10
        assert len(s["norm_defects"]["per_kick"]) == 3
        assert s["divergence"]["verdict"] in ("bounded", "divergent")
        assert len(s["trajectories"]) == 2
        assert s["trajectories"][0]["file"] == "trajectory_0.csv"
        assert s["trajectories"][0]["steps"] > 0
        on_disk = yaml.safe_load(open(tmp_path / "summary.yaml"))
        assert on_disk == s

    def test_free_run_has_no_kick_artifacts(self, tmp_path):
        doc = small_doc(tmp_path,
                        state={"kind": "cosine_superposition", "a": 0.5},
                        schedule={"t_max": 2.0},
                        trajectories=[{"theta0": 0.5}, {"theta0": 0.6}])
        result = run_scenario(config_from_mapping(doc))
        assert set(result.files) == {
            "trajectory_0.csv", "trajectory_1.csv",
            "divergence.csv", "summary.yaml",
        }
        assert result.summary["norm_defects"]["max"] is None

    def test_single_trajectory_no_divergence_file(self, tmp_path):
        doc = small_doc(tmp_path, trajectories=[{"theta0": 0.5}])
        result = run_scenario(config_from_mapping(doc))
        assert "divergence.csv" not in result.files
        assert result.summary["divergence"] is None

    def test_classical_map_run(self, tmp_path):
        doc = small_doc(tmp_path, mode="classical_map",
                        trajectories=[{"theta0": 1.0, "p0": 0.3}],
                        ensemble={"size": 50, "n_kicks": 10})
        del doc["state"]
        result = run_scenario(config_from_mapping(doc))
        assert set(result.files) == {
            "trajectory_0.csv", "section_0.csv",
            "classical_energy.csv", "summary.yaml",
        }
        _, rows = read_csv(tmp_path / "trajectory_0.csv")
        assert len(rows) == 4  # n_kicks + 1 stroboscopic rows
        _, rows = read_csv(tmp_path / "classical_energy.csv")
        assert len(rows) == 11

    def test_state_alt_runs_one_ic_on_two_timelines(self, tmp_path):
        doc = small_doc(tmp_path,
                        state={"kind": "two_mode", "a1_sq": 0.35},
                        state_alt={"kind": "two_mode", "a1_sq": 0.34},
                        trajectories=[{"theta0": 0.5}])
        result = run_scenario(config_from_mapping(doc))
        assert "trajectory_1.csv" in result.files
        assert "divergence.csv" in result.files
        descs = [t["mode"] for t in result.summary["trajectories"]]
        assert descs == ["bohm_velocity", "bohm_velocity"]

    def test_classical_overlay(self, tmp_path):
        doc = small_doc(tmp_path, classical_overlay=True)
        result = run_scenario(config_from_mapping(doc))
        assert "classical_section.csv" in result.files
        _, rows = read_csv(tmp_path / "classical_section.csv")
        assert len(rows) == 3

    def test_zero_kicks_with_trajectories_rejected(self, tmp_path):
        doc = small_doc(tmp_path, schedule={"n_kicks": 0})
        with pytest.raises(ConfigError, match="n_kicks"):
            run_scenario(config_from_mapping(doc))

    def test_zero_kicks_energy_only(self, tmp_path):
        doc = small_doc(tmp_path, schedule={"n_kicks": 0}, trajectories=[])
        result = run_scenario(config_from_mapping(doc))
        assert set(result.files) == {"quantum_energy.csv", "summary.yaml"}

    def test_node_failure_leaves_no_outputs(self, tmp_path):
        doc = small_doc(tmp_path,
                        state={"kind": "cosine_superposition", "a": 0.5},
                        schedule={"t_max": 1.0},
                        trajectories=[{"theta0": 0.5}, {"theta0": math.pi}])
        with pytest.raises(NodeProximityError):
            run_scenario(config_from_mapping(doc))
        assert os.listdir(tmp_path) == []

    def test_late_failure_removes_partial_outputs(self, tmp_path, monkeypatch):
        # force the very last write to fail: every CSV written before it
        # must be cleaned up
        import bohmrotor.runner as runner_mod

        def boom(*args, **kwargs):
            raise OSError("disk full")

        monkeypatch.setattr(runner_mod.yaml, "safe_dump", boom)
        with pytest.raises(OSError):
            run_scenario(config_from_mapping(small_doc(tmp_path)))
        assert os.listdir(tmp_path) == []


class TestCli:
    def test_run_with_preset_and_overrides(self, tmp_path, capsys):
        out = tmp_path / "o"
        code = main(["run", "--preset", "free_rotor_period",
                     "--config", self._write(tmp_path, {
                         "schedule": {"t_max": 1.0},
                         "integrator": {"rtol": 1e-5, "cadence": 8},
                     }),
                     "--out", str(out)])
        assert code == 0
        msg = capsys.readouterr().out
        assert "free_rotor_period" in msg
        assert "trajectory_0.csv" in msg
        assert (out / "summary.yaml").exists()

    def test_run_config_only(self, tmp_path, capsys):
        path = self._write(tmp_path, small_doc(tmp_path / "o",
                                               schedule={"n_kicks": 1}))
        assert main(["run", "--config", path]) == 0
        assert (tmp_path / "o" / "divergence.csv").exists()

    def test_seed_override_lands_in_summary(self, tmp_path):
        doc = small_doc(tmp_path / "o", trajectories=[],
                        ensemble={"size": 10, "n_kicks": 3})
        path = self._write(tmp_path, doc)
        assert main(["run", "--config", path, "--seed", "7"]) == 0
        s = yaml.safe_load(open(tmp_path / "o" / "summary.yaml"))
        assert s["config"]["seed"] == 7

    def test_presets_listing(self, capsys):
        assert main(["presets"]) == 0
        out = capsys.readouterr().out
        for name in ("fig1", "fig2", "fig3", "fig4", "suppression"):
            assert name in out

    def test_version(self, capsys):
        assert main(["version"]) == 0
        assert capsys.readouterr().out.strip() == __version__

    def test_run_needs_some_source(self, capsys):
        assert main(["run"]) == 1
        assert "config" in capsys.readouterr().err

    def test_missing_file_is_config_error(self, capsys):
        assert main(["run", "--config", "/nonexistent.yaml"]) == 1
        assert "config error" in capsys.readouterr().err

    def test_yaml_syntax_error_reports_location(self, tmp_path, capsys):
        path = tmp_path / "bad.yaml"
        path.write_text("params: {k: 10,\n  oops\n")
        assert main(["run", "--config", str(path)]) == 1
        err = capsys.readouterr().err
        assert "line" in err and "column" in err

    def test_unknown_preset_fails(self, capsys):
        assert main(["run", "--preset", "fig99"]) == 1
        assert "unknown preset" in capsys.readouterr().err

    def test_numerical_failure_exit_code(self, tmp_path, capsys):
        doc = {
            "params": {"k": 10.0, "tau": 0.5},
            "state": {"kind": "cosine_superposition", "a": 0.5},
            "mode": "bohm_velocity",
            "schedule": {"t_max": 1.0},
            "trajectories": [{"theta0": math.pi}],
            "out_dir": str(tmp_path / "o"),
        }
        assert main(["run", "--config", self._write(tmp_path, doc)]) == 2
        assert "numerical failure" in capsys.readouterr().err

    def test_band_cap_failure_exit_code(self, tmp_path, capsys):
        doc = small_doc(tmp_path / "o", band_cap=60,
                        schedule={"n_kicks": 12}, trajectories=[])
        assert main(["run", "--config", self._write(tmp_path, doc)]) == 2
        assert "band cap" in capsys.readouterr().err

    def test_unknown_subcommand_exits_one(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 1

    @staticmethod
    def _write(tmp_path, doc):
        path = tmp_path / "scenario.yaml"
        path.write_text(yaml.safe_dump(doc))
        return str(path)
