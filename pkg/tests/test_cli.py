"""Configuration handling, CLI contracts, exit codes, and artifact determinism."""

import json
import os
from pathlib import Path

import pytest

from wplab.cli import main
from wplab.config import ConfigError, RunConfig, apply_overrides, load_config
from wplab.output import LOCK_NAME

# a deliberately small configuration so CLI round trips stay fast
SMALL = {
    "basis_size": 24,
    "states": [0, 1],
    "axis_samples": 301,
    "grid_x_size": 61,
    "grid_p_size": 61,
    "grid_x_window": [-3.0, 4.0],
    "grid_p_window": [-3.5, 3.5],
}


def write_small_config(tmp_path: Path, **extra) -> Path:
    payload = dict(SMALL)
    payload.update(extra)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(payload))
    return path


def tree_bytes(root: Path) -> dict[str, bytes]:
    return {str(p.relative_to(root)): p.read_bytes()
            for p in sorted(root.rglob("*")) if p.is_file()}


class TestConfig:
    def test_defaults_are_benchmark_cubic(self):
        cfg = RunConfig()
        assert cfg.potential == (0.0, 0.0, 2.0, -0.2)
        assert cfg.basis_size == 40
        assert cfg.states == (0, 1, 2, 3)
        cfg.validate()

    def test_round_trip(self, tmp_path):
        cfg = RunConfig(basis_size=30, states=(0, 2))
        path = tmp_path / "c.json"
        path.write_text(json.dumps(cfg.to_dict()))
        again = load_config(path)
        assert again == cfg

    def test_unknown_key_rejected(self, tmp_path):
        path = write_small_config(tmp_path, nonsense=3)
        with pytest.raises(ConfigError):
            load_config(path)

    def test_bad_values_rejected(self):
        with pytest.raises(ConfigError):
            RunConfig(mass=-1.0).validate()
        with pytest.raises(ConfigError):
            RunConfig(basis_size=3).validate()
        with pytest.raises(ConfigError):
            RunConfig(states=(50,)).validate()
        with pytest.raises(ConfigError):
            RunConfig(x_window=(2.0, -2.0)).validate()
        with pytest.raises(ConfigError):
            RunConfig(formats=("csv", "pdf")).validate()
        with pytest.raises(ConfigError):
            RunConfig(axis_samples=50).validate()

    def test_overrides(self):
        cfg = apply_overrides(RunConfig(), states=(0, 2), out_dir="elsewhere",
                              formats=("csv", "json"), frame=(1.0, 2.0, 1.0),
                              potential=(0.0, 0.0, 0.5))
        assert cfg.states == (0, 2)
        assert cfg.out_dir == "elsewhere"
        assert cfg.formats == ("csv", "json")
        assert cfg.omega == 2.0
        assert cfg.potential == (0.0, 0.0, 0.5)

    def test_flag_parse_errors(self):
        from wplab.cli import _parse_floats, _parse_states
        with pytest.raises(ConfigError):
            _parse_states("0,zebra")
        with pytest.raises(ConfigError):
            _parse_floats("1.0,huh", "--frame")
        assert _parse_states("") == ()


class TestExitCodes:
    def test_missing_config_file(self, tmp_path, capsys):
        rc = main(["solve", "--config", str(tmp_path / "missing.json"),
                   "--out", str(tmp_path / "out")])
        assert rc == 2
        assert "error" in capsys.readouterr().err.lower()

    def test_malformed_config_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        rc = main(["solve", "--config", str(bad), "--out", str(tmp_path / "out")])
        assert rc == 2

    def test_bad_flag_value(self, tmp_path, capsys):
        rc = main(["solve", "--states", "0,banana", "--out", str(tmp_path / "out")])
        assert rc == 2

    def test_lock_conflict(self, tmp_path, capsys):
        out = tmp_path / "out"
        out.mkdir()
        (out / LOCK_NAME).write_text("held\n")
        cfg = write_small_config(tmp_path)
        rc = main(["solve", "--config", str(cfg), "--out", str(out)])
        assert rc == 2
        assert "lock" in capsys.readouterr().err.lower()

    def test_bad_thread_env(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("WPLAB_THREADS", "many")
        cfg = write_small_config(tmp_path)
        rc = main(["wigner-grid", "--config", str(cfg),
                   "--out", str(tmp_path / "out")])
        assert rc == 2


class TestSolve:
    def test_artifacts_and_ordering(self, tmp_path):
        cfg = write_small_config(tmp_path)
        out = tmp_path / "out"
        rc = main(["solve", "--config", str(cfg), "--out", str(out)])
        assert rc == 0
        for name in ("config.json", "solve.json", "eigenvalues.csv",
                     "coefficients.csv", "state_0_wavefunction.csv",
                     "state_1_wavefunction.csv"):
            assert (out / name).exists(), name
        assert not (out / LOCK_NAME).exists()
        payload = json.loads((out / "solve.json").read_text())
        energies = [st["energy"] for st in payload["states"]]
        assert energies == sorted(energies)
        assert payload["basis_size"] == 24
        assert payload["potential"] == [0.0, 0.0, 2.0, -0.2]

    def test_svg_emitted_when_requested(self, tmp_path):
        cfg = write_small_config(tmp_path)
        out = tmp_path / "out"
        rc = main(["solve", "--config", str(cfg), "--out", str(out),
                   "--format", "csv,json,svg"])
        assert rc == 0
        assert (out / "wavefunctions.svg").exists()

    def test_empty_states_allowed(self, tmp_path):
        cfg = write_small_config(tmp_path)
        out = tmp_path / "out"
        rc = main(["solve", "--config", str(cfg), "--out", str(out),
                   "--states", ""])
        assert rc == 0
        payload = json.loads((out / "solve.json").read_text())
        assert payload["states"] == []


class TestPipelines:
    def test_wigner_grid(self, tmp_path):
        cfg = write_small_config(tmp_path)
        out = tmp_path / "out"
        rc = main(["wigner-grid", "--config", str(cfg), "--out", str(out),
                   "--states", "1"])
        assert rc == 0
        assert (out / "state_1_wigner.csv").exists()
        assert (out / "state_1_wigner.svg").exists()
        payload = json.loads((out / "state_1_negativity.json").read_text())
        assert payload["grid"]["min_value"] < 0.0
        assert payload["axes"]["p"]["min_slice_value"] < 0.0

    def test_energy_profile_and_poles(self, tmp_path):
        cfg = write_small_config(tmp_path)
        out = tmp_path / "out"
        rc = main(["energy-profile", "--config", str(cfg), "--out", str(out),
                   "--states", "1"])
        assert rc == 0
        for name in ("state_1_energy_x.csv", "state_1_energy_p.csv",
                     "state_1_energy_x.svg", "state_1_energy_p.svg"):
            assert (out / name).exists(), name

        out2 = tmp_path / "out2"
        rc = main(["poles", "--config", str(cfg), "--out", str(out2),
                   "--states", "1"])
        assert rc == 0
        poles = json.loads((out2 / "poles.json").read_text())
        by_axis = {e["axis"]: e for e in poles["poles"] if e["state"] == 1}
        assert len(by_axis["x"]["positions"]) == 1
        assert len(by_axis["p"]["positions"]) == 1
        assert by_axis["x"]["positions"][0] == pytest.approx(0.0510, abs=5e-3)

    def test_report_determinism_same_out(self, tmp_path):
        cfg = write_small_config(tmp_path)
        out = tmp_path / "out"
        rc = main(["report", "--config", str(cfg), "--out", str(out)])
        assert rc == 0
        first = tree_bytes(out)
        assert first
        for p in sorted(out.rglob("*"), reverse=True):
            if p.is_file():
                p.unlink()
        rc = main(["report", "--config", str(cfg), "--out", str(out)])
        assert rc == 0
        second = tree_bytes(out)
        assert first.keys() == second.keys()
        diffs = [name for name in first if first[name] != second[name]]
        assert diffs == []


class TestVerify:
    def test_small_verify_passes(self, tmp_path):
        out = tmp_path / "out"
        rc = main(["verify", "--out", str(out), "--max-nk", "4"])
        assert rc == 0
        payload = json.loads((out / "verify.json").read_text())
        assert payload["passed"] is True
        assert all(s["passed"] for s in payload["suites"])

    def test_fault_injection_detected(self, tmp_path, capsys):
        out = tmp_path / "out"
        rc = main(["verify", "--out", str(out), "--max-nk", "4",
                   "--perturb-g", "1e-3"])
        assert rc == 1
        payload = json.loads((out / "verify.json").read_text())
        assert payload["passed"] is False
        by_name = {s["suite"]: s["passed"] for s in payload["suites"]}
        assert by_name["gtable"] is False
        text = capsys.readouterr().out
        assert "FAIL" in text and "gtable" in text
