import hashlib
import json

import pytest

from vwheat import ConfigError
from vwheat.cli import main
from vwheat.config import (
    RunConfig,
    parse_config,
    serialize_config,
    with_resolved_schedule,
)


def test_empty_document_gives_defaults():
    cfg = parse_config("")
    assert cfg.a == 0.0 and cfg.b == 100.0
    assert cfg.dx == 0.01 and cfg.dt == 0.2
    assert cfg.t_final == 10.0
    assert cfg.snapshots == (2.0, 6.0, 10.0)
    assert cfg.theta == 1.0
    assert cfg.kind == "dirac" and cfg.x0 == 40.0
    assert cfg.epsilon == 0.2
    assert cfg.u0_center == 50.0


def test_comments_and_blank_lines_ignored():
    text = "# heading\n\npotential.x0 = 30  # trailing note\n"
    cfg = parse_config(text)
    assert cfg.x0 == 30.0


def test_epsilon_list_parses():
    cfg = parse_config("epsilon = [0.8, 0.4, 0.2]\n")
    assert cfg.epsilon == (0.8, 0.4, 0.2)


def test_unknown_key_reports_line():
    with pytest.raises(ConfigError) as err:
        parse_config("time.dt = 0.2\npotential.mass = 3\n")
    assert "line 2" in str(err.value)


def test_duplicate_key_rejected():
    with pytest.raises(ConfigError) as err:
        parse_config("time.dt = 0.2\ntime.dt = 0.1\n")
    assert "duplicate" in str(err.value).lower()


def test_theta_range_enforced():
    with pytest.raises(ConfigError):
        parse_config("scheme.theta = 1.5\n")


def test_bounded_kind_needs_library_use():
    with pytest.raises(ConfigError):
        parse_config("potential.kind = bounded\n")


def test_placement_validated():
    # placement problems surface as their own error type, still a ValueError
    from vwheat import PlacementError

    with pytest.raises(PlacementError):
        parse_config("u0.center = 0.4\n")
    with pytest.raises(PlacementError):
        parse_config("potential.x0 = 100\n")


def test_epsilon_schedule_compatibility():
    from vwheat import InvalidEpsilonError

    with pytest.raises(InvalidEpsilonError):
        parse_config("omega.schedule = logarithmic\nepsilon = 1.0\n")


def test_grid_divisibility_checked():
    with pytest.raises(ConfigError):
        parse_config("grid.dx = 0.013\n")
    with pytest.raises(ConfigError):
        parse_config("time.dt = 0.3\n")


def test_round_trip_identity():
    cfg = parse_config("potential.sign = -1\nepsilon = 0.5\ntime.snapshots = [1, 2]\ntime.T = 2\n")
    text = serialize_config(cfg)
    again = parse_config(text)
    assert again == with_resolved_schedule(cfg)
    assert serialize_config(again) == text


def test_sign_resolves_schedule():
    cool = parse_config("")
    assert cool.resolved_schedule == "linear"
    heat = parse_config("potential.sign = -1\nepsilon = 0.5\n")
    assert heat.resolved_schedule == "logarithmic"
    forced = parse_config("potential.sign = -1\nomega.schedule = linear\nepsilon = 0.5\n")
    assert forced.resolved_schedule == "linear"


def test_cli_usage_errors_exit_two(capsys):
    assert main([]) == 2
    assert main(["figures", "nope"]) == 2
    assert main(["bogus"]) == 2
    capsys.readouterr()


def test_cli_run_writes_verified_artifacts(tmp_path, capsys):
    out = tmp_path / "artifacts"
    code = main(["run", "--out", str(out)])
    captured = capsys.readouterr()
    assert code == 0
    assert "l2_contraction" in captured.out
    base = out / "run"
    names = sorted(p.name for p in base.iterdir())
    assert names == [
        "manifest.json", "report.json", "u0.csv",
        "u_t10_eps0.2.csv", "u_t2_eps0.2.csv", "u_t6_eps0.2.csv",
    ]
    manifest = json.loads((base / "manifest.json").read_text())
    assert [e["path"] for e in manifest] == sorted(e["path"] for e in manifest)
    for entry in manifest:
        digest = hashlib.sha256((base / entry["path"]).read_bytes()).hexdigest()
        assert digest == entry["sha256"]
    report = json.loads((base / "report.json").read_text())
    assert report["name"] == "run"
    assert all(c["verdict"] for c in report["checks"])
    assert "time.dt = 0.2" in report["config"]


def test_cli_env_var_output_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("VWH_OUTPUT_DIR", str(tmp_path / "env_out"))
    assert main(["run"]) == 0
    capsys.readouterr()
    assert (tmp_path / "env_out" / "run" / "report.json").exists()


def test_cli_flag_beats_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("VWH_OUTPUT_DIR", str(tmp_path / "env_out"))
    assert main(["run", "--out", str(tmp_path / "flag_out")]) == 0
    capsys.readouterr()
    assert (tmp_path / "flag_out" / "run" / "report.json").exists()
    assert not (tmp_path / "env_out").exists()


def test_cli_run_rejects_epsilon_list(tmp_path, capsys):
    cfg = tmp_path / "net.cfg"
    cfg.write_text("epsilon = [0.8, 0.4, 0.2]\n")
    code = main(["run", "--config", str(cfg), "--out", str(tmp_path / "o")])
    captured = capsys.readouterr()
    assert code == 1
    assert "sweep" in captured.err


def test_cli_sweep_fits_exponent(tmp_path, capsys):
    cfg = tmp_path / "net.cfg"
    cfg.write_text(
        "epsilon = [0.8, 0.4, 0.2]\ngrid.dx = 0.05\ntime.T = 2\ntime.snapshots = [2]\n"
    )
    code = main(["sweep", "--config", str(cfg), "--out", str(tmp_path / "o")])
    captured = capsys.readouterr()
    assert code == 0
    assert "potential exponent" in captured.out
    report = json.loads((tmp_path / "o" / "sweep" / "report.json").read_text())
    assert report["fitted_exponents"]["potential"] == pytest.approx(1.0, abs=0.1)
    csvs = [e["path"] for e in
            json.loads((tmp_path / "o" / "sweep" / "manifest.json").read_text())
            if e["path"].endswith(".csv")]
    assert len(csvs) == 3  # one snapshot per epsilon


def test_cli_figures_fig1_layout(tmp_path, capsys):
    code = main(["figures", "fig1", "--out", str(tmp_path)])
    captured = capsys.readouterr()
    assert code == 0
    assert "wrote 10 CSVs" in captured.out
    base = tmp_path / "fig1"
    csvs = sorted(p.relative_to(base).as_posix() for p in base.rglob("*.csv"))
    assert len(csvs) == 10
    report = json.loads((base / "report.json").read_text())
    assert sorted(report["artifacts"]) == csvs
    manifest = json.loads((base / "manifest.json").read_text())
    assert len(manifest) == 11  # 10 csvs + report.json, manifest excluded


def test_cli_figures_rerun_manifest_identical(tmp_path, capsys):
    assert main(["figures", "fig1", "--out", str(tmp_path / "a")]) == 0
    assert main(["figures", "fig1", "--out", str(tmp_path / "b")]) == 0
    capsys.readouterr()
    ma = json.loads((tmp_path / "a" / "fig1" / "manifest.json").read_text())
    mb = json.loads((tmp_path / "b" / "fig1" / "manifest.json").read_text())
    assert ma == mb


def test_config_default_serialization_lists_every_key():
    text = serialize_config(RunConfig())
    keys = [line.split("=")[0].strip() for line in text.strip().splitlines()]
    assert "domain.a" in keys and "output.dir" in keys
    assert len(keys) == len(set(keys))
    assert "omega.schedule" in keys
