import json

from rgglab.cli import main


def test_cli_runs_connectivity_sweep(tmp_path, capsys):
    out = tmp_path / "conn.csv"
    code = main(
        [
            "connectivity",
            "--n-values",
            "200",
            "--dims",
            "2",
            "--trials",
            "2",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    text = out.read_text()
    lines = text.splitlines()
    assert lines[0].startswith("experiment,d,n,gamma,model,")
    assert len(lines) == 3
    assert "row" in capsys.readouterr().out


def test_cli_config_file_with_overrides(tmp_path):
    cfg = tmp_path / "spec.json"
    cfg.write_text(
        json.dumps({"kind": "connectivity", "dims": [2], "n_values": [150], "trials": 1})
    )
    out = tmp_path / "c.csv"
    code = main(["connectivity", "--config", str(cfg), "--trials", "3", "--out", str(out)])
    assert code == 0
    assert len(out.read_text().splitlines()) == 4


def test_cli_rejects_mismatched_config_kind(tmp_path, capsys):
    cfg = tmp_path / "spec.json"
    cfg.write_text(json.dumps({"kind": "stretch"}))
    code = main(["connectivity", "--config", str(cfg)])
    assert code == 2
    assert "kind" in capsys.readouterr().err.lower()


def test_cli_planner_routes_timing_to_sidecar(tmp_path):
    out = tmp_path / "plan.csv"
    args = [
        "planner",
        "--n-values",
        "300",
        "--dims",
        "2",
        "--trials",
        "1",
        "--out",
        str(out),
    ]
    assert main(args) == 0
    main_text = out.read_text()
    assert "seconds" not in main_text
    side = tmp_path / "plan.timings.csv"
    side_text = side.read_text()
    assert "build_seconds" in side_text and "query_seconds" in side_text
    # the main file replays byte for byte; the sidecar need not
    assert main(args) == 0
    assert out.read_text() == main_text


def test_cli_default_output_name(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code = main(["calibrate", "--n-values", "200", "--dims", "2", "--trials", "1"])
    assert code == 0
    assert (tmp_path / "calibrate.csv").exists()
