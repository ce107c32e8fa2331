import json
import re

import pytest

from dbbdirac.cli import (EXIT_DOMAIN, EXIT_USAGE, RunConfig,
                          main, parse_args, parse_half_integer)

PKT = ["--j", "5/2", "--p0", "1e-4", "--sigma", "1e-7"]


def test_parse_half_integer_forms():
    assert parse_half_integer("5/2") == 5
    assert parse_half_integer("2.5") == 5
    assert parse_half_integer("1/2") == 1
    assert parse_half_integer("0.5") == 1
    assert parse_half_integer("99/2") == 99
    import argparse
    for bad in ("1", "2.0", "3/4", "abc", "1/0"):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_half_integer(bad)


def test_runconfig_json_round_trip():
    cfg = parse_args(["trajectory", *PKT, "--t-end", "0.01"])
    clone = RunConfig.from_json(cfg.to_json())
    assert clone == cfg
    assert clone.params["two_j"] == 5


def test_config_file_merge_flags_win(tmp_path):
    cfg_file = tmp_path / "run.json"
    cfg_file.write_text(json.dumps({
        "command": "trajectory",
        "params": {"two_j": 5, "p0": 1e-4, "sigma": 1e-7,
                   "t_end": 0.02, "tol": 1e-6},
    }))
    cfg = parse_args(["--config", str(cfg_file), "trajectory",
                      "--t-end", "0.01"])
    assert cfg.params["t_end"] == 0.01      # explicit flag wins
    assert cfg.params["tol"] == 1e-6        # config value survives
    assert cfg.params["two_j"] == 5


def test_usage_errors_exit_2(capsys):
    assert main(["bogus-command"]) == EXIT_USAGE
    assert main(["trajectory", "--t-end", "notanumber"]) == EXIT_USAGE
    assert main(["trajectory"]) == EXIT_USAGE  # missing required --t-end
    capsys.readouterr()


def test_domain_errors_exit_3(tmp_path, capsys):
    # missing packet parameters surface as a domain failure, not a traceback
    code = main(["trajectory", "--j", "5/2", "--p0", "1e-4",
                 "--t-end", "0.01", "--out", str(tmp_path)])
    assert code == EXIT_DOMAIN
    err = capsys.readouterr().err
    assert "domain" in err


def test_stationary_output(tmp_path, capsys):
    code = main(["stationary", "--j", "5/2", "--p0", "1e-4",
                 "--r-max", "30", "--n-r", "50", "--out", str(tmp_path)])
    assert code == 0
    text = (tmp_path / "stationary.csv").read_bytes().decode()
    assert "\r" not in text
    lines = text.strip().split("\n")
    assert lines[0] == "r,rho,v_phi_over_c"
    assert len(lines) == 51
    capsys.readouterr()


def test_csv_precision_full_round_trip(tmp_path, capsys):
    main(["field", *PKT, "--r-min", "20", "--r-max", "25", "--n-r", "4",
          "--t-list", "0.001", "--out", str(tmp_path)])
    lines = (tmp_path / "field.csv").read_text().strip().split("\n")
    # 17 significant digits: re-formatting the parsed value is idempotent,
    # so no precision was lost in printing
    for token in lines[1].split(","):
        assert "%.17g" % float(token) == token
    # a density value genuinely needs the digits (not a short decimal)
    assert re.search(r"\d{10,}", lines[1].split(",")[2])
    capsys.readouterr()


def test_observables_report_deterministic(tmp_path, capsys):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["observables", *PKT, "--out", str(out1)]) == 0
    assert main(["observables", *PKT, "--out", str(out2)]) == 0
    b1 = (out1 / "report.json").read_bytes()
    b2 = (out2 / "report.json").read_bytes()
    assert b1 == b2
    payload = json.loads(b1)
    assert list(payload) == sorted(payload)   # stable key order
    assert payload["mean_E_meV"] == pytest.approx(100.0001, abs=1e-3)
    capsys.readouterr()


def test_trajectory_command(tmp_path, capsys):
    code = main(["trajectory", *PKT, "--t-end", "0.002", "--r0", "22.7",
                 "--n-samples", "200", "--out", str(tmp_path)])
    assert code == 0
    lines = (tmp_path / "trajectory.csv").read_text().strip().split("\n")
    assert lines[0] == "t,r,phi,x,y,v_r,v_phi,speed"
    assert len(lines) == 201
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["n_loops"] > 0
    assert report["stalled"] is False
    capsys.readouterr()


def test_ensemble_command(tmp_path, capsys):
    code = main(["ensemble", *PKT, "--r0-list", "20,22.7,25",
                 "--t-end", "0.001", "--threads", "2", "--out", str(tmp_path)])
    assert code == 0
    lines = (tmp_path / "ensemble.csv").read_text().strip().split("\n")
    assert lines[0] == "r0,weight,n_loops,tau_obs,final_r,final_speed"
    assert len(lines) == 4
    capsys.readouterr()


def test_threads_env_fallback(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("DBB_THREADS", "2")
    code = main(["ensemble", *PKT, "--r0-list", "20,25",
                 "--t-end", "0.0005", "--out", str(tmp_path)])
    assert code == 0
    capsys.readouterr()


def test_tables_command_table1(tmp_path, capsys):
    code = main(["tables", "--table", "1", "--out", str(tmp_path)])
    assert code == 0
    text = (tmp_path / "table1.txt").read_text()
    assert text.count("[PASS]") == 9
    assert "[FAIL]" not in text
    capsys.readouterr()
