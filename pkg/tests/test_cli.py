import csv
import io
import json
import math

import pytest

from cavityswitch.cli import main


def parse_kv(text):
    return dict(line.split("=", 1) for line in text.strip().splitlines() if "=" in line)


def test_point_switch(capsys):
    assert main(["point", "--preset", "fig2a", "--k", "2.0944"]) == 0
    out = parse_kv(capsys.readouterr().out)
    assert f"{float(out['T']):.6f}" == "1.000000"
    assert out["branch"] == "Generic"


def test_point_two_level_reflects(capsys):
    args = ["point", "--omega-a", "0", "--omega-b", "2", "--omega-2", "2", "--omega-3", "4", "--xi", "2", "--n", "0"]
    assert main(args + ["--k", str(2 * math.pi / 3)]) == 0
    out = parse_kv(capsys.readouterr().out)
    assert f"{float(out['R']):.6f}" == "1.000000"
    assert out["branch"] == "TwoLevelN0"


def test_point_prints_twelve_digits(capsys):
    main(["point", "--preset", "fig3a", "--k", "0.7"])
    out = parse_kv(capsys.readouterr().out)
    assert out["k"] == "0.7"
    digits = out["T"].split("e")[0].replace(".", "").lstrip("0")
    assert len(digits) <= 12


def test_point_band_edge(capsys):
    assert main(["point", "--preset", "fig2a", "--k", "0"]) == 2
    assert "BandEdge" in capsys.readouterr().err


def test_point_degenerate_band_edge(capsys):
    args = ["point", "--omega-a", "0", "--omega-b", "1", "--omega-2", "-2", "--omega-3", "-1", "--xi", "1"]
    assert main(args + ["--n", "1", "--g-b", "1", "--k", "0"]) == 2
    assert "DegenerateBandEdge" in capsys.readouterr().err


def test_point_invalid_parameters(capsys):
    assert main(["point", "--preset", "fig2a", "--xi", "-1", "--k", "1"]) == 1
    assert "xi" in capsys.readouterr().err


def test_point_missing_parameters(capsys):
    assert main(["point", "--k", "1"]) == 1
    assert "--omega-a" in capsys.readouterr().err


def test_unknown_flag_rejected(capsys):
    assert_exit(["point", "--preset", "fig2a", "--gamma", "1"], 1)


def assert_exit(argv, code):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == code


def test_rwa_warning(capsys):
    main(["point", "--preset", "fig2b", "--k", "1"])
    assert "rotating-wave" in capsys.readouterr().err


def test_delta_b_flag(capsys):
    main(["point", "--preset", "fig2a", "--delta-b", "-3", "--k", "1"])
    assert float(parse_kv(capsys.readouterr().out)["delta_b"]) == -3


def test_sweep_preset_csv(tmp_path, capsys):
    path = tmp_path / "fig2e.csv"
    assert main(["sweep", "--preset", "fig2e", "-o", str(path)]) == 0
    rows = list(csv.DictReader(path.open()))
    assert len(rows) == 1001
    assert min(float(r["T"]) for r in rows) < 1e-3
    summary = capsys.readouterr().out
    assert "rows=1001" in summary and "full_reflection=[-2.09439510239, 2.09439510239]" in summary


def test_sweep_oracle_check_to_stdout(capsys, monkeypatch):
    monkeypatch.setenv("WQED_THREADS", "2")
    assert main(["sweep", "--preset", "fig3c", "--oracle-check", "--m", "51"]) == 0
    captured = capsys.readouterr()
    rows = list(csv.DictReader(io.StringIO(captured.out)))
    assert len(rows) == 51
    assert max(float(r["dr_abs"]) for r in rows) < 1e-10
    assert max(float(r["dt_abs"]) for r in rows) < 1e-10
    assert "max_dr=" in captured.err


def test_sweep_svg(tmp_path):
    base = tmp_path / "fig3a"
    assert main(["sweep", "--preset", "fig3a", "--m", "101", "--format", "both", "-o", str(base) + ".csv"]) == 0
    svg = (tmp_path / "fig3a.svg").read_text()
    assert svg.startswith("<svg") and svg.count("<polyline") >= 2
    assert (tmp_path / "fig3a.csv").exists()


def test_sweep_svg_needs_output(capsys):
    assert main(["sweep", "--preset", "fig3a", "--m", "11", "--format", "svg"]) == 1


def test_sweep_empty_range(capsys):
    assert main(["sweep", "--preset", "fig2a", "--axis", "k", "--lo", "0", "--hi", "0"]) == 1
    assert "lo < hi" in capsys.readouterr().err


def test_sweep_unwritable(tmp_path, capsys):
    target = tmp_path / "missing" / "out.csv"
    assert main(["sweep", "--preset", "fig2a", "--m", "3", "-o", str(target)]) == 2


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({
        "omega_a": 0, "omega_b": 2, "omega_2": 2, "omega_3": 4, "xi": 2, "g_b": 1, "n": 1,
        "axis": "k", "lo": 1, "hi": 2, "m": 5,
    }))
    assert main(["sweep", "--config", str(cfg)]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [float(r["axis_value"]) for r in rows] == [1, 1.25, 1.5, 1.75, 2]
    # flags win over the file
    assert main(["sweep", "--config", str(cfg), "--m", "3", "--n", "0"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 3 and rows[0]["branch"] == "TwoLevelN0"


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"omega_a": 0, "gamma": 1}))
    assert main(["point", "--config", str(cfg), "--k", "1"]) == 1
    assert "gamma" in capsys.readouterr().err


def test_oracle_stationary(capsys):
    assert main(["oracle-stationary", "--preset", "fig3a", "--k", str(math.pi / 4)]) == 0
    out = parse_kv(capsys.readouterr().out)
    assert float(out["dr_abs"]) < 1e-10 and float(out["dt_abs"]) < 1e-10


def test_oracle_wavepacket(tmp_path, capsys):
    record = tmp_path / "run.csv"
    argv = ["oracle-wavepacket", "--preset", "fig3a", "--k0", str(math.pi / 4), "--sigma", "8",
            "--chain-length", "401", "--csv", str(record)]
    assert main(argv) == 0
    out = parse_kv(capsys.readouterr().out)
    assert abs(float(out["T_measured"]) - float(out["T_closed"])) < 0.03
    assert float(out["norm_drift"]) < 1e-8
    assert record.read_text().startswith("time,norm,P_left")


def test_oracle_wavepacket_decoupled(capsys):
    argv = ["oracle-wavepacket", "--preset", "fig2e", "--k0", "2.0944", "--sigma", "8", "--chain-length", "401",
            "--decouple"]
    assert main(argv) == 0
    assert float(parse_kv(capsys.readouterr().out)["T_measured"]) == pytest.approx(1.0, abs=1e-6)


def test_oracle_wavepacket_bad_sigma(capsys):
    assert main(["oracle-wavepacket", "--preset", "fig2a", "--k0", "2", "--sigma", "3"]) == 1


SMALL_VERIFY = ["--unitarity", "2000", "--dressed", "500", "--conditions", "200", "--stationary", "10"]


def test_verify_deterministic(capsys):
    assert main(["verify", "--seed", "7", *SMALL_VERIFY]) == 0
    first = capsys.readouterr().out
    assert main(["verify", "--seed", "7", *SMALL_VERIFY]) == 0
    assert capsys.readouterr().out == first
    assert "unitarity" in first and "stationary" in first and "FAIL" not in first


def test_verify_timings_flag(capsys):
    assert main(["verify", "--timings", "--unitarity", "100", "--dressed", "10", "--conditions", "10",
                 "--stationary", "2"]) == 0
    assert "s)" in capsys.readouterr().out


def test_version(capsys):
    assert_exit(["--version"], 0)
