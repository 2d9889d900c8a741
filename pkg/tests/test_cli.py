"""Command line interface tests: exit codes, outputs, SVG rendering."""
import json

import pytest

import fcl.experiments
from fcl.cli import main
from fcl.table import ResultTable


def write_config(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


BANDS = {
    "experiment": "bands",
    "B": 0.3,
    "J_min": 0.0,
    "J_max": 1.5,
    "J_count": 3,
    "k_count": 5,
}


def test_success_exit_zero(tmp_path, capsys):
    cfg = write_config(tmp_path, "bands.json", BANDS)
    rc = main(["bands", "--config", cfg, "--out", str(tmp_path / "out")])
    assert rc == 0
    out = capsys.readouterr().out
    assert "wrote" in out and "bands_epsilon.csv" in out
    assert (tmp_path / "out" / "bands_epsilon.csv").exists()


def test_output_dir_from_config(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    cfg = write_config(tmp_path, "bands.json", dict(BANDS, output_dir="nested/run1"))
    rc = main(["bands", "--config", cfg])
    assert rc == 0
    assert (tmp_path / "nested" / "run1" / "bands_epsilon.csv").exists()


def test_invalid_config_exit_two(tmp_path, capsys):
    broken = dict(BANDS)
    del broken["B"]
    cfg = write_config(tmp_path, "broken.json", broken)
    assert main(["bands", "--config", cfg]) == 2
    assert "invalid config" in capsys.readouterr().err
    assert main(["bands", "--config", str(tmp_path / "missing.json")]) == 2
    mismatched = write_config(tmp_path, "walk.json", dict(BANDS, experiment="walk"))
    assert main(["bands", "--config", mismatched]) == 2


def test_bad_arguments_exit_two(tmp_path):
    cfg = write_config(tmp_path, "bands.json", BANDS)
    with pytest.raises(SystemExit) as exc:
        main(["diffusion", "--config", cfg])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["bands", "--config", cfg, "--threads", "0"])
    assert exc.value.code == 2


def test_resource_guard_exit_three(tmp_path, capsys):
    cfg = write_config(
        tmp_path,
        "big.json",
        {
            "experiment": "loschmidt",
            "L": 22,
            "pairs": [[0.6, 0.2]],
            "steps": 2,
            "engine": "exact",
        },
    )
    assert main(["loschmidt", "--config", cfg, "--out", str(tmp_path)]) == 3
    assert "refusing to run" in capsys.readouterr().err


def test_oracle_failure_exit_four(tmp_path, capsys, monkeypatch):
    def fake_runner(opt, out_dir, threads):
        return [
            ResultTable(
                name="oracle-check_report",
                columns=("identity", "max_abs_error", "tolerance", "requirement", "passed"),
                rows=[("q0_cross_engine", 0.5, 1e-10, "below", False)],
            )
        ]

    monkeypatch.setitem(fcl.experiments._RUNNERS, "oracle-check", fake_runner)
    cfg = write_config(
        tmp_path, "oracle.json", {"experiment": "oracle-check", "trials": 1, "L_max": 4}
    )
    rc = main(["oracle-check", "--config", cfg, "--out", str(tmp_path)])
    assert rc == 4
    assert "FAIL q0_cross_engine" in capsys.readouterr().out


def test_oracle_pass_prints_report(tmp_path, capsys):
    cfg = write_config(
        tmp_path,
        "oracle.json",
        {"experiment": "oracle-check", "trials": 1, "L_max": 4, "steps": 5},
    )
    rc = main(["oracle-check", "--config", cfg, "--out", str(tmp_path)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "PASS q0_cross_engine" in out
    assert "PASS wrong_exponent_fails" in out


def test_svg_rendering(tmp_path, capsys):
    pytest.importorskip("matplotlib")
    cfg = write_config(tmp_path, "bands.json", BANDS)
    rc = main(["bands", "--config", cfg, "--out", str(tmp_path / "out"), "--svg"])
    assert rc == 0
    assert (tmp_path / "out" / "bands_epsilon.svg").exists()
    assert "bands_epsilon.svg" in capsys.readouterr().out
