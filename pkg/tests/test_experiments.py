"""Experiment runner tests: file layout, determinism, engine guards."""
import numpy as np
import pytest

from fcl.config import validate_config
from fcl.errors import ResourceLimitError
from fcl.experiments import oracle_check, run
from fcl.snapshot import load_spin, load_walk
from fcl.table import read_csv


def run_cfg(raw, experiment, out_dir, threads=1):
    return run(validate_config(raw, experiment), out_dir, threads=threads)


def test_bands_run_writes_table(tmp_path):
    raw = {
        "experiment": "bands",
        "B": 0.3,
        "J_min": 0.0,
        "J_max": 1.5,
        "J_count": 4,
        "k_count": 8,
    }
    result = run_cfg(raw, "bands", tmp_path)
    assert result.ok
    assert [p.name for p in result.paths] == ["bands_epsilon.csv"]
    table = read_csv(result.paths[0])
    assert table.columns == ("J", "k", "epsilon")
    assert len(table.rows) == 4 * 8
    assert set(table.provenance) >= {"config_sha256", "engine", "backend"}
    assert table.provenance["engine"].startswith("fcl-")


def test_winding_map_threads_deterministic(tmp_path):
    raw = {
        "experiment": "winding-map",
        "J_min": 0.0,
        "J_max": 1.5,
        "J_count": 5,
        "B_min": 0.0,
        "B_max": 1.5,
        "B_count": 5,
        "resolution": 256,
    }
    a = run_cfg(raw, "winding-map", tmp_path / "a", threads=1)
    b = run_cfg(raw, "winding-map", tmp_path / "b", threads=3)
    assert a.paths[0].read_bytes() == b.paths[0].read_bytes()
    # the identical J and B ranges put grid cells exactly on the critical
    # diagonal, where the winding is undefined and written as nan
    nu = read_csv(a.paths[0]).column("nu")
    assert any(np.isnan(v) for v in nu)
    assert any(v == 2.0 for v in nu)
    assert any(v == 0.0 for v in nu)


def test_q0_map_run(tmp_path):
    raw = {
        "experiment": "q0-map",
        "L": 64,
        "J_min": 0.0,
        "J_max": 1.5,
        "J_count": 3,
        "B_min": 0.0,
        "B_max": 1.5,
        "B_count": 3,
        "t_start": 0,
        "t_end": 10,
    }
    result = run_cfg(raw, "q0-map", tmp_path)
    table = read_csv(result.paths[0])
    assert len(table.rows) == 9
    values = table.column("q0_mean")
    assert all(0.0 <= v <= 1.0 for v in values)


def test_loschmidt_engines_agree(tmp_path):
    base = {
        "experiment": "loschmidt",
        "L": 8,
        "pairs": [[0.6, 0.2], [0.9, 1.1]],
        "steps": 12,
    }
    analytic = run_cfg(base, "loschmidt", tmp_path / "analytic")
    exact = run_cfg(
        dict(base, engine="exact", snapshot_every=6), "loschmidt", tmp_path / "exact"
    )
    for name in ("loschmidt_lambda.csv", "loschmidt_q0.csv"):
        ta = read_csv(tmp_path / "analytic" / name)
        te = read_csv(tmp_path / "exact" / name)
        assert ta.columns == te.columns
        for ra, re in zip(ta.rows, te.rows):
            for va, ve in zip(ra, re):
                assert abs(va - ve) < 1e-10
    snaps = sorted(p.name for p in (tmp_path / "exact").glob("*.fcsc"))
    assert snaps == [
        "loschmidt_J0.6_B0.2_t00006.fcsc",
        "loschmidt_J0.6_B0.2_t00012.fcsc",
        "loschmidt_J0.9_B1.1_t00006.fcsc",
        "loschmidt_J0.9_B1.1_t00012.fcsc",
    ]
    state = load_spin(tmp_path / "exact" / snaps[0])
    assert state.L == 8
    assert abs(state.norm() - 1.0) < 1e-12


def test_loschmidt_exact_size_guard(tmp_path):
    raw = {
        "experiment": "loschmidt",
        "L": 22,
        "pairs": [[0.6, 0.2]],
        "steps": 2,
        "engine": "exact",
    }
    with pytest.raises(ResourceLimitError):
        run_cfg(raw, "loschmidt", tmp_path)


def test_walk_run_tables_and_snapshots(tmp_path):
    raw = {
        "experiment": "walk",
        "L": 4,
        "J": 0.6,
        "B": 0.2,
        "J_w": 1.6,
        "theta": 0.785,
        "steps": 4,
        "observables": ["qs", "mx", "mx_sites", "peres", "pdist", "parity", "entropy_half"],
        "record_every": 2,
        "snapshot_every": 2,
        "coupling_mode": "local",
    }
    result = run_cfg(raw, "walk", tmp_path)
    names = {p.name for p in result.paths}
    assert names == {
        "walk_qs.csv",
        "walk_mx.csv",
        "walk_mx_sites.csv",
        "walk_peres.csv",
        "walk_pdist.csv",
        "walk_parity.csv",
        "walk_entropy_half.csv",
    }
    qs = read_csv(tmp_path / "walk_qs.csv")
    assert qs.column("t") == [0.0, 2.0, 4.0]
    pdist = read_csv(tmp_path / "walk_pdist.csv")
    assert len(pdist.rows) == 3 * 4
    for t in (0, 2, 4):
        p = [row[2] for row in pdist.rows if row[0] == t]
        assert abs(sum(p) - 1.0) < 1e-12
    parity = read_csv(tmp_path / "walk_parity.csv")
    for row in parity.rows:
        assert abs(row[1] - 1.0) < 1e-12 and abs(row[2] - 1.0) < 1e-12
    snap = load_walk(tmp_path / "walk_state_t00002.fcqw")
    assert snap.L == 4 and abs(snap.norm() - 1.0) < 1e-12


def test_negativity_run_and_guard(tmp_path):
    raw = {
        "experiment": "negativity-sweep",
        "L": 6,
        "J": 0.03,
        "B": 0.01,
        "J_w": 1.6,
        "theta_values": [0.785],
        "steps": 6,
        "subset_a": [0, 1],
        "subset_b": [3, 4],
        "average_last": 3,
        "coupling_mode": "local",
    }
    result = run_cfg(raw, "negativity-sweep", tmp_path)
    table = read_csv(result.paths[0])
    assert table.columns == ("theta", "n_final", "n_mean_last")
    assert len(table.rows) == 1
    assert all(v >= 0.0 for v in table.rows[0][1:])
    big = dict(raw, L=8, subset_a=[0, 1, 2, 3], subset_b=[4, 5, 6])
    with pytest.raises(ResourceLimitError):
        run_cfg(big, "negativity-sweep", tmp_path)


def test_oracle_check_rows():
    empty = oracle_check(seed=1, trials=0, L_max=8)
    assert empty.rows == []
    report = oracle_check(seed=7, trials=1, L_max=6, steps=6)
    assert [row[0] for row in report.rows] == [
        "q0_cross_engine",
        "loschmidt_cross_engine",
        "magnetization_mode_sum",
        "wrong_exponent_fails",
        "dense_floquet_step",
    ]
    assert all(row[-1] for row in report.rows)
