"""Config loading, validation, and canonical hashing tests."""
import json

import pytest

from fcl.config import EXPERIMENTS, load_config, validate_config
from fcl.errors import ConfigError


def walk_raw(**overrides):
    raw = {
        "experiment": "walk",
        "L": 8,
        "J": 0.03,
        "B": 0.01,
        "J_w": 1.6,
        "theta": 0.785,
        "steps": 10,
    }
    raw.update(overrides)
    return raw


def test_walk_defaults_filled():
    cfg = validate_config(walk_raw(), "walk")
    assert cfg.experiment == "walk"
    assert cfg.options["x0"] == 4
    assert cfg.options["c0"] == 0
    assert cfg.options["coupling_mode"] == "global"
    assert cfg.options["observables"] == ("qs", "mx", "peres")
    assert cfg.options["record_every"] == 1
    assert len(cfg.config_hash) == 16


def test_walk_rejections():
    with pytest.raises(ConfigError):
        validate_config(walk_raw(L=7), "walk")
    with pytest.raises(ConfigError):
        validate_config(walk_raw(L=18), "walk")
    with pytest.raises(ConfigError):
        validate_config(walk_raw(J=True), "walk")
    with pytest.raises(ConfigError):
        validate_config(walk_raw(observables=["qs", "banana"]), "walk")
    with pytest.raises(ConfigError):
        validate_config(walk_raw(coupling_mode="nonlocal"), "walk")
    with pytest.raises(ConfigError):
        validate_config(walk_raw(x0=8), "walk")
    missing = walk_raw()
    del missing["J_w"]
    with pytest.raises(ConfigError):
        validate_config(missing, "walk")


def test_experiment_name_checks():
    with pytest.raises(ConfigError):
        validate_config(walk_raw(), "diffusion")
    with pytest.raises(ConfigError):
        validate_config(walk_raw(experiment="bands"), "walk")
    with pytest.raises(ConfigError):
        validate_config([1, 2], "walk")
    with pytest.raises(ConfigError):
        validate_config(walk_raw(output_dir=7), "walk")
    assert set(EXPERIMENTS) >= {"bands", "walk", "loschmidt", "oracle-check"}


def test_range_specs():
    raw = {
        "experiment": "winding-map",
        "J_min": 0.0,
        "J_max": 1.5,
        "J_count": 10,
        "B_min": 0.0,
        "B_max": 1.5,
        "B_count": 10,
    }
    cfg = validate_config(raw, "winding-map")
    assert cfg.options["J_values"] == (0.0, 1.5, 10)
    assert cfg.options["resolution"] == 2048
    bad = dict(raw, J_max=-1.0)
    with pytest.raises(ConfigError):
        validate_config(bad, "winding-map")
    with pytest.raises(ConfigError):
        validate_config(dict(raw, resolution=8), "winding-map")


def test_q0_map_window():
    raw = {
        "experiment": "q0-map",
        "L": 200,
        "J_min": 0.0,
        "J_max": 1.5,
        "J_count": 4,
        "B_min": 0.0,
        "B_max": 1.5,
        "B_count": 4,
        "t_start": 10,
        "t_end": 5,
    }
    with pytest.raises(ConfigError):
        validate_config(raw, "q0-map")
    raw["t_end"] = 20
    assert validate_config(raw, "q0-map").options["t_window"] == (10, 20)


def test_loschmidt_rules():
    raw = {
        "experiment": "loschmidt",
        "L": 600,
        "pairs": [[0.03, 0.01], [0.01, 0.03]],
        "steps": 50,
    }
    cfg = validate_config(raw, "loschmidt")
    assert cfg.options["engine"] == "analytic"
    assert cfg.options["pairs"] == ((0.03, 0.01), (0.01, 0.03))
    with pytest.raises(ConfigError):
        validate_config(dict(raw, pairs=[[0.1]]), "loschmidt")
    with pytest.raises(ConfigError):
        validate_config(dict(raw, engine="magic"), "loschmidt")
    # snapshots are full state vectors, so they need the exact engine
    with pytest.raises(ConfigError):
        validate_config(dict(raw, snapshot_every=5), "loschmidt")
    ok = validate_config(dict(raw, engine="exact", L=8, snapshot_every=5), "loschmidt")
    assert ok.options["snapshot_every"] == 5


def test_negativity_rules():
    raw = {
        "experiment": "negativity-sweep",
        "L": 10,
        "J": 0.2,
        "B": 0.6,
        "J_w": 1.6,
        "theta_values": [0.785, 1.6],
        "steps": 20,
    }
    cfg = validate_config(raw, "negativity-sweep")
    assert cfg.options["subset_a"] == (0, 1, 2)
    assert cfg.options["subset_b"] == (3, 4, 5)
    assert cfg.options["average_last"] == 20
    with pytest.raises(ConfigError):
        validate_config(dict(raw, subset_a=[0, 1], subset_b=[1, 2]), "negativity-sweep")
    with pytest.raises(ConfigError):
        validate_config(dict(raw, subset_a=[0, 0, 1]), "negativity-sweep")
    with pytest.raises(ConfigError):
        validate_config(dict(raw, theta_values=[]), "negativity-sweep")


def test_oracle_check_defaults():
    cfg = validate_config({"experiment": "oracle-check", "trials": 3, "L_max": 8}, "oracle-check")
    assert cfg.options == {"seed": 1, "trials": 3, "L_max": 8, "steps": 30}
    with pytest.raises(ConfigError):
        validate_config({"experiment": "oracle-check", "trials": -1, "L_max": 8}, "oracle-check")


def test_hash_is_canonical():
    a = validate_config(walk_raw(), "walk").config_hash
    reordered = dict(reversed(list(walk_raw().items())))
    b = validate_config(reordered, "walk").config_hash
    assert a == b
    c = validate_config(walk_raw(steps=11), "walk").config_hash
    assert a != c


def test_load_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json", "walk")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(bad, "walk")
    good = tmp_path / "good.json"
    good.write_text(json.dumps(walk_raw()))
    assert load_config(good, "walk").options["steps"] == 10
