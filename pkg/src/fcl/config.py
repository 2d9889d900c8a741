"""JSON experiment configs: loading, validation, canonical hashing.

One JSON object per run. Angles are radians, times are integer Floquet
periods. Validation failures raise ConfigError (CLI exit 2); limits that
guard memory or runtime are enforced later by the experiments themselves
(CLI exit 3). The canonical sha256 of the config is stamped into every
output table so results can be traced back to their inputs.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError

EXPERIMENTS = (
    "bands",
    "winding-map",
    "q0-map",
    "loschmidt",
    "walk",
    "negativity-sweep",
    "oracle-check",
)

WALK_OBSERVABLES = ("qs", "mx", "mx_sites", "peres", "pdist", "parity", "entropy_half")


@dataclass(frozen=True)
class ExperimentConfig:
    """A validated experiment request: name, normalized options, provenance hash."""

    experiment: str
    options: dict = field(repr=False)
    config_hash: str
    output_dir: str | None = None


def _num(raw: dict, key: str, lo=None, hi=None) -> float:
    if key not in raw:
        raise ConfigError(f"missing required key {key!r}")
    v = raw[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{key} must be a number, got {v!r}")
    v = float(v)
    if lo is not None and v < lo:
        raise ConfigError(f"{key}={v} below minimum {lo}")
    if hi is not None and v > hi:
        raise ConfigError(f"{key}={v} above maximum {hi}")
    return v


def _int(raw: dict, key: str, lo=None, hi=None, default=None) -> int:
    if key not in raw:
        if default is None:
            raise ConfigError(f"missing required key {key!r}")
        return default
    v = raw[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{key} must be an integer, got {v!r}")
    if lo is not None and v < lo:
        raise ConfigError(f"{key}={v} below minimum {lo}")
    if hi is not None and v > hi:
        raise ConfigError(f"{key}={v} above maximum {hi}")
    return v


def _even_L(raw: dict, key: str = "L", lo: int = 4, hi: int = 24) -> int:
    L = _int(raw, key, lo=lo, hi=hi)
    if L % 2:
        raise ConfigError(f"{key}={L} must be even")
    return L


def _range_spec(raw: dict, prefix: str) -> tuple[float, float, int]:
    lo = _num(raw, f"{prefix}_min")
    hi = _num(raw, f"{prefix}_max")
    n = _int(raw, f"{prefix}_count", lo=1)
    if hi <= lo:
        raise ConfigError(f"{prefix}_max={hi} must exceed {prefix}_min={lo}")
    return lo, hi, n


def _sites(raw: dict, key: str, L: int, default: list[int]) -> tuple[int, ...]:
    v = raw.get(key, default)
    if not isinstance(v, list) or not v or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in v
    ):
        raise ConfigError(f"{key} must be a nonempty list of site indices")
    if len(set(v)) != len(v) or not all(0 <= x < L for x in v):
        raise ConfigError(f"{key}={v} must be distinct sites in [0, {L})")
    return tuple(v)


def _validate_bands(raw: dict) -> dict:
    j_lo, j_hi, j_n = _range_spec(raw, "J")
    return {
        "B": _num(raw, "B"),
        "J_values": (j_lo, j_hi, j_n),
        "k_count": _int(raw, "k_count", lo=2),
    }


def _validate_winding_map(raw: dict) -> dict:
    return {
        "J_values": _range_spec(raw, "J"),
        "B_values": _range_spec(raw, "B"),
        "resolution": _int(raw, "resolution", lo=64, default=2048),
    }


def _validate_q0_map(raw: dict) -> dict:
    t_start = _int(raw, "t_start", lo=0)
    t_end = _int(raw, "t_end", lo=1)
    if t_end <= t_start:
        raise ConfigError(f"t_end={t_end} must exceed t_start={t_start}")
    return {
        "L": _even_L(raw, hi=100000),
        "J_values": _range_spec(raw, "J"),
        "B_values": _range_spec(raw, "B"),
        "t_window": (t_start, t_end),
    }


def _validate_loschmidt(raw: dict) -> dict:
    pairs = raw.get("pairs")
    if not isinstance(pairs, list) or not pairs:
        raise ConfigError("pairs must be a nonempty list of [J, B] pairs")
    clean = []
    for p in pairs:
        if not (isinstance(p, list) and len(p) == 2
                and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in p)):
            raise ConfigError(f"bad (J, B) pair {p!r}")
        clean.append((float(p[0]), float(p[1])))
    engine = raw.get("engine", "analytic")
    if engine not in ("analytic", "exact"):
        raise ConfigError(f"engine must be 'analytic' or 'exact', got {engine!r}")
    snap = _int(raw, "snapshot_every", lo=0, default=0)
    if snap and engine != "exact":
        raise ConfigError("snapshot_every needs engine='exact' (snapshots are state vectors)")
    return {
        "L": _even_L(raw, hi=100000),
        "pairs": tuple(clean),
        "steps": _int(raw, "steps", lo=1),
        "engine": engine,
        "snapshot_every": snap,
    }


def _validate_walk(raw: dict) -> dict:
    L = _even_L(raw, hi=16)
    obs = raw.get("observables", ["qs", "mx", "peres"])
    if not isinstance(obs, list) or not obs:
        raise ConfigError("observables must be a nonempty list of names")
    for name in obs:
        if name not in WALK_OBSERVABLES:
            raise ConfigError(f"unknown observable {name!r}; choose from {WALK_OBSERVABLES}")
    mode = raw.get("coupling_mode", "global")
    if mode not in ("global", "local"):
        raise ConfigError(f"coupling_mode must be 'global' or 'local', got {mode!r}")
    c0 = _int(raw, "c0", lo=0, hi=1, default=0)
    return {
        "L": L,
        "J": _num(raw, "J"),
        "B": _num(raw, "B"),
        "J_w": _num(raw, "J_w"),
        "theta": _num(raw, "theta"),
        "steps": _int(raw, "steps", lo=1),
        "coupling_mode": mode,
        "x0": _int(raw, "x0", lo=0, hi=L - 1, default=L // 2),
        "c0": c0,
        "observables": tuple(dict.fromkeys(obs)),
        "record_every": _int(raw, "record_every", lo=1, default=1),
        "snapshot_every": _int(raw, "snapshot_every", lo=0, default=0),
    }


def _validate_negativity_sweep(raw: dict) -> dict:
    L = _even_L(raw, hi=16)
    thetas = raw.get("theta_values")
    if not isinstance(thetas, list) or not thetas or not all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in thetas
    ):
        raise ConfigError("theta_values must be a nonempty list of angles")
    steps = _int(raw, "steps", lo=1)
    a = _sites(raw, "subset_a", L, [0, 1, 2])
    b = _sites(raw, "subset_b", L, [3, 4, 5])
    if set(a) & set(b):
        raise ConfigError("subset_a and subset_b must be disjoint")
    mode = raw.get("coupling_mode", "global")
    if mode not in ("global", "local"):
        raise ConfigError(f"coupling_mode must be 'global' or 'local', got {mode!r}")
    return {
        "L": L,
        "J": _num(raw, "J"),
        "B": _num(raw, "B"),
        "J_w": _num(raw, "J_w"),
        "theta_values": tuple(float(x) for x in thetas),
        "steps": steps,
        "subset_a": a,
        "subset_b": b,
        "coupling_mode": mode,
        "x0": _int(raw, "x0", lo=0, hi=L - 1, default=L // 2),
        "c0": _int(raw, "c0", lo=0, hi=1, default=0),
        "average_last": _int(raw, "average_last", lo=1, default=min(50, steps)),
    }


def _validate_oracle_check(raw: dict) -> dict:
    return {
        "seed": _int(raw, "seed", default=1),
        "trials": _int(raw, "trials", lo=0),
        "L_max": _even_L(raw, "L_max", lo=4, hi=12),
        "steps": _int(raw, "steps", lo=1, default=30),
    }


_VALIDATORS = {
    "bands": _validate_bands,
    "winding-map": _validate_winding_map,
    "q0-map": _validate_q0_map,
    "loschmidt": _validate_loschmidt,
    "walk": _validate_walk,
    "negativity-sweep": _validate_negativity_sweep,
    "oracle-check": _validate_oracle_check,
}


def validate_config(raw: dict, experiment: str) -> ExperimentConfig:
    """Check a raw config dict against one experiment's schema."""
    if experiment not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment {experiment!r}; choose from {EXPERIMENTS}")
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    named = raw.get("experiment", experiment)
    if named != experiment:
        raise ConfigError(f"config names experiment {named!r} but {experiment!r} was requested")
    out_dir = raw.get("output_dir")
    if out_dir is not None and not isinstance(out_dir, str):
        raise ConfigError(f"output_dir must be a string path, got {out_dir!r}")
    options = _VALIDATORS[experiment](raw)
    canonical = json.dumps(raw, sort_keys=True, separators=(",", ":"))
    digest = hashlib.sha256(canonical.encode()).hexdigest()[:16]
    return ExperimentConfig(
        experiment=experiment, options=options, config_hash=digest, output_dir=out_dir
    )


def load_config(path: str | Path, experiment: str) -> ExperimentConfig:
    """Read and validate a JSON config file for the given experiment."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})")
    return validate_config(raw, experiment)
