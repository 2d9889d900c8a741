"""Binary state snapshots.

Spin format:  magic "FCSC", version u32, L u32, then 2^L little-endian
complex doubles (re, im). Walk format: magic "FCQW", version u32, L u32,
x-block count u32, coin count u32, then L * 2 * 2^L complex doubles.
All header integers are little-endian.
"""
from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import InvalidStateError
from .spin import SpinState
from .walk import WalkState

SNAPSHOT_VERSION = 1

_SPIN_MAGIC = b"FCSC"
_WALK_MAGIC = b"FCQW"


def save_spin(state: SpinState, path: str | Path) -> None:
    """Write a spin state snapshot."""
    header = _SPIN_MAGIC + struct.pack("<II", SNAPSHOT_VERSION, state.L)
    Path(path).write_bytes(header + state.amps.astype("<c16").tobytes())


def load_spin(path: str | Path) -> SpinState:
    """Read a spin state snapshot."""
    raw = Path(path).read_bytes()
    if raw[:4] != _SPIN_MAGIC:
        raise InvalidStateError(f"{path}: not a spin snapshot (bad magic)")
    version, L = struct.unpack_from("<II", raw, 4)
    if version != SNAPSHOT_VERSION:
        raise InvalidStateError(f"{path}: unsupported snapshot version {version}")
    amps = np.frombuffer(raw, dtype="<c16", offset=12)
    if amps.size != 1 << L:
        raise InvalidStateError(f"{path}: expected {1 << L} amplitudes, got {amps.size}")
    return SpinState(L=L, amps=amps.astype(np.complex128))


def save_walk(state: WalkState, path: str | Path) -> None:
    """Write a walk state snapshot."""
    header = _WALK_MAGIC + struct.pack("<IIII", SNAPSHOT_VERSION, state.L, state.L, 2)
    Path(path).write_bytes(header + state.amps.astype("<c16").tobytes())


def load_walk(path: str | Path) -> WalkState:
    """Read a walk state snapshot."""
    raw = Path(path).read_bytes()
    if raw[:4] != _WALK_MAGIC:
        raise InvalidStateError(f"{path}: not a walk snapshot (bad magic)")
    version, L, nblocks, ncoin = struct.unpack_from("<IIII", raw, 4)
    if version != SNAPSHOT_VERSION:
        raise InvalidStateError(f"{path}: unsupported snapshot version {version}")
    if nblocks != L or ncoin != 2:
        raise InvalidStateError(f"{path}: inconsistent header ({L}, {nblocks}, {ncoin})")
    amps = np.frombuffer(raw, dtype="<c16", offset=20)
    if amps.size != L * 2 * (1 << L):
        raise InvalidStateError(
            f"{path}: expected {L * 2 * (1 << L)} amplitudes, got {amps.size}"
        )
    return WalkState(L=L, amps=amps.astype(np.complex128))
