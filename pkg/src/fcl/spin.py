"""Exact state-vector evolution of the driven cluster chain.

Basis states |s> = |s_0 ... s_{L-1}> are integers s with site x at bit x
(bit 0 least significant); bit value 0 is the Z = +1 state. One period
applies the field half exp(i(B/2) X_x) at every site, then the cluster half
exp(i(J/2) Z_{x-1} X_x Z_{x+1}) at every site, with periodic wrap. All
factors within each half commute, so the sweep order inside a half is
irrelevant.

The state is mutated in place by apply_floquet; expectation values are
read-only. L is capped at 24 (2^24 complex amplitudes, 256 MiB).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import InvalidArgumentError, ResourceLimitError
from .momentum import ModelParams

_L_MIN, _L_MAX = 2, 24

_AXES = ("X", "Y", "Z")
_PARITIES = ("even", "odd", "total")


@dataclass
class SpinState:
    """L sites and their 2^L complex amplitudes."""

    L: int
    amps: np.ndarray = field(repr=False)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def copy(self) -> "SpinState":
        return SpinState(L=self.L, amps=self.amps.copy())


def _check_size(L: int) -> None:
    if int(L) != L or not _L_MIN <= L <= _L_MAX:
        raise ResourceLimitError(
            f"spin chain size must satisfy {_L_MIN} <= L <= {_L_MAX}, got {L}"
        )


def make_plus_state(L: int) -> SpinState:
    """|+>^L: uniform amplitudes 2^{-L/2}, the +1 eigenstate of every X_x."""
    _check_size(L)
    amps = np.full(1 << L, 2.0 ** (-L / 2.0), dtype=np.complex128)
    return SpinState(L=L, amps=amps)


def make_cluster_state(L: int) -> SpinState:
    """Product of CZ_{x,x+1} (periodic) on |+>^L; stabilized by every Z X Z."""
    _check_size(L)
    state = make_plus_state(L)
    # each CZ negates amplitudes whose bits x and x+1 are both 1
    s = np.arange(1 << L, dtype=np.int64)
    pairs = np.zeros(1 << L, dtype=np.int64)
    for x in range(L):
        pairs += (s >> x) & (s >> ((x + 1) % L)) & 1
    state.amps[(pairs & 1) == 1] *= -1.0
    return state


def apply_floquet(state: SpinState, params: ModelParams) -> SpinState:
    """Advance one period in place: field half-rotations, then cluster."""
    if params.L != state.L:
        raise InvalidArgumentError(f"params.L={params.L} != state.L={state.L}")
    _kernels.floquet_sweep(state.amps, state.L, params.J, params.B)
    return state


def pauli_expectation(state: SpinState, axis: str, site: int) -> float:
    """<sigma_site^axis> for axis in {X, Y, Z}."""
    if axis not in _AXES:
        raise InvalidArgumentError(f"axis must be one of {_AXES}, got {axis!r}")
    if not 0 <= site < state.L:
        raise InvalidArgumentError(f"site {site} out of range for L={state.L}")
    v = state.amps.reshape(-1, 2, 1 << site)
    a0, a1 = v[:, 0, :], v[:, 1, :]
    if axis == "X":
        return float(2.0 * np.real(np.sum(np.conj(a0) * a1)))
    if axis == "Y":
        # <Y> = -2 Im rho_01 with rho_01 = sum a0 conj(a1)
        return float(-2.0 * np.imag(np.sum(a0 * np.conj(a1))))
    return float(np.sum(np.abs(a0) ** 2) - np.sum(np.abs(a1) ** 2))


def _flip_view(amps: np.ndarray, L: int, sites: range) -> np.ndarray:
    """View of amps with the given spin bits flipped (reversed axes)."""
    view = amps.reshape((-1,) + (2,) * L)
    index: list[slice] = [slice(None)] * (L + 1)
    for x in sites:
        # axis 1 + j holds bit L-1-j, so bit x sits at axis 1 + (L-1-x)
        index[1 + (L - 1 - x)] = slice(None, None, -1)
    return view[tuple(index)].reshape(amps.shape)


def parity_expectation(state: SpinState, which: str) -> float:
    """<P> for P the product of X over even sites, odd sites, or all sites."""
    if which not in _PARITIES:
        raise InvalidArgumentError(f"which must be one of {_PARITIES}, got {which!r}")
    start = {"even": 0, "odd": 1, "total": 0}[which]
    step = 1 if which == "total" else 2
    flipped = _flip_view(state.amps, state.L, range(start, state.L, step))
    return float(np.real(np.vdot(state.amps, flipped)))


def overlap(a: SpinState, b: SpinState) -> complex:
    """Inner product <a|b>."""
    if a.L != b.L:
        raise InvalidArgumentError(f"size mismatch: {a.L} != {b.L}")
    return complex(np.vdot(a.amps, b.amps))


def q_pure(state: SpinState) -> float:
    """Global entanglement 1 - (1/L) sum_x |<sigma_x>|^2 of a pure state."""
    total = 0.0
    for x in range(state.L):
        for axis in _AXES:
            total += pauli_expectation(state, axis, x) ** 2
    return 1.0 - total / state.L


def loschmidt_rate_exact(initial: SpinState, evolved: SpinState) -> float:
    """-(1/L) ln |<initial|evolved>|^2, the brute-force return rate."""
    echo = abs(overlap(initial, evolved)) ** 2
    if echo == 0.0:
        return float("inf")
    return float(-np.log(echo) / initial.L)
