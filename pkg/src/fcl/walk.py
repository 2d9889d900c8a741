"""Interacting quantum walk on the cluster chain.

The composite Hilbert space is position (L sites) x coin (2) x spins (2^L),
flat index i = x (2 2^L) + c 2^L + s. One time step applies, in order,

    coin rotation  R(theta) = exp(-i theta tau_y),
    shift          M: (x, 1) -> (x+1, 0) and (x, 0) -> (x-1, 1), periodic,
    exchange       W = prod_x [cos J_w + i sin J_w (tau_x X_x)],
    spin Floquet   F(J, B) within every (x, c) block,

so the walker entangles with the chain through W while F drives the spins.
The exchange is applied at every site regardless of the walker position
(coupling_mode "global"); the "local" variant restricts it to the site the
walker occupies, conditioning the factor on the position block.

The global factors commute, so W_global = exp(i J_w tau_x sum_x X_x), and on
an even-L chain exp(i (pi/2) tau_x sum_x X_x) reduces to the conserved flip
prod_x X_x (equal to +1 on the |+>^L initial state): global-mode dynamics is
periodic in J_w with period pi/2, and J_w near pi/2 couples only through the
residue J_w - pi/2. The local gate has no such collapse; at J_w = pi/2 it is
a hard coin-spin exchange at the walker site, which is the regime where the
walker localizes or drives the chain to an infinite-temperature state.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import InvalidArgumentError
from .momentum import ModelParams

_COUPLING_MODES = ("global", "local")


@dataclass(frozen=True)
class WalkParams:
    """Chain couplings plus walker exchange J_w, coin angle theta, coupling mode."""

    base: ModelParams
    J_w: float
    theta: float
    coupling_mode: str = "global"

    def __post_init__(self):
        if not 4 <= self.base.L <= 16:
            raise InvalidArgumentError(
                f"walk size must satisfy 4 <= L <= 16, got {self.base.L}"
            )
        if self.coupling_mode not in _COUPLING_MODES:
            raise InvalidArgumentError(
                f"coupling_mode must be one of {_COUPLING_MODES}, "
                f"got {self.coupling_mode!r}"
            )


@dataclass
class WalkState:
    """L sites and the L * 2 * 2^L amplitudes psi_{xcs}."""

    L: int
    amps: np.ndarray = field(repr=False)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def copy(self) -> "WalkState":
        return WalkState(L=self.L, amps=self.amps.copy())

    def blocks(self) -> np.ndarray:
        """View of shape (L, 2, 2^L)."""
        return self.amps.reshape(self.L, 2, 1 << self.L)

    def spin_block(self, x: int, c: int) -> np.ndarray:
        """The 2^L spin amplitudes at position x, coin c."""
        return self.blocks()[x, c]


def make_initial(params: WalkParams, x0: int, c0: int) -> WalkState:
    """|x0, c0> otimes |+>^L."""
    L = params.base.L
    if not 0 <= x0 < L:
        raise InvalidArgumentError(f"x0 {x0} out of range for L={L}")
    if c0 not in (0, 1):
        raise InvalidArgumentError(f"c0 must be 0 or 1, got {c0}")
    amps = np.zeros(L * 2 * (1 << L), dtype=np.complex128)
    state = WalkState(L=L, amps=amps)
    state.blocks()[x0, c0] = 2.0 ** (-L / 2.0)
    return state


def apply_coin_rotation(state: WalkState, theta: float) -> WalkState:
    """Real rotation exp(-i theta tau_y) of the coin at every (x, s), in place."""
    v = state.blocks()
    a0 = v[:, 0, :].copy()
    c, s = np.cos(theta), np.sin(theta)
    v[:, 0, :] *= c
    v[:, 0, :] -= s * v[:, 1, :]
    v[:, 1, :] *= c
    v[:, 1, :] += s * a0
    return state


def apply_shift(state: WalkState) -> WalkState:
    """Coin-1 moves right becoming coin 0; coin-0 moves left becoming coin 1."""
    v = state.blocks()
    moved = np.empty_like(v)
    moved[:, 0, :] = np.roll(v[:, 1, :], 1, axis=0)
    moved[:, 1, :] = np.roll(v[:, 0, :], -1, axis=0)
    v[:] = moved
    return state


def apply_exchange(state: WalkState, J_w: float, coupling_mode: str = "global") -> WalkState:
    """Coin-spin exchange, every site (global) or the occupied site only (local)."""
    if coupling_mode not in _COUPLING_MODES:
        raise InvalidArgumentError(
            f"coupling_mode must be one of {_COUPLING_MODES}, got {coupling_mode!r}"
        )
    if coupling_mode == "global":
        _kernels.exchange_sweep(state.amps, state.L, J_w)
    else:
        _kernels.exchange_local(state.amps, state.L, J_w)
    return state


def apply_spin_floquet(state: WalkState, params: ModelParams) -> WalkState:
    """Spin-only Floquet period within every (x, c) block, in place."""
    if params.L != state.L:
        raise InvalidArgumentError(f"params.L={params.L} != state.L={state.L}")
    _kernels.floquet_sweep(state.amps, state.L, params.J, params.B)
    return state


def step(state: WalkState, params: WalkParams) -> WalkState:
    """One full period: coin rotation, shift, exchange, spin Floquet."""
    apply_coin_rotation(state, params.theta)
    apply_shift(state)
    apply_exchange(state, params.J_w, params.coupling_mode)
    apply_spin_floquet(state, params.base)
    return state


def particle_distribution(state: WalkState) -> np.ndarray:
    """p(x) = sum_{c,s} |psi_{xcs}|^2."""
    v = state.blocks()
    return np.sum(np.abs(v) ** 2, axis=(1, 2))


def spin_parity_expectation(state: WalkState, which: str) -> float:
    """<P> for the spin parity P extended by identity on position and coin."""
    from .spin import _flip_view  # shares the bit-flip machinery

    if which not in ("even", "odd", "total"):
        raise InvalidArgumentError(f"unknown parity {which!r}")
    start = {"even": 0, "odd": 1, "total": 0}[which]
    stride = 1 if which == "total" else 2
    flipped = _flip_view(state.amps, state.L, range(start, state.L, stride))
    return float(np.real(np.vdot(state.amps, flipped)))
