"""Reference numpy kernels for the amplitude sweeps.

All functions mutate a flat complex128 array in place. Spin configurations
are bit strings: site x is bit x, bit 0 least significant, bit value 0 means
Z-eigenvalue +1. Arrays may carry leading block axes (walk position and coin);
every kernel reshapes the flat array so the spin bits sit in the trailing
2**L entries of each block.

The compiled backend (fcl._kernels._core) implements the same signatures.
"""
from __future__ import annotations

import numpy as np


def _neighbor_signs(L: int, x: int) -> tuple[np.ndarray, np.ndarray]:
    """(-1)**(s_{x-1} + s_{x+1}) split into factors over the hi/lo index axes."""
    hi = 1 << (L - 1 - x)
    lo = 1 << x
    f_hi = np.ones(hi)
    f_lo = np.ones(lo)
    for site in ((x - 1) % L, (x + 1) % L):
        if site < x:
            f_lo *= 1.0 - 2.0 * ((np.arange(lo) >> site) & 1)
        else:
            # bit (site - x - 1) of the hi index holds site's spin
            f_hi *= 1.0 - 2.0 * ((np.arange(hi) >> (site - x - 1)) & 1)
    return f_hi, f_lo


def field_sweep(amps: np.ndarray, L: int, half: float) -> None:
    """Apply exp(i*half*X_x) for every site x."""
    c = np.cos(half)
    s = 1j * np.sin(half)
    for x in range(L):
        v = amps.reshape(-1, 2, 1 << x)
        a0 = v[:, 0, :].copy()
        a1 = v[:, 1, :].copy()
        v[:, 0, :] = c * a0 + s * a1
        v[:, 1, :] = c * a1 + s * a0


def cluster_sweep(amps: np.ndarray, L: int, half: float) -> None:
    """Apply exp(i*half*Z_{x-1} X_x Z_{x+1}) for every site x, periodic wrap."""
    c = np.cos(half)
    s = 1j * np.sin(half)
    nblk = amps.size >> L
    for x in range(L):
        f_hi, f_lo = _neighbor_signs(L, x)
        sgn = (f_hi[:, None] * f_lo[None, :])[None, :, :]
        v = amps.reshape(nblk, 1 << (L - 1 - x), 2, 1 << x)
        a0 = v[:, :, 0, :].copy()
        a1 = v[:, :, 1, :].copy()
        v[:, :, 0, :] = c * a0 + s * (sgn * a1)
        v[:, :, 1, :] = c * a1 + s * (sgn * a0)


def floquet_sweep(amps: np.ndarray, L: int, J: float, B: float) -> None:
    """One Floquet period: field half-rotations first, then cluster half-rotations."""
    field_sweep(amps, L, B / 2.0)
    cluster_sweep(amps, L, J / 2.0)


def exchange_sweep(amps: np.ndarray, L: int, jw: float) -> None:
    """Apply every coin-spin exchange factor cos(jw) + i sin(jw) (tau_x X_x)."""
    c = np.cos(jw)
    s = 1j * np.sin(jw)
    npos = amps.size >> (L + 1)
    for x in range(L):
        v = amps.reshape(npos, 2, 1 << (L - 1 - x), 2, 1 << x)
        a0 = v[:, 0].copy()
        a1 = v[:, 1, :, ::-1, :].copy()  # coin flipped and spin bit x flipped
        v[:, 0] = c * a0 + s * a1
        v[:, 1, :, ::-1, :] = c * a1 + s * a0


def exchange_local(amps: np.ndarray, L: int, jw: float) -> None:
    """Apply only the exchange factor whose site equals the walker position."""
    c = np.cos(jw)
    s = 1j * np.sin(jw)
    npos = amps.size >> (L + 1)
    blocks = amps.reshape(npos, 2 << L)
    for p in range(npos):
        x = p % L
        v = blocks[p].reshape(2, 1 << (L - 1 - x), 2, 1 << x)
        a0 = v[0].copy()
        a1 = v[1, :, ::-1, :].copy()
        v[0] = c * a0 + s * a1
        v[1, :, ::-1, :] = c * a1 + s * a0
