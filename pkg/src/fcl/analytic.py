"""Closed-form stroboscopic observables of the integrable chain.

The fully polarized state |+>^L is the Bogoliubov vacuum of the even
fermion-parity sector. After t periods each even-sector mode is excited with
probability N_k(t) = (1 - n_z^2) sin^2(eps_k t), which fixes the
site-averaged magnetization <X> = 1 - (2/L) sum_k N_k, the global
entanglement

    Q0(t) = (4/L) S (1 - S/L),  S = sum_{k in even grid} N_k,

and the Loschmidt rate of the return amplitude <+^L| F^t |+^L>, which
factorizes over the L/2 positive momenta:

    lambda(t) = -(1/L) sum_{k in even grid, k > 0} ln(1 - N_k(t)).

Exact zeros of the echo (possible when some N_k reaches 1) are reported as
the +inf sentinel rather than an error; they are the cusps of interest.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .momentum import ModeData, ModelParams, build_grid


@dataclass(frozen=True)
class TimeSeries:
    """A label plus values sampled at strictly increasing integer times."""

    times: np.ndarray
    values: np.ndarray
    label: str

    def __post_init__(self):
        times = np.asarray(self.times)
        values = np.asarray(self.values, dtype=np.float64)
        if times.shape != values.shape:
            raise InvalidArgumentError("times and values must have equal length")
        if times.size and np.any(np.diff(times) <= 0):
            raise InvalidArgumentError("times must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)


def mode_occupation(mode: ModeData, t: int) -> float:
    """Excitation probability N_k(t) = (1 - n_z^2) sin^2(eps_k t) of one mode."""
    if t < 0 or int(t) != t:
        raise InvalidArgumentError(f"t must be a nonnegative integer, got {t}")
    if mode.singular:
        # eps in {0, pi}, so sin(eps t) = 0 at every integer t
        return 0.0
    mx, my, mz = mode.m
    perp2 = mx * mx + my * my
    weight = perp2 / (perp2 + mz * mz)  # 1 - n_z^2 without forming n
    return float(weight * np.sin(mode.epsilon * t) ** 2)


def _even_mode_arrays(params: ModelParams) -> tuple[np.ndarray, np.ndarray]:
    """Quasienergies and (1 - n_z^2) weights over the even-sector grid."""
    k = build_grid(params.L, "even").values
    sj, cj = np.sin(params.J), np.cos(params.J)
    sb, cb = np.sin(params.B), np.cos(params.B)
    eps = np.arccos(np.clip(cj * cb + sj * sb * np.cos(2 * k), -1.0, 1.0))
    mx = sj * cb * np.sin(2 * k)
    my = sj * sb * np.sin(2 * k)
    mz = cj * sb - sj * cb * np.cos(2 * k)
    perp2 = mx * mx + my * my
    m2 = perp2 + mz * mz
    weight = np.where(m2 > 0, perp2 / np.where(m2 > 0, m2, 1.0), 0.0)
    return eps, weight


def _occupations(params: ModelParams, t: int) -> np.ndarray:
    eps, weight = _even_mode_arrays(params)
    return weight * np.sin(eps * t) ** 2


def global_entanglement_q0(params: ModelParams, t: int) -> float:
    """Global entanglement Q0(t) of F^t |+>^L from the mode occupations."""
    if t < 0 or int(t) != t:
        raise InvalidArgumentError(f"t must be a nonnegative integer, got {t}")
    S = float(np.sum(_occupations(params, t)))
    return (4.0 / params.L) * S * (1.0 - S / params.L)


def loschmidt_rate(params: ModelParams, t: int) -> float:
    """Return rate lambda(t) = -(1/L) ln|<+^L|F^t|+^L>|^2; +inf at exact zeros."""
    if t < 0 or int(t) != t:
        raise InvalidArgumentError(f"t must be a nonnegative integer, got {t}")
    occ = _occupations(params, t)
    factors = 1.0 - occ[occ.size // 2 :]  # k > 0 half; occupations are even in k
    if np.any(factors <= 0.0):
        return float("inf")
    return float(-np.sum(np.log(factors)) / params.L)


def q0_series(params: ModelParams, times: np.ndarray) -> TimeSeries:
    """Q0 evaluated over a vector of integer times."""
    times = np.asarray(times)
    eps, weight = _even_mode_arrays(params)
    S = np.sin(np.outer(times, eps)) ** 2 @ weight
    values = (4.0 / params.L) * S * (1.0 - S / params.L)
    return TimeSeries(times=times, values=values, label="q0")


def loschmidt_series(params: ModelParams, times: np.ndarray) -> TimeSeries:
    """lambda evaluated over a vector of integer times, with +inf sentinels."""
    times = np.asarray(times)
    eps, weight = _even_mode_arrays(params)
    half = eps.size // 2
    factors = 1.0 - weight[half:] * np.sin(np.outer(times, eps[half:])) ** 2
    values = np.full(times.shape, np.inf)
    ok = np.all(factors > 0.0, axis=1)
    values[ok] = -np.sum(np.log(factors[ok]), axis=1) / params.L
    return TimeSeries(times=times, values=values, label="lambda")


def q0_map(
    j_values: np.ndarray,
    b_values: np.ndarray,
    L: int,
    t_window: tuple[int, int],
) -> np.ndarray:
    """Mean Q0 over integer times in [t_start, t_end) for every (J, B) cell.

    Returns a matrix of shape (len(j_values), len(b_values)).
    """
    t_start, t_end = t_window
    if t_end <= t_start:
        raise InvalidArgumentError(f"empty time window {t_window}")
    times = np.arange(t_start, t_end)
    out = np.empty((len(j_values), len(b_values)))
    for i, J in enumerate(j_values):
        for j, B in enumerate(b_values):
            series = q0_series(ModelParams(J=float(J), B=float(B), L=L), times)
            out[i, j] = series.values.mean()
    return out
