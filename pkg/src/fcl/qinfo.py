"""Mixed-state observables: reductions, tangle, negativity, entropies.

Reduced density matrices are accumulated directly from state-vector
amplitudes; the full 2^L x 2^L spin marginal is never materialized beyond
the guarded subset size. For a pure composite state the spin-marginal
spectrum equals the (position x coin)-marginal spectrum, so spin entropies
are computed from the 2L x 2L complement. Natural logarithms throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import log1p

import numpy as np

from .errors import InvalidArgumentError, InvalidStateError, ResourceLimitError
from .spin import SpinState
from .walk import WalkState

# largest reduced matrix materialized (2^12 keeps 12-site subsets reachable)
_MAX_KEPT_DIM = 4096

_PSD_TOL = -1e-9
_EIG_FLOOR = 1e-12
_NEG_EIG_TOL = -1e-10


@dataclass(frozen=True)
class DensityMatrix:
    """A dim x dim density matrix."""

    dim: int
    elements: np.ndarray = field(repr=False)

    def validate(self, check_psd: bool = True) -> "DensityMatrix":
        """Raise unless Hermitian, unit trace, and (optionally) PSD in tolerance."""
        rho = self.elements
        if rho.shape != (self.dim, self.dim):
            raise InvalidStateError(f"shape {rho.shape} != ({self.dim}, {self.dim})")
        if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
            raise InvalidStateError("density matrix is not Hermitian within 1e-10")
        if abs(np.trace(rho) - 1.0) > 1e-10:
            raise InvalidStateError("density matrix trace differs from 1 by > 1e-10")
        if check_psd and float(np.linalg.eigvalsh(rho)[0]) < _PSD_TOL:
            raise InvalidStateError(f"eigenvalue below {_PSD_TOL}")
        return self


@dataclass(frozen=True)
class SiteBloch:
    """Single-site Bloch vector (<X>, <Y>, <Z>)."""

    site: int
    vector: np.ndarray


def _elements(rho) -> np.ndarray:
    """Accept a DensityMatrix or a bare matrix."""
    return np.asarray(getattr(rho, "elements", rho))


def reduced_single_site(state: SpinState | WalkState, site: int) -> DensityMatrix:
    """2x2 marginal of spin `site`, accumulated in one pass over the amplitudes."""
    if not 0 <= site < state.L:
        raise InvalidArgumentError(f"site {site} out of range for L={state.L}")
    v = state.amps.reshape(-1, 2, 1 << site)
    rho = np.einsum("iaj,ibj->ab", v, v.conj())
    return DensityMatrix(dim=2, elements=rho)


def _site_axes(L: int, offset: int, sites: list[int]) -> list[int]:
    # spin axis offset + j holds site L-1-j
    return [offset + (L - 1 - x) for x in sites]


def reduced_subset(
    state: SpinState | WalkState,
    sites: list[int],
    include_particle: bool = False,
) -> DensityMatrix:
    """Marginal of the listed spin sites, optionally keeping the walker.

    Subsystem order in the result: the (position x coin) factor first when
    kept (dimension 2L, index x*2 + c), then the sites in listed order.
    """
    L = state.L
    if len(set(sites)) != len(sites) or any(not 0 <= x < L for x in sites):
        raise InvalidArgumentError(f"sites must be distinct and in 0..{L - 1}")
    walk = isinstance(state, WalkState)
    if include_particle and not walk:
        raise InvalidArgumentError("include_particle requires a walk state")
    kept_dim = (2 * L if include_particle else 1) << len(sites)
    if kept_dim > _MAX_KEPT_DIM:
        raise ResourceLimitError(
            f"reduced matrix dimension {kept_dim} exceeds {_MAX_KEPT_DIM}"
        )
    if walk:
        shape = (L, 2) + (2,) * L
        kept = ([0, 1] if include_particle else []) + _site_axes(L, 2, sites)
    else:
        shape = (2,) * L
        kept = _site_axes(L, 0, sites)
    psi = state.amps.reshape(shape)
    traced = [ax for ax in range(len(shape)) if ax not in kept]
    psi = psi.transpose(kept + traced).reshape(kept_dim, -1)
    rho = psi @ psi.conj().T
    return DensityMatrix(dim=kept_dim, elements=rho)


def particle_marginal(state: WalkState) -> DensityMatrix:
    """(position x coin) marginal, dimension 2L."""
    return reduced_subset(state, [], include_particle=True)


def position_marginal(state: WalkState) -> DensityMatrix:
    """L x L position marginal."""
    rho = particle_marginal(state).elements.reshape(state.L, 2, state.L, 2)
    return DensityMatrix(dim=state.L, elements=np.einsum("xcyc->xy", rho))


def coin_marginal(state: WalkState) -> DensityMatrix:
    """2 x 2 coin marginal."""
    rho = particle_marginal(state).elements.reshape(state.L, 2, state.L, 2)
    return DensityMatrix(dim=2, elements=np.einsum("xaxb->ab", rho))


def tangle(rho: DensityMatrix) -> float:
    """One-tangle 4 det(rho) of a single-site marginal."""
    mat = _elements(rho)
    if mat.shape != (2, 2):
        raise InvalidArgumentError(f"tangle needs a 2x2 matrix, got {mat.shape}")
    det = mat[0, 0] * mat[1, 1] - mat[0, 1] * mat[1, 0]
    return float(4.0 * det.real)


def q_mixed(state: WalkState | SpinState) -> float:
    """Global entanglement as the mean single-site tangle."""
    return float(
        np.mean([tangle(reduced_single_site(state, x)) for x in range(state.L)])
    )


def magnetization(state: WalkState | SpinState, site: int) -> SiteBloch:
    """Bloch vector of the spin at `site`."""
    rho = reduced_single_site(state, site).elements
    vec = np.array(
        [
            2.0 * rho[0, 1].real,
            -2.0 * rho[0, 1].imag,
            (rho[0, 0] - rho[1, 1]).real,
        ]
    )
    return SiteBloch(site=site, vector=vec)


def peres_loschmidt(initial_spin_marginal: DensityMatrix | None, state: WalkState) -> float:
    """Rate -(1/L) ln[Tr rho_s(0) rho_s(t) / Tr rho_s(0)^2] of the Peres echo.

    With initial_spin_marginal=None the initial marginal is the pure product
    (|+><+|)^L and the echo reduces to sum_{x,c} |<+^L|psi_{xc}>|^2, computed
    without materializing any spin matrix.
    """
    if initial_spin_marginal is None:
        proj = state.blocks().sum(axis=2) * 2.0 ** (-state.L / 2.0)
        echo = float(np.sum(np.abs(proj) ** 2))
    else:
        rho0 = _elements(initial_spin_marginal)
        rho_t = reduced_subset(state, list(range(state.L))).elements
        echo = float(
            np.real(np.sum(rho0 * rho_t.T)) / np.real(np.sum(rho0 * rho0.T))
        )
    if echo <= 0.0:
        return float("inf")
    return float(-np.log(echo) / state.L)


def partial_transpose(rho: DensityMatrix, dims: tuple[int, int]) -> np.ndarray:
    """Transpose the second tensor factor of a (dA * dB)-dimensional matrix."""
    mat = _elements(rho)
    dA, dB = dims
    if mat.shape != (dA * dB, dA * dB):
        raise InvalidArgumentError(f"shape {mat.shape} incompatible with dims {dims}")
    return (
        mat.reshape(dA, dB, dA, dB).swapaxes(1, 3).reshape(dA * dB, dA * dB)
    )


def negativity(rho: DensityMatrix, dims: tuple[int, int]) -> float:
    """ln(1 + 2 sum |negative eigenvalues|) of the partial transpose."""
    eig = np.linalg.eigvalsh(partial_transpose(rho, dims))
    neg = eig[eig < _NEG_EIG_TOL]
    return float(log1p(-2.0 * float(neg.sum())))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S = -Tr rho ln rho; eigenvalues below 1e-12 contribute nothing."""
    eig = np.linalg.eigvalsh(_elements(rho))
    if float(eig[0]) < _PSD_TOL:
        raise InvalidStateError(f"matrix not positive semidefinite ({eig[0]:.3e})")
    p = eig[eig > _EIG_FLOOR]
    return float(-np.sum(p * np.log(p)))


def entropy_spin_marginal(state: WalkState) -> float:
    """Spin-subsystem entropy via the (position x coin) complement (pure state)."""
    return von_neumann_entropy(particle_marginal(state))


def half_chain_entropy(state: WalkState | SpinState, normalized: bool = False) -> float:
    """Entropy of spin sites 0..L/2-1; normalized form divides by (L/2) ln 2."""
    rho = reduced_subset(state, list(range(state.L // 2)))
    s = von_neumann_entropy(rho)
    if normalized:
        s /= (state.L / 2.0) * np.log(2.0)
    return s
