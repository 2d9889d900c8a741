"""Exact spin-engine tests against dense kron-built operators.

The cycle operator is F = exp(+i(J/2) sum_x Z_{x-1}X_xZ_{x+1}) applied after
exp(+i(B/2) sum_x X_x), with site x stored in bit x of the amplitude index.
Small dense exponentials (L = 4, 5) are the oracle for the sweep kernels and
the Pauli estimators; stabilizer and parity identities cover larger L.
"""
import numpy as np
import pytest
from scipy.linalg import expm

from fcl.errors import InvalidArgumentError, ResourceLimitError
from fcl.momentum import ModelParams
from fcl.spin import (
    SpinState,
    apply_floquet,
    loschmidt_rate_exact,
    make_cluster_state,
    make_plus_state,
    overlap,
    parity_expectation,
    pauli_expectation,
    q_pure,
)

SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SY = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def site_op(L, x, op):
    """Operator acting on site x of an L-site chain, bit x least significant."""
    full = np.eye(1, dtype=complex)
    for pos in range(L - 1, -1, -1):
        full = np.kron(full, op if pos == x else np.eye(2, dtype=complex))
    return full


def dense_floquet(params):
    """Dense one-cycle operator built from full-chain matrix exponentials."""
    L = params.L
    h_field = sum(site_op(L, x, SX) for x in range(L))
    h_cluster = sum(
        site_op(L, (x - 1) % L, SZ) @ site_op(L, x, SX) @ site_op(L, (x + 1) % L, SZ)
        for x in range(L)
    )
    return expm(1j * (params.J / 2) * h_cluster) @ expm(1j * (params.B / 2) * h_field)


def random_state(L, seed):
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=1 << L) + 1j * rng.normal(size=1 << L)
    return SpinState(L=L, amps=amps / np.linalg.norm(amps))


def test_plus_state_polarized():
    state = make_plus_state(6)
    assert abs(state.norm() - 1.0) < 1e-14
    for x in range(6):
        assert abs(pauli_expectation(state, "X", x) - 1.0) < 1e-12
        assert abs(pauli_expectation(state, "Z", x)) < 1e-12


def test_cluster_state_stabilizers():
    state = make_cluster_state(6)
    for x in range(6):
        stab = (
            site_op(6, (x - 1) % 6, SZ)
            @ site_op(6, x, SX)
            @ site_op(6, (x + 1) % 6, SZ)
        )
        value = np.vdot(state.amps, stab @ state.amps)
        assert abs(value - 1.0) < 1e-12


def test_floquet_matches_dense_exponential():
    for seed, (J, B) in enumerate([(0.6, 0.2), (1.1, 0.9), (np.pi / 2, 0.35)]):
        params = ModelParams(J=J, B=B, L=4)
        state = random_state(4, 100 + seed)
        expected = dense_floquet(params) @ state.amps
        evolved = apply_floquet(state, params)
        assert np.max(np.abs(evolved.amps - expected)) < 1e-12
        assert abs(evolved.norm() - 1.0) < 1e-12


def test_pauli_expectation_matches_dense():
    state = random_state(5, 3)
    for x in range(5):
        for axis, op in (("X", SX), ("Y", SY), ("Z", SZ)):
            dense = np.vdot(state.amps, site_op(5, x, op) @ state.amps).real
            assert abs(pauli_expectation(state, axis, x) - dense) < 1e-12


def test_parity_expectation_matches_dense():
    state = random_state(6, 17)
    even = np.eye(1 << 6, dtype=complex)
    for x in range(0, 6, 2):
        even = even @ site_op(6, x, SX)
    odd = np.eye(1 << 6, dtype=complex)
    for x in range(1, 6, 2):
        odd = odd @ site_op(6, x, SX)
    assert abs(parity_expectation(state, "even") - np.vdot(state.amps, even @ state.amps).real) < 1e-12
    assert abs(parity_expectation(state, "odd") - np.vdot(state.amps, odd @ state.amps).real) < 1e-12
    total = parity_expectation(state, "total")
    dense = np.vdot(state.amps, even @ odd @ state.amps).real
    assert abs(total - dense) < 1e-12


def test_parity_conserved_by_cycle():
    params = ModelParams(J=0.83, B=0.41, L=8)
    state = make_plus_state(8)
    for _ in range(30):
        state = apply_floquet(state, params)
    assert abs(state.norm() - 1.0) < 1e-12
    assert abs(parity_expectation(state, "even") - 1.0) < 1e-12
    assert abs(parity_expectation(state, "odd") - 1.0) < 1e-12


def test_floquet_rejects_size_mismatch():
    state = make_plus_state(6)
    with pytest.raises(InvalidArgumentError):
        apply_floquet(state, ModelParams(J=0.5, B=0.2, L=8))


def test_overlap_and_loschmidt_rate():
    a = random_state(4, 5)
    b = random_state(4, 6)
    assert abs(overlap(a, b) - np.vdot(a.amps, b.amps)) < 1e-15
    rate = loschmidt_rate_exact(a, b)
    assert abs(rate - (-np.log(abs(np.vdot(a.amps, b.amps)) ** 2) / 4)) < 1e-12
    # exactly orthogonal states give the +inf sentinel
    e0 = np.zeros(16, dtype=complex)
    e1 = np.zeros(16, dtype=complex)
    e0[0] = 1.0
    e1[1] = 1.0
    rate = loschmidt_rate_exact(SpinState(L=4, amps=e0), SpinState(L=4, amps=e1))
    assert rate == np.inf
    with pytest.raises(InvalidArgumentError):
        overlap(a, make_plus_state(6))


def test_q_pure_reference_states():
    # fully X-polarized product state carries no entanglement
    assert abs(q_pure(make_plus_state(6))) < 1e-12
    # the cluster state has maximally mixed single-site marginals
    assert abs(q_pure(make_cluster_state(6)) - 1.0) < 1e-12


def test_size_guard():
    with pytest.raises(ResourceLimitError):
        make_plus_state(26)
