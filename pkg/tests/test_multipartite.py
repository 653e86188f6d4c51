"""Logical ancilla codespace, per-party lifts, stabilizer structure."""

import numpy as np
import pytest

from helpers import random_povm
from realsim import linalg
from realsim.encoding import Layout, PureState, encode_operator, encode_state
from realsim.multipartite import (
    PartitionedSystem,
    encode_multipartite_state,
    lift_local_operator,
    local_xz,
    logical_encode_operator,
    logical_states,
    stabilizer_check,
)

S = 1.0 / np.sqrt(2.0)


def multi_state(vec, dims):
    return PureState(np.asarray(vec, dtype=complex), factor_dims=dims)


def reference_multipartite_encoding(psi, k):
    """Index-by-index reference: enc[x, y] = re[x] zero[y] + im[x] one[y]."""
    logical = logical_states(k)
    out = np.zeros(psi.size * 2**k)
    for x in range(psi.size):
        for y in range(2**k):
            out[x * 2**k + y] = psi[x].real * logical.zero_state[y] + psi[x].imag * logical.one_state[y]
    return out


def embed_complex(m, dims, party):
    before = int(np.prod(dims[:party])) if party else 1
    after = int(np.prod(dims[party + 1:])) if party + 1 < len(dims) else 1
    return np.kron(np.eye(before), np.kron(m, np.eye(after)))


class TestLogicalStates:
    def test_single_qubit_degenerates_to_computational_basis(self):
        logical = logical_states(1)
        assert np.array_equal(logical.zero_state, [1.0, 0.0])
        assert np.array_equal(logical.one_state, [0.0, 1.0])

    def test_two_qubit_values(self):
        logical = logical_states(2)
        assert np.allclose(logical.zero_state, [S, 0.0, 0.0, -S], atol=1e-15)
        assert np.allclose(logical.one_state, [0.0, S, S, 0.0], atol=1e-15)

    def test_three_qubit_values(self):
        logical = logical_states(3)
        assert np.allclose(
            logical.zero_state, [0.5, 0, 0, -0.5, 0, -0.5, -0.5, 0], atol=1e-15
        )
        assert np.allclose(
            logical.one_state, [0, 0.5, 0.5, 0, 0.5, 0, 0, -0.5], atol=1e-15
        )

    @pytest.mark.parametrize("k", range(1, 9))
    def test_orthonormal(self, k):
        logical = logical_states(k)
        assert abs(np.linalg.norm(logical.zero_state) - 1.0) <= 1e-13
        assert abs(np.linalg.norm(logical.one_state) - 1.0) <= 1e-13
        assert abs(logical.zero_state @ logical.one_state) <= 1e-13

    @pytest.mark.parametrize("k", range(2, 7))
    def test_parity_supports_are_disjoint(self, k):
        logical = logical_states(k)
        for y in range(2**k):
            if y.bit_count() % 2 == 0:
                assert logical.one_state[y] == 0.0
            else:
                assert logical.zero_state[y] == 0.0

    def test_k_out_of_range(self):
        with pytest.raises(ValueError):
            logical_states(0)
        with pytest.raises(ValueError):
            logical_states(13)


class TestLocalXZ:
    @pytest.mark.parametrize("k", range(2, 7))
    def test_every_qubit_realizes_the_logical_quarter_turn(self, k):
        logical = logical_states(k)
        for q in range(k):
            op = local_xz(k, q)
            assert np.abs(op @ logical.zero_state - logical.one_state).max() <= 1e-13
            assert np.abs(op @ logical.one_state + logical.zero_state).max() <= 1e-13

    @pytest.mark.parametrize("k", range(2, 5))
    def test_codespace_restriction_is_exactly_the_quarter_turn(self, k):
        logical = logical_states(k)
        basis = np.column_stack([logical.zero_state, logical.one_state])
        for q in range(k):
            restricted = basis.T @ local_xz(k, q) @ basis
            assert np.abs(restricted - np.array([[0.0, -1.0], [1.0, 0.0]])).max() <= 1e-14

    def test_qubit_index_out_of_range(self):
        with pytest.raises(ValueError):
            local_xz(3, 3)


class TestEncodeMultipartiteState:
    def test_real_state_rides_on_logical_zero(self):
        psi = multi_state([0.0, 1.0, 0.0, 0.0], (2, 2))
        enc = encode_multipartite_state(psi, 2)
        logical = logical_states(2)
        expected = np.kron([0.0, 1.0, 0.0, 0.0], logical.zero_state)
        assert np.allclose(enc.amplitudes, expected, atol=1e-15)

    def test_matches_indexwise_reference(self):
        psi = linalg.random_state(8, seed=3)
        enc = encode_multipartite_state(multi_state(psi, (2, 2, 2)), 3)
        assert np.allclose(enc.amplitudes, reference_multipartite_encoding(psi, 3), atol=1e-14)

    def test_unit_norm_and_layout(self):
        psi = linalg.random_state(6, seed=4)
        enc = encode_multipartite_state(multi_state(psi, (2, 3)), 2)
        assert abs(np.linalg.norm(enc.amplitudes) - 1.0) <= 1e-12
        assert enc.layout == Layout(2)

    def test_party_count_must_match(self):
        psi = multi_state(linalg.random_state(4, seed=5), (2, 2))
        with pytest.raises(ValueError):
            encode_multipartite_state(psi, 3)


class TestLiftLocalOperator:
    def test_identity_lifts_to_identity(self):
        system = PartitionedSystem((2, 2))
        lifted = lift_local_operator(np.eye(2), system, 2, 0)
        assert np.array_equal(lifted.matrix, np.eye(16))

    @pytest.mark.parametrize("dims,party", [((2, 2), 0), ((2, 2), 1), ((2, 3), 1), ((2, 2, 2), 2)])
    def test_action_matches_complex_side(self, dims, party):
        system = PartitionedSystem(dims)
        k = len(dims)
        rng = np.random.default_rng(10 * party + k)
        d = dims[party]
        m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        psi = linalg.random_state(system.total_dim, seed=17)
        enc = encode_multipartite_state(multi_state(psi, dims), k)
        moved = embed_complex(m, dims, party) @ psi
        moved /= np.linalg.norm(moved)
        got = lift_local_operator(m, system, k, party).matrix @ enc.amplitudes
        want = encode_multipartite_state(multi_state(moved, dims), k).amplitudes
        got /= np.linalg.norm(got)
        assert np.abs(got - want).max() <= 1e-13

    def test_different_parties_commute(self):
        system = PartitionedSystem((2, 3))
        rng = np.random.default_rng(20)
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        la = lift_local_operator(a, system, 2, 0).matrix
        lb = lift_local_operator(b, system, 2, 1).matrix
        assert np.abs(la @ lb - lb @ la).max() <= 1e-12

    def test_same_party_composition_on_codespace(self):
        system = PartitionedSystem((2, 2))
        rng = np.random.default_rng(21)
        m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        n = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        psi = linalg.random_state(4, seed=22)
        enc = encode_multipartite_state(multi_state(psi, (2, 2)), 2)
        lm = lift_local_operator(m, system, 2, 0).matrix
        ln = lift_local_operator(n, system, 2, 0).matrix
        lmn = lift_local_operator(m @ n, system, 2, 0).matrix
        assert np.abs(lm @ (ln @ enc.amplitudes) - lmn @ enc.amplitudes).max() <= 1e-12

    def test_shape_mismatch_rejected(self):
        system = PartitionedSystem((2, 3))
        with pytest.raises(ValueError):
            lift_local_operator(np.eye(2), system, 2, 1)
        with pytest.raises(ValueError):
            lift_local_operator(np.eye(2), system, 3, 0)


class TestLogicalEncodeOperator:
    def test_single_qubit_matches_plain_encoding(self):
        rng = np.random.default_rng(30)
        m = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        assert np.allclose(
            logical_encode_operator(m, 1), encode_operator(m).matrix, atol=1e-15
        )

    def test_action_matches_complex_side(self):
        rng = np.random.default_rng(31)
        m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        u, _ = np.linalg.qr(m)
        psi = linalg.random_state(4, seed=32)
        enc = encode_multipartite_state(multi_state(psi, (2, 2)), 2)
        got = logical_encode_operator(u, 2) @ enc.amplitudes
        want = encode_multipartite_state(multi_state(u @ psi, (2, 2)), 2).amplitudes
        assert np.abs(got - want).max() <= 1e-13

    def test_sum_of_local_terms_agrees_on_codespace(self):
        system = PartitionedSystem((2, 2))
        rng = np.random.default_rng(33)
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        total = np.kron(a, np.eye(2)) + np.kron(np.eye(2), b)
        psi = linalg.random_state(4, seed=34)
        enc = encode_multipartite_state(multi_state(psi, (2, 2)), 2)
        whole = logical_encode_operator(total, 2) @ enc.amplitudes
        parts = (
            lift_local_operator(a, system, 2, 0).matrix
            + lift_local_operator(b, system, 2, 1).matrix
        ) @ enc.amplitudes
        assert np.abs(whole - parts).max() <= 1e-12


class TestStabilizer:
    @pytest.mark.parametrize("k", range(2, 7))
    def test_codespace_is_exactly_the_fixed_subspace(self, k):
        report = stabilizer_check(k)
        assert report.passed
        assert report.generator_error <= 1e-13
        assert report.fixed_subspace_dim == 2

    def test_product_basis_state_is_not_fixed(self):
        # -(XZ x XZ)|00> lands on -|11>, so |00> sits outside the codespace.
        g = -(local_xz(2, 0) @ local_xz(2, 1))
        e00 = np.array([1.0, 0.0, 0.0, 0.0])
        assert np.array_equal(g @ e00, [0.0, 0.0, 0.0, -1.0])
        assert np.abs(g @ e00 - e00).max() > 0.9

    def test_k_out_of_range(self):
        with pytest.raises(ValueError):
            stabilizer_check(1)
        with pytest.raises(ValueError):
            stabilizer_check(7)


class TestStatisticsLocality:
    @pytest.mark.parametrize("dims,seed", [((2, 2), 40), ((2, 3), 41), ((2, 2, 2), 42)])
    def test_local_rotations_and_measurements_agree(self, dims, seed):
        system = PartitionedSystem(dims)
        k = len(dims)
        rng = np.random.default_rng(seed)
        psi = linalg.random_state(system.total_dim, seed=int(rng.integers(2**32)))
        unitaries = [linalg.random_unitary(d, seed=int(rng.integers(2**32))) for d in dims]
        povms = [random_povm(d, 2, int(rng.integers(2**32))) for d in dims]

        phi = psi
        for party, u in enumerate(unitaries):
            phi = embed_complex(u, dims, party) @ phi
        complex_probs = {}
        for outcome in np.ndindex(*(len(p) for p in povms)):
            element = np.eye(1, dtype=complex)
            for party, a in enumerate(outcome):
                element = np.kron(element, povms[party][a])
            complex_probs[outcome] = float(np.vdot(phi, element @ phi).real)

        enc = encode_multipartite_state(multi_state(psi, dims), k)
        v = enc.amplitudes
        for party, u in enumerate(unitaries):
            v = lift_local_operator(u, system, k, party).matrix @ v
        worst = 0.0
        for outcome, p in complex_probs.items():
            w = v
            for party, a in enumerate(outcome):
                w = lift_local_operator(povms[party][a], system, k, party).matrix @ w
            worst = max(worst, abs(float(v @ w) - p))
        assert worst <= 1e-12
