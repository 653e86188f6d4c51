"""Logical ancilla spread over k qubits and local lifting of party operators.

Storing the encoding ancilla in a k-qubit stabilizer subspace lets each
party act on its own qubit: XZ applied to any single ancilla qubit
performs the logical XZ on the shared two-dimensional codespace, so a
per-party complex operator lifts to a real operator touching only that
party's system factor and that party's ancilla qubit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .encoding import XZ, EncodedState, Layout, PureState
from .linalg import kron


@dataclass(frozen=True)
class LogicalAncilla:
    """Orthonormal basis (zero_state, one_state) of the k-qubit codespace."""

    k: int
    zero_state: np.ndarray
    one_state: np.ndarray


@dataclass(frozen=True)
class PartitionedSystem:
    """Tensor factorization of the system across parties."""

    party_dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.party_dims)
        if not dims or any(d < 2 for d in dims):
            raise ValueError("party_dims must be nonempty with every dimension >= 2")
        object.__setattr__(self, "party_dims", dims)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.party_dims))

    @property
    def parties(self) -> int:
        return len(self.party_dims)


@dataclass(frozen=True)
class LiftedOperator:
    """Real operator local to one party's system factor and ancilla qubit."""

    matrix: np.ndarray
    party: int
    source: np.ndarray
    system: PartitionedSystem
    k: int


@dataclass(frozen=True)
class StabilizerReport:
    k: int
    generator_error: float
    fixed_subspace_dim: int
    passed: bool


def logical_states(k: int) -> LogicalAncilla:
    """Codespace basis on k qubits, indexed by Hamming weight.

    zero_state is supported on even-weight bitstrings with amplitude
    (-1)^(h/2) / sqrt(2^(k-1)); one_state on odd-weight bitstrings with
    amplitude (-1)^((h-1)/2) / sqrt(2^(k-1)).  For k = 1 these are |0>
    and |1> and everything degrades to the single-ancilla encoding.
    """
    if not 1 <= k <= 12:
        raise ValueError(f"k={k} out of range [1, 12]")
    amp = 1.0 / np.sqrt(2.0 ** (k - 1))
    zero = np.zeros(2 ** k)
    one = np.zeros(2 ** k)
    for y in range(2 ** k):
        h = y.bit_count()
        if h % 2 == 0:
            zero[y] = amp * (-1.0) ** (h // 2)
        else:
            one[y] = amp * (-1.0) ** ((h - 1) // 2)
    zero.setflags(write=False)
    one.setflags(write=False)
    return LogicalAncilla(k, zero, one)


def local_xz(k: int, qubit: int) -> np.ndarray:
    """XZ on one ancilla qubit, identity on the other k - 1."""
    if not 1 <= k <= 12:
        raise ValueError(f"k={k} out of range [1, 12]")
    if not 0 <= qubit < k:
        raise ValueError(f"qubit index {qubit} out of range for k={k}")
    return kron(np.eye(2 ** qubit), kron(XZ, np.eye(2 ** (k - 1 - qubit))))


def encode_multipartite_state(psi: PureState, k: int) -> EncodedState:
    """Encode with the k-qubit logical ancilla appended after the system.

    The state must expose one tensor factor per party; real parts ride on
    the logical zero, imaginary parts on the logical one.
    """
    if len(psi.factor_dims) != k:
        raise ValueError(f"state has {len(psi.factor_dims)} factors, expected one per party with k={k}")
    logical = logical_states(k)
    enc = kron(psi.amplitudes.real, logical.zero_state) + kron(psi.amplitudes.imag, logical.one_state)
    return EncodedState(enc, psi.dim, Layout(k))


def _embed(op: np.ndarray, system: PartitionedSystem, party: int) -> np.ndarray:
    before = int(np.prod(system.party_dims[:party]))
    after = int(np.prod(system.party_dims[party + 1:]))
    return kron(np.eye(before), kron(op, np.eye(after)))


def lift_local_operator(m, system: PartitionedSystem, k: int, party: int,
                        layout: Layout | None = None) -> LiftedOperator:
    """Lift a per-party complex operator to the encoded space.

    The real part acts with identity on the ancilla block; the imaginary
    part applies XZ to the party's own ancilla qubit.  Lifts of different
    parties therefore act on disjoint factors and commute.
    """
    if k != system.parties:
        raise ValueError(f"k={k} does not match {system.parties} parties")
    if not 0 <= party < system.parties:
        raise ValueError(f"party index {party} out of range for {system.parties} parties")
    m = np.asarray(m, dtype=complex)
    d = system.party_dims[party]
    if m.shape != (d, d):
        raise ValueError(f"operator shape {m.shape} does not match party dimension {d}")
    layout = Layout(k) if layout is None else layout
    qubit = layout.party_assignment[party]
    mat = kron(_embed(m.real, system, party), np.eye(2 ** k)) \
        + kron(_embed(m.imag, system, party), local_xz(k, qubit))
    return LiftedOperator(mat, party, m, system, k)


def logical_encode_operator(m, k: int, xz_qubit: int = 0) -> np.ndarray:
    """Encode a possibly nonlocal operator against the logical ancilla.

    Any single ancilla qubit realizes the logical XZ on the codespace, so
    one designated qubit carries the whole imaginary part.  On encoded
    states the result agrees with the sum of per-party lifts whenever the
    operator splits into local terms.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"logical_encode_operator requires a square matrix, got shape {m.shape}")
    return kron(m.real, np.eye(2 ** k)) + kron(m.imag, local_xz(k, xz_qubit))


def stabilizer_check(k: int, tol: float = 1e-12) -> StabilizerReport:
    """Verify the codespace is the joint +1 eigenspace of -(XZ)_j (XZ)_l.

    Checks the generator action on both basis states for every pair
    j < l, then brute-forces the joint fixed subspace of the k - 1
    independent generators by a null-space rank computation; its
    dimension must be exactly 2.
    """
    if not 2 <= k <= 6:
        raise ValueError(f"k={k} out of range [2, 6]")
    logical = logical_states(k)
    worst = 0.0
    for j in range(k):
        for l in range(j + 1, k):
            g = -(local_xz(k, j) @ local_xz(k, l))
            for v in (logical.zero_state, logical.one_state):
                worst = max(worst, float(np.max(np.abs(g @ v - v))))
    generators = [-(local_xz(k, 0) @ local_xz(k, j)) for j in range(1, k)]
    stacked = np.vstack([g - np.eye(2 ** k) for g in generators])
    rank = int(np.linalg.matrix_rank(stacked, tol=1e-10))
    dim = 2 ** k - rank
    return StabilizerReport(k, worst, dim, worst <= tol and dim == 2)
