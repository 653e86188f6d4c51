"""A real simulation that defeats naive self-testing claims.

An entangled qubit pair is pushed through a single-qubit gate on side A
and the compensating conjugate gate on side B.  The same protocol is run
on the real encoded side with one ancilla qubit per party, using only
operators local to each party.  Every joint outcome of an
informationally complete probe measurement matches, so no statistics
distinguish the two realizations, yet the encoded states are not the
logical ones in disguise: encoded inner products only recover real
parts, which the witness pair exposes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..encoding import PureState, real_inner_product
from ..linalg import is_unitary, kron
from ..multipartite import PartitionedSystem, encode_multipartite_state, lift_local_operator

STAT_TOL = 1e-12

_S2 = np.sqrt(0.5)
_PROBE_STATES = (
    np.array([1.0, 0.0], dtype=complex),
    np.array([0.0, 1.0], dtype=complex),
    np.array([_S2, _S2], dtype=complex),
    np.array([_S2, -_S2], dtype=complex),
    np.array([_S2, 1j * _S2]),
    np.array([_S2, -1j * _S2]),
)
_PROBE_LABELS = ("z+", "z-", "x+", "x-", "y+", "y-")


@dataclass(frozen=True)
class InnerProductWitness:
    """State pair whose encoded inner product loses the complex phase."""

    state_a: np.ndarray
    state_b: np.ndarray
    real_part: float
    modulus: float


@dataclass(frozen=True)
class SelfTestTranscript:
    statistics_logical: np.ndarray
    statistics_simulated: np.ndarray
    max_stat_gap: float
    inner_product_witness: InnerProductWitness
    states_logical: tuple[np.ndarray, ...]
    states_simulated: tuple[np.ndarray, ...]
    product_state_gap: float


def probe_povm() -> list[np.ndarray]:
    """Informationally complete six-element POVM from the axis eigenstates."""
    return [np.outer(p, p.conj()) / 3.0 for p in _PROBE_STATES]


def _product_gap(v: np.ndarray) -> float:
    """Distance from the best product state across the system/ancilla cut.

    Computed from the Schmidt tail directly; 1 - s0^2 would square away
    the precision right where factorization holds.
    """
    s = np.linalg.svd(v.reshape(4, 4), compute_uv=False)
    return float(np.sqrt(np.sum(s[1:] ** 2)))


def selftest_counterexample(t_gate: np.ndarray | None = None) -> SelfTestTranscript:
    """Run the protocol with gate T and its local real simulation.

    Stages: the entangled pair, the pair after T on side A, and the pair
    after the conjugate gate on side B (which returns it).  All 36 joint
    outcomes of the six-element probe POVM are compared per stage.  The
    witness pair is ((|0>+|1>)/sqrt2, T (|0>+|1>)/sqrt2); for a T with
    complex entries its encoded inner product falls short of the modulus.
    """
    t = np.array([[1.0, 0.0], [0.0, 1.0j]] if t_gate is None else t_gate, dtype=complex)
    if t.shape != (2, 2):
        raise ValueError(f"t_gate must be 2x2, got shape {t.shape}")
    if not is_unitary(t, 1e-10):
        raise ValueError("t_gate must be unitary")

    phi_plus = np.zeros(4, dtype=complex)
    phi_plus[0] = phi_plus[3] = _S2
    states_logical = (
        phi_plus,
        kron(t, np.eye(2)) @ phi_plus,
        kron(t, t.conj()) @ phi_plus,
    )

    system = PartitionedSystem((2, 2))
    enc0 = encode_multipartite_state(PureState(phi_plus, (2, 2)), 2)
    gate_a = lift_local_operator(t, system, 2, 0).matrix
    gate_b = lift_local_operator(t.conj(), system, 2, 1).matrix
    states_simulated = (
        enc0.amplitudes,
        gate_a @ enc0.amplitudes,
        gate_b @ (gate_a @ enc0.amplitudes),
    )

    povm = probe_povm()
    lifted_a = [lift_local_operator(e, system, 2, 0).matrix for e in povm]
    lifted_b = [lift_local_operator(e, system, 2, 1).matrix for e in povm]

    stats_logical = np.zeros((3, 6, 6))
    stats_simulated = np.zeros((3, 6, 6))
    for stage in range(3):
        zl = states_logical[stage]
        zs = states_simulated[stage]
        for a in range(6):
            for b in range(6):
                joint = kron(povm[a], povm[b])
                stats_logical[stage, a, b] = float(np.vdot(zl, joint @ zl).real)
                stats_simulated[stage, a, b] = float(zs @ (lifted_a[a] @ (lifted_b[b] @ zs)))
    gap = float(np.max(np.abs(stats_logical - stats_simulated)))

    plus = np.array([_S2, _S2], dtype=complex)
    t_plus = t @ plus
    witness = InnerProductWitness(
        plus,
        t_plus,
        real_inner_product(PureState(plus), PureState(t_plus)),
        float(abs(np.vdot(plus, t_plus))),
    )

    return SelfTestTranscript(
        stats_logical,
        stats_simulated,
        gap,
        witness,
        states_logical,
        states_simulated,
        max(_product_gap(v) for v in states_simulated),
    )
