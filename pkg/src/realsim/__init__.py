"""Simulate complex-amplitude quantum mechanics with real amplitudes only.

One extra qubit per system (or per party) absorbs the imaginary parts:
states double in length, operators double in each dimension, and the
whole calculus of unitaries, POVMs, channels and Schroedinger evolution
goes through with purely real matrices.
"""

__version__ = "0.1.0"

from .dynamics import EvolutionResult, Hamiltonian, commutation_check, evolve, generator, trajectory
from .encoding import (
    SINGLE_ANCILLA,
    XZ,
    DensityOperator,
    EncodedOperator,
    EncodedState,
    GaugeOrbit,
    Layout,
    Povm,
    PureState,
    apply_kraus,
    conjugation_operator,
    decode_state,
    encode_antiunitary,
    encode_density,
    encode_kraus,
    encode_operator,
    encode_state,
    encoded_povm_probabilities,
    gauge_orbit,
    povm_probabilities,
    real_inner_product,
    xz,
)
from .linalg import (
    dagger,
    is_hermitian,
    is_psd,
    is_unitary,
    kron,
    matexp,
    random_hermitian,
    random_state,
    random_unitary,
)
from .multipartite import (
    LiftedOperator,
    LogicalAncilla,
    PartitionedSystem,
    StabilizerReport,
    encode_multipartite_state,
    lift_local_operator,
    local_xz,
    logical_encode_operator,
    logical_states,
    stabilizer_check,
)
from .applications import (
    BellResult,
    BellScenario,
    InnerProductWitness,
    SelfTestTranscript,
    bell_value,
    chsh_scenario,
    ghz3_state,
    mermin3_scenario,
    optimize_bell,
    phi_plus_state,
    selftest_counterexample,
)
