"""Real-amplitude encoding of complex states and operators.

A complex amplitude a + i b is split across an extra qubit: a rides with
ancilla |0> and b with ancilla |1>.  The ancilla is the least significant
tensor factor, so a complex vector of length n becomes the real vector
[a_0, b_0, a_1, b_1, ...] of length 2n, and each complex matrix entry
a + i b becomes the 2x2 block a*I + b*XZ at the matching position.  Here
XZ = [[0, -1], [1, 0]] is the quarter-turn rotation standing in for
multiplication by i; the map is an algebra homomorphism, and encoded
inner products recover the real part of the complex ones.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import dagger, is_unitary, kron

NORM_TOL = 1e-10
EQ_TOL = 1e-12
PSD_TOL = 1e-8

XZ = np.array([[0.0, -1.0], [1.0, 0.0]])
XZ.setflags(write=False)

_Z = np.array([[1.0, 0.0], [0.0, -1.0]])
_Z.setflags(write=False)


def xz() -> np.ndarray:
    """The 2x2 block that plays the role of multiplication by i."""
    return XZ.copy()


@dataclass(frozen=True)
class Layout:
    """Ancilla arrangement: k ancilla qubits appended after the system.

    k = 1 is the plain single-ancilla encoding.  For k > 1 the ancillas
    carry the two-dimensional logical subspace built in `multipartite`,
    and party_assignment records which ancilla qubit each party holds.
    """

    k: int = 1
    party_assignment: tuple[int, ...] | None = None

    def __post_init__(self):
        if not 1 <= self.k <= 12:
            raise ValueError(f"ancilla count k={self.k} out of range [1, 12]")
        pa = self.party_assignment
        pa = tuple(range(self.k)) if pa is None else tuple(int(q) for q in pa)
        if sorted(pa) != list(range(self.k)):
            raise ValueError(f"party_assignment {pa} is not a permutation of 0..{self.k - 1}")
        object.__setattr__(self, "party_assignment", pa)

    @property
    def ancilla_dim(self) -> int:
        return 2 ** self.k


SINGLE_ANCILLA = Layout(1)


@dataclass(frozen=True)
class PureState:
    """Unit-norm complex state vector with its tensor-factor dimensions."""

    amplitudes: np.ndarray
    factor_dims: tuple[int, ...] | None = None

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size == 0:
            raise ValueError("amplitudes must form a nonempty 1-d vector")
        if not np.all(np.isfinite(amps.view(float))):
            raise ValueError("amplitudes must be finite")
        dims = self.factor_dims
        dims = (amps.size,) if dims is None else tuple(int(d) for d in dims)
        if int(np.prod(dims)) != amps.size:
            raise ValueError(f"factor_dims {dims} do not multiply to dimension {amps.size}")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm} is not 1 within {NORM_TOL}; inputs are never renormalized")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "factor_dims", dims)

    @property
    def dim(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True)
class EncodedState:
    """Real-amplitude image of a pure state on the doubled space."""

    amplitudes: np.ndarray
    source_dim: int
    layout: Layout = SINGLE_ANCILLA

    def __post_init__(self):
        amps = np.asarray(self.amplitudes)
        if np.iscomplexobj(amps):
            if np.any(amps.imag != 0.0):
                raise ValueError("encoded amplitudes must have imaginary part exactly zero")
            amps = amps.real
        amps = np.array(amps, dtype=float)
        if amps.ndim != 1:
            raise ValueError("encoded amplitudes must form a 1-d vector")
        expected = int(self.source_dim) * self.layout.ancilla_dim
        if amps.size != expected:
            raise ValueError(f"encoded dimension {amps.size} does not match source_dim {self.source_dim} with k={self.layout.k}")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"encoded norm {norm} is not 1 within {NORM_TOL}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "source_dim", int(self.source_dim))

    @property
    def dim(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True)
class EncodedOperator:
    """Real matrix acting on encoded states."""

    matrix: np.ndarray
    source_dim: int
    layout: Layout = SINGLE_ANCILLA

    def __post_init__(self):
        mat = np.asarray(self.matrix)
        if np.iscomplexobj(mat):
            if np.any(mat.imag != 0.0):
                raise ValueError("encoded operator entries must have imaginary part exactly zero")
            mat = mat.real
        mat = np.array(mat, dtype=float)
        expected = int(self.source_dim) * self.layout.ancilla_dim
        if mat.shape != (expected, expected):
            raise ValueError(f"encoded operator shape {mat.shape} does not match source_dim {self.source_dim} with k={self.layout.k}")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "source_dim", int(self.source_dim))


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, unit-trace, positive semi-definite complex matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {mat.shape}")
        if np.max(np.abs(mat - dagger(mat))) > NORM_TOL:
            raise ValueError("density matrix is not Hermitian")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > NORM_TOL:
            raise ValueError(f"density matrix trace {tr} is not 1")
        floor = float(np.linalg.eigvalsh((mat + dagger(mat)) / 2.0).min())
        if floor < -PSD_TOL:
            raise ValueError(f"density matrix has eigenvalue {floor} below the PSD floor")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class GaugeOrbit:
    """Two orthogonal encodings of one state, spanning its phase orbit."""

    phi1: EncodedState
    phi2: EncodedState

    def __post_init__(self):
        if self.phi1.dim != self.phi2.dim or self.phi1.source_dim != self.phi2.source_dim:
            raise ValueError("orbit members must share dimensions")
        overlap = float(np.dot(self.phi1.amplitudes, self.phi2.amplitudes))
        if abs(overlap) > NORM_TOL:
            raise ValueError(f"orbit members are not orthogonal, overlap {overlap}")


@dataclass(frozen=True)
class Povm:
    """Finite POVM: positive elements summing to the identity."""

    elements: tuple[np.ndarray, ...]

    def __post_init__(self):
        elems = []
        for e in self.elements:
            e = np.array(e, dtype=complex)
            if e.ndim != 2 or e.shape[0] != e.shape[1]:
                raise ValueError(f"POVM element must be square, got shape {e.shape}")
            e.setflags(write=False)
            elems.append(e)
        if not elems:
            raise ValueError("POVM needs at least one element")
        dim = elems[0].shape[0]
        total = np.zeros((dim, dim), dtype=complex)
        for e in elems:
            if e.shape[0] != dim:
                raise ValueError("POVM elements must share one dimension")
            if np.max(np.abs(e - dagger(e))) > PSD_TOL:
                raise ValueError("POVM element is not Hermitian")
            floor = float(np.linalg.eigvalsh((e + dagger(e)) / 2.0).min())
            if floor < -PSD_TOL:
                raise ValueError(f"POVM element has eigenvalue {floor} below the PSD floor")
            total += e
        if np.max(np.abs(total - np.eye(dim))) > NORM_TOL:
            raise ValueError("POVM elements do not sum to the identity")
        object.__setattr__(self, "elements", tuple(elems))

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]


def encode_state(psi: PureState) -> EncodedState:
    """Map sum (a_x + i b_x)|x> to sum a_x |x>|0> + b_x |x>|1>."""
    out = np.empty(2 * psi.dim)
    out[0::2] = psi.amplitudes.real
    out[1::2] = psi.amplitudes.imag
    return EncodedState(out, psi.dim)


def decode_state(enc: EncodedState) -> np.ndarray:
    """Read the complex amplitudes back out of an encoded state."""
    pairs = enc.amplitudes.reshape(enc.source_dim, enc.layout.ancilla_dim)
    if enc.layout.k == 1:
        return pairs[:, 0] + 1j * pairs[:, 1]
    # project onto the logical codespace basis
    from .multipartite import logical_states

    logical = logical_states(enc.layout.k)
    return pairs @ logical.zero_state + 1j * (pairs @ logical.one_state)


def encode_operator(m) -> EncodedOperator:
    """Per-entry block substitution a + i b -> a*I + b*XZ.

    The result is an algebra homomorphism image: sums, products and
    daggers commute with the encoding.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"encode_operator requires a square matrix, got shape {m.shape}")
    mat = kron(m.real, np.eye(2)) + kron(m.imag, XZ)
    return EncodedOperator(mat, m.shape[0])


def encode_density(rho: DensityOperator) -> np.ndarray:
    """Encoded density operator: half the operator encoding of rho.

    The factor 2 restores unit trace; ranks double, so a pure state maps
    to the rank-2 average over its phase orbit.
    """
    return encode_operator(rho.matrix).matrix / 2.0


def gauge_orbit(psi: PureState) -> GaugeOrbit:
    """The orthogonal pair of encodings spanning the global-phase orbit.

    phi1 encodes psi itself, phi2 encodes i*psi; the encoding of any
    e^{i alpha} psi is cos(alpha) phi1 + sin(alpha) phi2.
    """
    rotated = PureState(1j * psi.amplitudes, psi.factor_dims)
    return GaugeOrbit(encode_state(psi), encode_state(rotated))


def real_inner_product(psi: PureState, phi: PureState) -> float:
    """Inner product of the encodings; equals Re<psi|phi> of the sources."""
    if psi.dim != phi.dim:
        raise ValueError(f"dimension mismatch: {psi.dim} vs {phi.dim}")
    enc = float(np.dot(encode_state(psi).amplitudes, encode_state(phi).amplitudes))
    direct = float(np.vdot(psi.amplitudes, phi.amplitudes).real)
    if abs(enc - direct) > EQ_TOL:
        raise ValueError(f"encoded inner product {enc} deviates from the complex real part {direct}")
    return enc


def povm_probabilities(state, povm: Povm) -> np.ndarray:
    """Outcome distribution of a POVM on a pure or mixed state."""
    if isinstance(state, PureState):
        if state.dim != povm.dim:
            raise ValueError(f"state dimension {state.dim} does not match POVM dimension {povm.dim}")
        v = state.amplitudes
        return np.array([float(np.vdot(v, e @ v).real) for e in povm.elements])
    if isinstance(state, DensityOperator):
        if state.dim != povm.dim:
            raise ValueError(f"state dimension {state.dim} does not match POVM dimension {povm.dim}")
        return np.array([float(np.trace(e @ state.matrix).real) for e in povm.elements])
    raise ValueError(f"expected PureState or DensityOperator, got {type(state).__name__}")


def encoded_povm_probabilities(encoded, encoded_povm) -> np.ndarray:
    """Outcome distribution computed entirely on the encoded side.

    Accepts an EncodedState or an encoded density matrix as produced by
    encode_density, and a list of EncodedOperator elements.
    """
    elems = list(encoded_povm)
    if not elems:
        raise ValueError("encoded POVM needs at least one element")
    for e in elems:
        if not isinstance(e, EncodedOperator):
            raise ValueError(f"expected EncodedOperator elements, got {type(e).__name__}")
        if e.source_dim != elems[0].source_dim or e.layout != elems[0].layout:
            raise ValueError("encoded POVM elements disagree on layout")
    if isinstance(encoded, EncodedState):
        if encoded.source_dim != elems[0].source_dim or encoded.layout != elems[0].layout:
            raise ValueError("encoded state layout does not match the encoded POVM")
        v = encoded.amplitudes
        return np.array([float(v @ (e.matrix @ v)) for e in elems])
    rho = np.asarray(encoded)
    if np.iscomplexobj(rho) and np.any(rho.imag != 0.0):
        raise ValueError("encoded density matrix must be real")
    rho = rho.real if np.iscomplexobj(rho) else rho
    if rho.shape != elems[0].matrix.shape:
        raise ValueError(f"encoded density shape {rho.shape} does not match the encoded POVM")
    return np.array([float(np.trace(e.matrix @ rho)) for e in elems])


def _channel_matrices(channel, dim: int | None = None) -> list[np.ndarray]:
    ks = [np.asarray(k, dtype=complex) for k in channel]
    if not ks:
        raise ValueError("channel needs at least one Kraus operator")
    d = ks[0].shape[0] if dim is None else dim
    total = np.zeros((d, d), dtype=complex)
    for k in ks:
        if k.ndim != 2 or k.shape != (d, d):
            raise ValueError(f"Kraus operator shape {k.shape} does not match dimension {d}")
        total += dagger(k) @ k
    if np.max(np.abs(total - np.eye(d))) > NORM_TOL:
        raise ValueError("Kraus operators do not compose a trace-preserving channel")
    return ks


def apply_kraus(channel, rho: DensityOperator) -> DensityOperator:
    """Apply a trace-preserving Kraus channel to a density operator."""
    ks = _channel_matrices(channel, rho.dim)
    out = np.zeros_like(rho.matrix)
    for k in ks:
        out = out + k @ rho.matrix @ dagger(k)
    return DensityOperator(out)


def encode_kraus(channel) -> list[EncodedOperator]:
    """Encode every Kraus operator; the real channel acts by conjugation."""
    return [encode_operator(k) for k in _channel_matrices(channel)]


def conjugation_operator(dim: int) -> EncodedOperator:
    """Entry-wise complex conjugation: Z on the ancilla qubit."""
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    return EncodedOperator(kron(np.eye(dim), _Z), dim)


def encode_antiunitary(u) -> EncodedOperator:
    """Encoding of psi -> u conj(psi) for a unitary u."""
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"encode_antiunitary requires a square matrix, got shape {u.shape}")
    if not is_unitary(u, NORM_TOL):
        raise ValueError("encode_antiunitary requires a unitary matrix")
    n = u.shape[0]
    return EncodedOperator(encode_operator(u).matrix @ conjugation_operator(n).matrix, n)
