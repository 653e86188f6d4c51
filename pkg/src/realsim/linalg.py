"""Dense linear algebra kernel: tensor products, matrix exponentials,
structural predicates, and seeded random sampling.

Everything downstream treats matrices and vectors as plain numpy arrays,
complex128 on the complex side and float64 on the encoded side.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import expm as _expm

DEFAULT_MAX_DIM = 4096

UNITARY_TOL = 1e-10
HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-8


def _require_square(a: np.ndarray, who: str) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{who} requires a square matrix, got shape {a.shape}")


def kron(a, b, max_dim: int = DEFAULT_MAX_DIM):
    """Kronecker product of two vectors or two matrices, with a size guard."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != b.ndim or a.ndim not in (1, 2):
        raise ValueError(f"kron needs two vectors or two matrices, got shapes {a.shape} and {b.shape}")
    out_shape = tuple(da * db for da, db in zip(a.shape, b.shape))
    if max(out_shape) > max_dim:
        raise ValueError(f"kron output shape {out_shape} exceeds the size cap {max_dim}")
    return np.kron(a, b)


def kron_all(factors, max_dim: int = DEFAULT_MAX_DIM):
    """Left-to-right Kronecker chain; the first factor is most significant."""
    factors = list(factors)
    if not factors:
        raise ValueError("kron_all needs at least one factor")
    out = np.asarray(factors[0])
    for f in factors[1:]:
        out = kron(out, f, max_dim=max_dim)
    return out


def matexp(a: np.ndarray) -> np.ndarray:
    """Matrix exponential via scaling-and-squaring (Pade degree 13)."""
    a = np.asarray(a)
    _require_square(a, "matexp")
    if np.iscomplexobj(a):
        a = a.astype(np.complex128, copy=False)
    else:
        a = a.astype(np.float64, copy=False)
    return _expm(a)


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a).conj().T


def is_unitary(a, tol: float = UNITARY_TOL) -> bool:
    a = np.asarray(a)
    _require_square(a, "is_unitary")
    return bool(np.max(np.abs(dagger(a) @ a - np.eye(a.shape[0]))) <= tol)


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    a = np.asarray(a)
    _require_square(a, "is_hermitian")
    return bool(np.max(np.abs(a - dagger(a))) <= tol)


def is_psd(a, tol: float = PSD_TOL) -> bool:
    """Positive semi-definiteness: Hermitian with eigenvalue floor >= -tol."""
    a = np.asarray(a)
    _require_square(a, "is_psd")
    if not is_hermitian(a, tol):
        return False
    floor = float(np.linalg.eigvalsh((a + dagger(a)) / 2.0).min())
    return floor >= -tol


def random_state(dim: int, seed) -> np.ndarray:
    """Unit-norm complex vector with Gaussian entries, deterministic per seed."""
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_unitary(dim: int, seed) -> np.ndarray:
    """Haar-distributed unitary from the QR factorization of a Ginibre matrix.

    The R diagonal is rephased to unit modulus so the distribution is
    actually Haar and the factorization is unique.
    """
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_hermitian(dim: int, seed) -> np.ndarray:
    """Hermitian matrix with Gaussian entries, deterministic per seed."""
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (g + g.conj().T) / 2.0
