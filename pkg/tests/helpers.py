"""Independent oracles and generators shared across the test suite.

Everything here is deliberately written against plain numpy, not against
the package under test, so the comparisons stay two-sided.
"""

from __future__ import annotations

import numpy as np


def series_expm(a, terms: int = 30) -> np.ndarray:
    """Truncated Taylor series for the matrix exponential."""
    a = np.asarray(a, dtype=complex)
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for n in range(1, terms + 1):
        term = term @ a / n
        out = out + term
    return out


def eig_expm_hermitian(h, scale=1.0) -> np.ndarray:
    """exp(scale * i * h) for Hermitian h via eigendecomposition."""
    w, v = np.linalg.eigh(np.asarray(h, dtype=complex))
    return (v * np.exp(1j * scale * w)) @ v.conj().T


def random_density(dim: int, seed) -> np.ndarray:
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_povm(dim: int, n_elements: int, seed) -> list:
    """Random POVM: push random positive matrices through S^(-1/2) . S^(-1/2)."""
    rng = np.random.default_rng(seed)
    mats = []
    for _ in range(n_elements):
        g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        mats.append(g @ g.conj().T)
    total = sum(mats)
    w, v = np.linalg.eigh(total)
    inv_sqrt = (v / np.sqrt(w)) @ v.conj().T
    return [inv_sqrt @ m @ inv_sqrt for m in mats]


def chsh_grid_max(points: int = 64) -> float:
    """Best CHSH value over +-1 qubit observables, by batched eigensolve.

    Local rotations bring the first observable of side A to Z and every
    other observable into the ZX great circle, so a dense angle grid with
    that one direction pinned covers every extremal strategy; observables
    proportional to the identity reduce one side to a deterministic sign
    and cannot beat the classical bound.  The grid step 2 pi / points
    keeps the known optimal quarter-turn settings on the grid when
    points is a multiple of 8.
    """
    z = np.array([[1.0, 0.0], [0.0, -1.0]])
    x = np.array([[0.0, 1.0], [1.0, 0.0]])
    angles = np.arange(points) * (2.0 * np.pi / points)

    def on_circle(theta):
        return np.cos(theta)[:, None, None] * z + np.sin(theta)[:, None, None] * x

    a1, b0, b1 = (g.ravel() for g in np.meshgrid(angles, angles, angles, indexing="ij"))
    pa1, pb0, pb1 = on_circle(a1), on_circle(b0), on_circle(b1)

    def pair(p, q):
        return np.einsum("nab,ncd->nacbd", p, q).reshape(-1, 4, 4)

    bell = np.einsum("ab,ncd->nacbd", z, pb0 + pb1).reshape(-1, 4, 4) + pair(pa1, pb0 - pb1)
    return float(np.linalg.eigvalsh(bell)[:, -1].max())


def interleave(z) -> np.ndarray:
    """Reference single-ancilla encoding of a complex vector, index by index."""
    z = np.asarray(z, dtype=complex)
    out = np.zeros(2 * z.size)
    for x in range(z.size):
        out[2 * x] = z[x].real
        out[2 * x + 1] = z[x].imag
    return out


def block_encode(m) -> np.ndarray:
    """Reference operator encoding: entry-by-entry 2x2 block substitution."""
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    out = np.zeros((2 * n, 2 * n))
    for r in range(n):
        for c in range(n):
            a, b = m[r, c].real, m[r, c].imag
            out[2 * r, 2 * c] = a
            out[2 * r, 2 * c + 1] = -b
            out[2 * r + 1, 2 * c] = b
            out[2 * r + 1, 2 * c + 1] = a
    return out
