"""Dense complex linear algebra used by every other module.

Matrices and state vectors are plain ``numpy.ndarray`` objects with dtype
``complex128``. Register ordering is big-endian: in ``kron(a, b)`` the
indices of ``a`` are the most significant, so an ancilla register placed
first occupies the high-order index positions.
"""

from __future__ import annotations

import numpy as np

NORM_ATOL = 1e-12


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a finite 2-D complex array, raising ``ValueError`` otherwise."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def as_state(v) -> np.ndarray:
    arr = np.asarray(v, dtype=np.complex128)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError(f"expected a non-empty 1-D state vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("state vector has non-finite entries")
    return arr


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a, dtype=np.complex128).conj().T


def kron(a, b) -> np.ndarray:
    """Tensor product with the indices of ``a`` most significant."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def spectral_norm(m) -> float:
    """Largest singular value of ``m``.

    Raises ``ValueError`` on non-finite entries.
    """
    return float(np.linalg.norm(as_matrix(m), 2))


def unitarity_error(u) -> float:
    """``||U^H U - I||`` in the spectral norm."""
    u = as_matrix(u)
    if u.shape[0] != u.shape[1]:
        raise ValueError(f"unitary must be square, got {u.shape}")
    return spectral_norm(u.conj().T @ u - np.eye(u.shape[0]))


def is_unitary(u, atol: float = NORM_ATOL) -> bool:
    return unitarity_error(u) <= atol


def cyclic_shift(n_dim: int) -> np.ndarray:
    """Cyclic shift ``C`` with ``C e_j = e_{(j+1) mod N}``."""
    if n_dim < 2:
        raise ValueError("cyclic shift needs n_dim >= 2")
    c = np.zeros((n_dim, n_dim), dtype=np.complex128)
    idx = np.arange(n_dim)
    c[(idx + 1) % n_dim, idx] = 1.0
    return c


def basis_state(n_dim: int, index: int) -> np.ndarray:
    if not 0 <= index < n_dim:
        raise ValueError(f"basis index {index} out of range for dimension {n_dim}")
    e = np.zeros(n_dim, dtype=np.complex128)
    e[index] = 1.0
    return e


def uniform_state(n_dim: int) -> np.ndarray:
    return np.full(n_dim, 1.0 / np.sqrt(n_dim), dtype=np.complex128)


def norm(v) -> float:
    return float(np.linalg.norm(v))


def normalize(v) -> np.ndarray:
    v = as_state(v)
    nrm = np.linalg.norm(v)
    if nrm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return v / nrm


def is_normalized(v, atol: float = NORM_ATOL) -> bool:
    return abs(np.linalg.norm(v) - 1.0) <= atol


def overlap(a, b) -> complex:
    """Inner product ``<a|b>`` (antilinear in ``a``)."""
    return complex(np.vdot(a, b))


def haar_state(n_dim: int, seed: int) -> np.ndarray:
    """Haar-random pure state of dimension ``n_dim``.

    Normalizes a vector of i.i.d. standard complex Gaussians drawn from a
    PCG64 generator seeded with ``seed`` (any unsigned 64-bit integer). The
    same seed always yields the same vector.
    """
    if n_dim < 1:
        raise ValueError("n_dim must be positive")
    if seed < 0 or seed >= 2**64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n_dim) + 1j * rng.standard_normal(n_dim)
    return v / np.linalg.norm(v)
