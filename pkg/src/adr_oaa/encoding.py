"""Block encodings: unitaries whose ancilla-|0> block is ``A / alpha``.

The ancilla register is the most significant one, so for a system of
dimension ``N = 2**n`` the encoded block is ``U[:N, :N]`` and the
post-selected amplitudes of a full register state are its first ``N``
entries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .adr import AdrParams, lambdas
from .linalg import as_matrix, as_state, cyclic_shift, kron, spectral_norm, unitarity_error

UNITARITY_ATOL = 1e-12
UNMEASURABLE_PROBABILITY = 1e-300


@dataclass(frozen=True, eq=False)
class BlockEncoding:
    u: np.ndarray
    alpha: float
    m_ancilla: int
    n_system: int

    def __post_init__(self):
        dim = 2 ** (self.m_ancilla + self.n_system)
        if self.u.shape != (dim, dim):
            raise ValueError(f"unitary has shape {self.u.shape}, expected {(dim, dim)}")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        err = unitarity_error(self.u)
        if err > UNITARITY_ATOL:
            raise ValueError(f"encoding is not unitary: ||U^H U - I|| = {err:.3e}")

    @property
    def system_dim(self) -> int:
        return 2**self.n_system

    @property
    def dim(self) -> int:
        return self.u.shape[0]

    @property
    def block(self) -> np.ndarray:
        """Top-left block, equal to ``A / alpha``."""
        n = self.system_dim
        return self.u[:n, :n]

    @property
    def encoded(self) -> np.ndarray:
        """The encoded operator ``A`` itself."""
        return self.alpha * self.block


@dataclass(frozen=True, eq=False)
class PostSelection:
    """Outcome of measuring every ancilla in |0>.

    ``state`` is the normalized system state, or ``None`` when the
    probability is too small to be measured.
    """

    probability: float
    state: np.ndarray | None

    @property
    def measurable(self) -> bool:
        return self.state is not None


def _check_qubit_dim(n_dim: int) -> int:
    n = int(round(np.log2(n_dim)))
    if 2**n != n_dim:
        raise ValueError(f"dimension {n_dim} is not a power of two")
    return n


def dilation_encode(a, alpha: float = 4.0) -> BlockEncoding:
    """One-ancilla unitary dilation of a scaled contraction.

    Builds ``U = [[B, sqrt(I - B B^H)], [sqrt(I - B^H B), -B^H]]`` with
    ``B = a / alpha``. Both square roots come from one SVD of ``B`` so the
    off-diagonal blocks intertwine exactly, which keeps ``U`` unitary to
    rounding even when singular values of ``B`` sit at 1.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got {a.shape}")
    n_sys = _check_qubit_dim(a.shape[0])
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    norm_a = spectral_norm(a)
    if norm_a > alpha * (1 + 1e-12):
        raise ValueError(f"alpha={alpha} is smaller than ||A||={norm_a}; no unitary dilation exists")

    b = a / alpha
    w, s, yh = np.linalg.svd(b)
    s = np.minimum(s, 1.0)
    c = np.sqrt(1.0 - s**2)
    top_right = (w * c) @ w.conj().T
    bottom_left = (yh.conj().T * c) @ yh
    u = np.block([[b, top_right], [bottom_left, -b.conj().T]])
    return BlockEncoding(u=u, alpha=float(alpha), m_ancilla=1, n_system=n_sys)


def _householder_prepare(amplitudes: np.ndarray) -> np.ndarray:
    """Real orthogonal, symmetric matrix whose first column is ``amplitudes``."""
    d = amplitudes.size
    e0 = np.zeros(d)
    e0[0] = 1.0
    w = e0 - amplitudes
    ww = w @ w
    if ww < 1e-30:
        return np.eye(d)
    return np.eye(d) - 2.0 * np.outer(w, w) / ww


def circulant_lcu_encode(p: AdrParams) -> BlockEncoding:
    """Three-ancilla LCU encoding of the ADR step matrix with ``alpha = 4``.

    Ancilla index ``4 * flag + branch``. Branches 0..2 apply
    ``sign(l_i) * {I, C^H, C}``; branch 3 carries the leftover amplitude and
    flips the flag qubit, so it never reaches the all-zero ancilla block.
    """
    lam = np.array(lambdas(p))
    alpha = 4.0
    weights = np.abs(lam) / alpha
    rest = 1.0 - weights.sum()
    if rest < -1e-14:
        raise ValueError(f"|l0|+|l1|+|l2| = {np.abs(lam).sum()} exceeds alpha = 4")
    amps = np.sqrt(np.append(weights, max(rest, 0.0)))
    prep = _householder_prepare(amps)

    n = p.n_dim
    c = cyclic_shift(n)
    ops = (np.eye(n, dtype=np.complex128), c.conj().T, c)
    signs = np.where(lam < 0, -1.0, 1.0)

    select = np.zeros((8 * n, 8 * n), dtype=np.complex128)
    for flag in (0, 1):
        for branch in range(3):
            i = (4 * flag + branch) * n
            select[i:i + n, i:i + n] = signs[branch] * ops[branch]
        src = (4 * flag + 3) * n
        dst = (4 * (1 - flag) + 3) * n
        select[dst:dst + n, src:src + n] = np.eye(n)

    prep_full = kron(np.eye(2), kron(prep, np.eye(n)))
    u = prep_full.conj().T @ select @ prep_full
    return BlockEncoding(u=u, alpha=alpha, m_ancilla=3, n_system=p.n_qubits)


def pad_ancillas(be: BlockEncoding, m_ancilla: int) -> BlockEncoding:
    """Enlarge the ancilla register with identity on new most-significant qubits."""
    extra = m_ancilla - be.m_ancilla
    if extra < 0:
        raise ValueError("cannot shrink the ancilla register")
    if extra == 0:
        return be
    u = kron(np.eye(2**extra), be.u)
    return BlockEncoding(u=u, alpha=be.alpha, m_ancilla=m_ancilla, n_system=be.n_system)


def embed_system(psi, m_ancilla: int) -> np.ndarray:
    """Full-register state ``|0...0>_anc (x) psi``."""
    psi = as_state(psi)
    out = np.zeros(psi.size * 2**m_ancilla, dtype=np.complex128)
    out[: psi.size] = psi
    return out


def apply(be: BlockEncoding, psi) -> np.ndarray:
    """``U (|0...0> (x) psi)``: the first ``N`` columns of ``U`` times ``psi``."""
    psi = as_state(psi)
    if psi.size != be.system_dim:
        raise ValueError(f"state has dimension {psi.size}, expected {be.system_dim}")
    return be.u[:, : be.system_dim] @ psi


def project_success(full, m_ancilla: int) -> PostSelection:
    full = as_state(full)
    blocks = 2**m_ancilla
    if full.size % blocks:
        raise ValueError(f"dimension {full.size} not divisible by 2**{m_ancilla}")
    amp = full[: full.size // blocks]
    prob = float(np.vdot(amp, amp).real)
    if prob < UNMEASURABLE_PROBABILITY:
        return PostSelection(probability=prob, state=None)
    return PostSelection(probability=prob, state=amp / np.sqrt(prob))


def theta_of(be: BlockEncoding, psi) -> float:
    """Angle with ``sin(theta) = ||A psi|| / alpha``."""
    psi = as_state(psi)
    s = np.linalg.norm(be.block @ psi)
    return float(np.arcsin(min(s, 1.0)))
