"""Explicit-Euler discretization of the 1-D periodic advection-diffusion-reaction equation.

The step matrix is the banded circulant

    A = l0 I + l1 C^H + l2 C,     C e_j = e_{j+1 mod N},

i.e. ``(A phi)_j = l0 phi_j + l1 phi_{j+1} + l2 phi_{j-1}``, with ``l1`` on the
superdiagonal and bottom-left corner and ``l2`` on the subdiagonal and
top-right corner.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .linalg import as_state, cyclic_shift


class CflError(ValueError):
    """Courant numbers violate the explicit-scheme stability bounds."""


@dataclass(frozen=True)
class AdrParams:
    gamma_d: float
    gamma_a: float
    gamma_r: float
    n_qubits: int

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be >= 1")
        for name in ("gamma_d", "gamma_a", "gamma_r"):
            val = getattr(self, name)
            if not np.isfinite(val) or val < 0:
                raise CflError(f"{name}={val} must be a finite non-negative number")
        if self.gamma_d > 0.5:
            raise CflError(f"CFL violated: gamma_d={self.gamma_d} > 1/2")
        if self.gamma_a > 1.0:
            raise CflError(f"CFL violated: gamma_a={self.gamma_a} > 1")
        if self.gamma_r > 1.0:
            raise CflError(f"CFL violated: gamma_r={self.gamma_r} > 1")

    @property
    def n_dim(self) -> int:
        return 2**self.n_qubits

    @property
    def courant(self) -> tuple[float, float, float]:
        return (self.gamma_d, self.gamma_a, self.gamma_r)


@dataclass(frozen=True)
class PhysicalParams:
    diffusion: float
    velocity: float
    reaction: float
    dx: float
    dt: float

    def __post_init__(self):
        if not self.dx > 0 or not self.dt > 0:
            raise ValueError("dx and dt must be positive")


def courant_from_physical(p: PhysicalParams, n_qubits: int) -> AdrParams:
    """Courant numbers ``(dt D / dx^2, dt U / dx, a dt)``; raises ``CflError`` if unstable."""
    return AdrParams(
        gamma_d=p.dt * p.diffusion / p.dx**2,
        gamma_a=p.dt * p.velocity / p.dx,
        gamma_r=p.reaction * p.dt,
        n_qubits=n_qubits,
    )


def lambdas(p: AdrParams) -> tuple[float, float, float]:
    l0 = 1.0 - 2.0 * p.gamma_d - p.gamma_r
    l1 = p.gamma_d - p.gamma_a / 2.0
    l2 = p.gamma_d + p.gamma_a / 2.0
    return l0, l1, l2


def build_adr_matrix(p: AdrParams) -> np.ndarray:
    l0, l1, l2 = lambdas(p)
    c = cyclic_shift(p.n_dim)
    return l0 * np.eye(p.n_dim, dtype=np.complex128) + l1 * c.conj().T + l2 * c


def circulant_spectrum(p: AdrParams) -> np.ndarray:
    """Eigenvalues ``l0 + l1 w^j + l2 w^-j`` (``w = exp(2 pi i / N)``) of the step matrix."""
    l0, l1, l2 = lambdas(p)
    w = np.exp(2j * np.pi * np.arange(p.n_dim) / p.n_dim)
    return l0 + l1 * w + l2 / w


def scale_time(p: AdrParams, t_scale: float) -> AdrParams:
    """Shrink the time step by ``t_scale``; all Courant numbers scale linearly."""
    if not 0.0 < t_scale <= 1.0:
        raise ValueError(f"t_scale={t_scale} must lie in (0, 1]")
    return replace(
        p,
        gamma_d=p.gamma_d * t_scale,
        gamma_a=p.gamma_a * t_scale,
        gamma_r=p.gamma_r * t_scale,
    )


def classical_step(p: AdrParams, phi, steps: int = 1) -> np.ndarray:
    """Apply ``steps`` forward-Euler updates with the stencil directly (no matrix).

    Returns the unnormalized field; serves as the ground truth the quantum
    pipeline is compared against.
    """
    phi = as_state(phi)
    if phi.size != p.n_dim:
        raise ValueError(f"state has dimension {phi.size}, expected {p.n_dim}")
    if steps < 0:
        raise ValueError("steps must be >= 0")
    l0, l1, l2 = lambdas(p)
    out = phi.copy()
    for _ in range(steps):
        out = l0 * out + l1 * np.roll(out, -1) + l2 * np.roll(out, 1)
    return out


def advection_only_estimate(p: AdrParams, phi) -> np.ndarray:
    """Cheap estimate of the next state: one pure-advection step, normalized."""
    adv = replace(p, gamma_d=0.0, gamma_r=0.0)
    out = build_adr_matrix(adv) @ as_state(phi)
    nrm = np.linalg.norm(out)
    if nrm == 0.0:
        raise ValueError("advection-only step produced the zero vector")
    return out / nrm
