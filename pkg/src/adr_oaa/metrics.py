"""Scalar diagnostics of amplification distortion.

All state comparisons go through the overlap modulus ``|<beta|omega>|`` and
are therefore blind to global phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .linalg import as_matrix, spectral_norm


@dataclass(frozen=True)
class DistortionRecord:
    eta: float
    k: int
    probability: float
    distance: float
    fidelity: float


@dataclass(frozen=True)
class ErrorModelFit:
    c: float
    residual: float


def eta(a, alpha_norm: float | None = None) -> float:
    """Non-unitarity ``||V^H V - I||`` with ``V = a`` (or ``a / alpha_norm``)."""
    v = as_matrix(a)
    if v.shape[0] != v.shape[1]:
        raise ValueError(f"expected a square matrix, got {v.shape}")
    if alpha_norm is not None:
        v = v / alpha_norm
    return spectral_norm(v.conj().T @ v - np.eye(v.shape[0]))


def _overlap_modulus(beta, omega) -> float:
    return min(1.0, abs(complex(np.vdot(beta, omega))))


def euclidean_distance(beta, omega) -> float:
    """``sqrt(2 (1 - |<beta|omega>|))`` for normalized states.

    Evaluated as ``||beta - e^{i phi} omega||`` with the phase that aligns
    ``omega`` to ``beta``; the closed form loses half the digits near 0.
    """
    beta = np.asarray(beta, dtype=np.complex128)
    omega = np.asarray(omega, dtype=np.complex128)
    c = complex(np.vdot(omega, beta))
    if abs(c) > 0:
        omega = omega * (c / abs(c))
    return float(np.linalg.norm(beta - omega))


def fidelity(beta, omega) -> float:
    return _overlap_modulus(beta, omega) ** 2


def bound_coefficient(theta: float) -> float:
    """``4 sin(theta) cos(theta)^2 / sin(3 theta)``."""
    s3 = math.sin(3 * theta)
    if abs(s3) < 1e-15:
        raise ValueError("sin(3 theta) = 0: distortion bound is singular")
    return 4.0 * math.sin(theta) * math.cos(theta) ** 2 / s3


def f_min(theta: float, eta_value: float) -> float:
    """Lower bound on the fidelity after one OAA step."""
    x = bound_coefficient(theta) * eta_value
    return 1.0 / (1.0 + x * x)


def d_max(theta: float, eta_value: float) -> float:
    """Upper bound on the Euclidean distance after one OAA step."""
    x = bound_coefficient(theta) * eta_value
    return math.sqrt(2.0 * (1.0 - 1.0 / math.sqrt(1.0 + x * x)))


def model_predict(c: float, eta_value: float) -> tuple[float, float]:
    """Distance and fidelity of the linear error model ``(beta + c eta beta_perp) / norm``."""
    if c < 0 or eta_value < 0:
        raise ValueError("c and eta must be non-negative")
    x2 = (c * eta_value) ** 2
    return math.sqrt(2.0 * (1.0 - 1.0 / math.sqrt(1.0 + x2))), 1.0 / (1.0 + x2)


def fit_c(samples: Iterable[tuple[float, float]]) -> ErrorModelFit:
    """Least-squares slope of ``sqrt(1/F - 1) = c eta`` through the origin.

    ``residual`` is the RMS error of the linearized fit over all samples.
    """
    data = np.array(list(samples), dtype=float)
    if data.ndim != 2 or data.shape[1] != 2 or len(data) < 2:
        raise ValueError("need at least two (eta, fidelity) samples")
    etas, fids = data[:, 0], np.clip(data[:, 1], 1e-300, 1.0)
    if np.any(etas < 0):
        raise ValueError("eta must be non-negative")
    denom = float(etas @ etas)
    if denom == 0.0:
        raise ValueError("all samples have eta = 0; c is unidentifiable")
    y = np.sqrt(np.maximum(1.0 / fids - 1.0, 0.0))
    c = max(0.0, float(etas @ y) / denom)
    residual = float(np.sqrt(np.mean((y - c * etas) ** 2)))
    return ErrorModelFit(c=c, residual=residual)
