"""Amplitude-amplification strategies on dense block encodings.

Every strategy acts on the full register state ``U (|0> (x) psi)`` and is
recorded as a trace of iterates ``k = 0 .. k_max``; iterate ``k`` carries
the post-selected system state and its distance/fidelity to the exact
normalized update ``A psi / ||A psi||``.

Two conventions for the "ideal" operator ``V`` appear below:

* ``"normalized"``: ``V = A / (alpha sin(theta))`` with
  ``sin(theta) = ||A psi|| / alpha``, so ``V psi`` is a unit vector;
* ``"fixed"``: ``V = A`` and ``sin(theta) = 1 / alpha``.

The OAA operator identity (``modstate_oracle``) uses the fixed one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .encoding import (
    BlockEncoding,
    PostSelection,
    apply,
    dilation_encode,
    embed_system,
    project_success,
)
from .linalg import as_state, normalize, spectral_norm
from .metrics import euclidean_distance, fidelity

PI3_PHASE = np.exp(1j * np.pi / 3)

STRATEGIES = ("none", "oaa", "pi3", "approx-reflection", "w-variant")

REFLECTION_KINDS = (
    "about-ancilla-zero",
    "negated-ancilla-zero",
    "about-state",
    "pi3-phase-source",
    "pi3-phase-target",
)


def default_k_max(m_ancilla: int) -> int:
    return math.ceil(math.sqrt(2**m_ancilla))


@dataclass(frozen=True, eq=False)
class ReflectionSpec:
    kind: str
    reference_state: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in REFLECTION_KINDS:
            raise ValueError(f"unknown reflection kind {self.kind!r}")
        if self.kind in ("about-state", "pi3-phase-source") and self.reference_state is None:
            raise ValueError(f"{self.kind} needs a reference state")

    def matrix(self, dim: int, system_dim: int) -> np.ndarray:
        """Dense operator on a register of size ``dim`` whose ancilla-|0> block has size ``system_dim``."""
        eye = np.eye(dim, dtype=np.complex128)
        if self.kind in ("about-ancilla-zero", "negated-ancilla-zero", "pi3-phase-target"):
            proj = np.zeros((dim, dim), dtype=np.complex128)
            proj[:system_dim, :system_dim] = np.eye(system_dim)
        else:
            ref = as_state(self.reference_state)
            if ref.size != dim:
                raise ValueError(f"reference state has dimension {ref.size}, expected {dim}")
            ref = normalize(ref)
            proj = np.outer(ref, ref.conj())

        if self.kind == "about-ancilla-zero":
            return 2 * proj - eye
        if self.kind == "negated-ancilla-zero":
            return eye - 2 * proj
        if self.kind == "about-state":
            return 2 * proj - eye
        return eye - (1 - PI3_PHASE) * proj


def ancilla_reflection(be: BlockEncoding) -> np.ndarray:
    """``R = 2P - I`` with ``P = |0><0| (x) I``."""
    return ReflectionSpec("about-ancilla-zero").matrix(be.dim, be.system_dim)


@dataclass(frozen=True, eq=False)
class OaaIterate:
    k: int
    full_state: np.ndarray
    post: PostSelection
    distance: float
    fidelity: float

    @property
    def probability(self) -> float:
        return self.post.probability


@dataclass(eq=False)
class StrategyReport:
    strategy: str
    exact_reference: np.ndarray
    trace: list[OaaIterate] = field(default_factory=list)

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([it.probability for it in self.trace])

    @property
    def distances(self) -> np.ndarray:
        return np.array([it.distance for it in self.trace])

    @property
    def fidelities(self) -> np.ndarray:
        return np.array([it.fidelity for it in self.trace])


def _iterate(
    be: BlockEncoding,
    beta: np.ndarray,
    states: Sequence[np.ndarray],
) -> list[OaaIterate]:
    out = []
    for k, x in enumerate(states):
        post = project_success(x, be.m_ancilla)
        if post.measurable:
            d, f = euclidean_distance(beta, post.state), fidelity(beta, post.state)
        else:
            d, f = float("nan"), float("nan")
        out.append(OaaIterate(k=k, full_state=x, post=post, distance=d, fidelity=f))
    return out


def _power_trace(op: np.ndarray, x0: np.ndarray, k_max: int) -> list[np.ndarray]:
    states = [x0]
    for _ in range(k_max):
        states.append(op @ states[-1])
    return states


def exact_reference(be: BlockEncoding, psi) -> np.ndarray:
    return normalize(be.encoded @ as_state(psi))


def _check_input(be: BlockEncoding, psi) -> np.ndarray:
    psi = as_state(psi)
    if psi.size != be.system_dim:
        raise ValueError(f"state has dimension {psi.size}, expected {be.system_dim}")
    return psi


def build_S(be: BlockEncoding) -> np.ndarray:
    """Oblivious amplification step ``S = -U R U^H R``."""
    r = ancilla_reflection(be)
    return -be.u @ r @ be.u.conj().T @ r


def oaa_run(
    be: BlockEncoding, psi, k_max: int | None = None, s: np.ndarray | None = None
) -> StrategyReport:
    """Apply ``S`` ``k_max`` times to ``U |0> psi``.

    ``s`` may carry a precomputed ``build_S(be)`` when many states share one
    encoding.
    """
    psi = _check_input(be, psi)
    k_max = default_k_max(be.m_ancilla) if k_max is None else k_max
    beta = exact_reference(be, psi)
    s = build_S(be) if s is None else s
    states = _power_trace(s, apply(be, psi), k_max)
    return StrategyReport("oaa", beta, _iterate(be, beta, states))


def no_amplification(be: BlockEncoding, psi) -> StrategyReport:
    psi = _check_input(be, psi)
    beta = exact_reference(be, psi)
    return StrategyReport("none", beta, _iterate(be, beta, [apply(be, psi)]))


def modstate_oracle(a, alpha: float, psi) -> np.ndarray:
    """Closed form of the projected one-step OAA output, ``(3/s) V psi - (4/s^3) V V^H V psi``.

    ``V = a``, ``s = alpha``. This is exact for every ``alpha``, not only
    near ``alpha = 2``. The result is unnormalized.
    """
    a = np.asarray(a, dtype=np.complex128)
    psi = as_state(psi)
    v_psi = a @ psi
    return (3.0 / alpha) * v_psi - (4.0 / alpha**3) * (a @ (a.conj().T @ v_psi))


@dataclass(frozen=True, eq=False)
class _Frame:
    sin: float
    cos: float
    v: np.ndarray
    psi_full: np.ndarray
    phi: np.ndarray
    phi_perp: np.ndarray


def _frame(be: BlockEncoding, psi, convention: str) -> _Frame:
    psi = _check_input(be, psi)
    a = be.encoded
    if convention == "normalized":
        sin = float(np.linalg.norm(a @ psi)) / be.alpha
        v = a / (be.alpha * sin)
    elif convention == "fixed":
        sin = 1.0 / be.alpha
        v = a
    else:
        raise ValueError(f"unknown convention {convention!r}")
    cos = math.sqrt(max(0.0, 1.0 - sin**2))
    if cos < 1e-15:
        raise ValueError("degenerate angle theta = pi/2 (cos(theta) = 0)")
    psi_full = embed_system(psi, be.m_ancilla)
    phi = embed_system(v @ psi, be.m_ancilla)
    phi_perp = (be.u @ psi_full - sin * phi) / cos
    return _Frame(sin, cos, v, psi_full, phi, phi_perp)


def _inverse_adjoint_apply(v: np.ndarray, psi: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.solve(v.conj().T, psi)
    except np.linalg.LinAlgError as exc:
        raise ValueError("encoded matrix is singular") from exc


def true_orthogonal_state(be: BlockEncoding, psi, convention: str = "normalized") -> np.ndarray:
    """``U^H (cos(theta) |0>(V^H)^-1 psi - sin(theta) |Phi_perp>)`` (unnormalized).

    In the normalized convention it is exactly orthogonal to ``|0> psi``.
    """
    fr = _frame(be, psi, convention)
    phi_eps = embed_system(_inverse_adjoint_apply(fr.v, as_state(psi)), be.m_ancilla)
    return be.u.conj().T @ (fr.cos * phi_eps - fr.sin * fr.phi_perp)


def naive_orthogonal_state(be: BlockEncoding, psi, convention: str = "normalized") -> np.ndarray:
    """The unitary-case partner ``U^H (cos(theta) |0>V psi - sin(theta) |Phi_perp>)``."""
    fr = _frame(be, psi, convention)
    return be.u.conj().T @ (fr.cos * fr.phi - fr.sin * fr.phi_perp)


def epsilon_state(be: BlockEncoding, psi, convention: str = "normalized") -> np.ndarray:
    """``|0> (V - (V^H)^-1) psi``."""
    fr = _frame(be, psi, convention)
    psi = as_state(psi)
    return fr.phi - embed_system(_inverse_adjoint_apply(fr.v, psi), be.m_ancilla)


def appendix_expansion(be: BlockEncoding, psi, convention: str = "normalized") -> np.ndarray:
    """First-order expansion of ``S U |0> psi`` around the unitary case.

    ``sin3t |Phi> + cos3t |Phi_perp> - 2 sin t cos^2 t (|eps> + U R U^H |eps>)``,
    obtained by treating the true orthogonal partner as an eigenvector of
    ``R`` with eigenvalue -1. Exact when ``V`` is unitary.
    """
    fr = _frame(be, psi, convention)
    eps = epsilon_state(be, psi, convention)
    theta = math.asin(fr.sin)
    r = ancilla_reflection(be)
    coeff = 2.0 * fr.sin * fr.cos**2
    return (
        math.sin(3 * theta) * fr.phi
        + math.cos(3 * theta) * fr.phi_perp
        - coeff * eps
        - coeff * (be.u @ (r @ (be.u.conj().T @ eps)))
    )


def pi3_operators(be: BlockEncoding, psi) -> tuple[np.ndarray, np.ndarray]:
    src = embed_system(psi, be.m_ancilla)
    s_s = ReflectionSpec("pi3-phase-source", src).matrix(be.dim, be.system_dim)
    s_t = ReflectionSpec("pi3-phase-target").matrix(be.dim, be.system_dim)
    return s_s, s_t


def pi3_run(be: BlockEncoding, psi, k_max: int | None = None) -> StrategyReport:
    """Recursive pi/3 fixed-point search: ``V_{k+1} = V_k S_s V_k^H S_t V_k``.

    Needs the input state itself (to build the source phase), so it is not
    oblivious. Failure probability cubes at each level.
    """
    psi = _check_input(be, psi)
    k_max = default_k_max(be.m_ancilla) if k_max is None else k_max
    s_s, s_t = pi3_operators(be, psi)
    src = embed_system(psi, be.m_ancilla)
    v = be.u
    states = [v @ src]
    for _ in range(k_max):
        v = v @ s_s @ v.conj().T @ s_t @ v
        states.append(v @ src)
    beta = exact_reference(be, psi)
    return StrategyReport("pi3", beta, _iterate(be, beta, states))


def approx_reflection_operator(
    be: BlockEncoding, psi_tilde, system_only: bool = False
) -> np.ndarray:
    """Grover step ``U R~_s U^H (-R)`` with ``R~_s`` reflecting about ``|0> psi~``.

    With ``system_only`` the source reflection is ``I_anc (x) (2|psi~><psi~| - I)``.
    """
    psi_tilde = normalize(_check_input(be, psi_tilde))
    if system_only:
        sys_refl = 2 * np.outer(psi_tilde, psi_tilde.conj()) - np.eye(be.system_dim)
        r_s = np.kron(np.eye(2**be.m_ancilla), sys_refl)
    else:
        ref = embed_system(psi_tilde, be.m_ancilla)
        r_s = ReflectionSpec("about-state", ref).matrix(be.dim, be.system_dim)
    r_t = ReflectionSpec("negated-ancilla-zero").matrix(be.dim, be.system_dim)
    return be.u @ r_s @ be.u.conj().T @ r_t


def approx_reflection_run(
    be: BlockEncoding,
    psi,
    psi_tilde,
    k_max: int | None = None,
    system_only: bool = False,
) -> StrategyReport:
    psi = _check_input(be, psi)
    k_max = default_k_max(be.m_ancilla) if k_max is None else k_max
    g = approx_reflection_operator(be, psi_tilde, system_only=system_only)
    beta = exact_reference(be, psi)
    states = _power_trace(g, apply(be, psi), k_max)
    return StrategyReport("approx-reflection", beta, _iterate(be, beta, states))


def next_power_of_two(x: float) -> float:
    if x <= 0:
        raise ValueError("x must be positive")
    return float(2.0 ** math.ceil(math.log2(x) - 1e-12))


def _polar_isometry(m: np.ndarray) -> np.ndarray:
    u, _, vh = np.linalg.svd(m, full_matrices=False)
    return u @ vh


def _complement(q: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of the columns of an isometry."""
    u, _, _ = np.linalg.svd(q, full_matrices=True)
    return u[:, q.shape[1] :]


def inverse_encoding(be: BlockEncoding, alpha_w: float | None = None) -> BlockEncoding:
    """Block encoding ``W`` of ``A^-1 / alpha_w`` built in the ancilla frame of ``U^H``.

    ``S~ = -U R W R`` mixes the off-diagonal blocks of ``W`` with those of
    ``U``, so an unrelated dilation would make the result depend on how ``U``
    was built. Writing ``U``'s off-blocks as ``Y = Q_y sqrt(I - B^H B)`` and
    ``X = sqrt(I - B B^H) Q_x^H``, ``W`` takes the standard 2x2 dilation of
    ``A^-1 / alpha_w`` and routes its garbage through ``Q_y^H`` (in) and
    ``Q_x`` (out), exactly as ``U^H`` does. The W-variant then depends only on
    ``A``, ``alpha`` and ``alpha_w``. ``alpha_w`` defaults to ``||A^-1||``
    rounded up to a power of two.
    """
    a = be.encoded
    try:
        a_inv = np.linalg.inv(a)
    except np.linalg.LinAlgError as exc:
        raise ValueError("encoded matrix is singular") from exc
    if alpha_w is None:
        alpha_w = next_power_of_two(spectral_norm(a_inv))
    n = be.system_dim
    halmos = dilation_encode(a_inv, alpha_w).u
    b_w, d_out, d_in = halmos[:n, :n], halmos[:n, n:], halmos[n:, :n]

    q_y = _polar_isometry(be.u[n:, :n])
    q_x = _polar_isometry(be.u[:n, n:].conj().T)
    w = np.empty_like(be.u)
    w[:n, :n] = b_w
    w[:n, n:] = d_out @ q_y.conj().T
    w[n:, :n] = q_x @ d_in
    w[n:, n:] = -q_x @ b_w.conj().T @ q_y.conj().T + _complement(q_x) @ _complement(q_y).conj().T
    return BlockEncoding(u=w, alpha=float(alpha_w), m_ancilla=be.m_ancilla, n_system=be.n_system)


def build_S_w(be: BlockEncoding, be_w: BlockEncoding) -> np.ndarray:
    """Modified step ``-U R W R``."""
    if be_w.dim != be.dim:
        raise ValueError("W must act on the same register as U")
    r = ancilla_reflection(be)
    return -be.u @ r @ be_w.u @ r


def w_variant_run(
    be: BlockEncoding, be_w: BlockEncoding, psi, k_max: int | None = None
) -> StrategyReport:
    psi = _check_input(be, psi)
    k_max = default_k_max(be.m_ancilla) if k_max is None else k_max
    beta = exact_reference(be, psi)
    states = _power_trace(build_S_w(be, be_w), apply(be, psi), k_max)
    return StrategyReport("w-variant", beta, _iterate(be, beta, states))

