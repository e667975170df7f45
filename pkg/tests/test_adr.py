import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adr_oaa.adr import (
    AdrParams,
    CflError,
    PhysicalParams,
    advection_only_estimate,
    build_adr_matrix,
    circulant_spectrum,
    classical_step,
    courant_from_physical,
    lambdas,
    scale_time,
)
from adr_oaa.linalg import basis_state, spectral_norm, uniform_state

from helpers import random_state

valid_params = st.builds(
    AdrParams,
    gamma_d=st.floats(0.0, 0.5),
    gamma_a=st.floats(0.0, 1.0),
    gamma_r=st.floats(0.0, 1.0),
    n_qubits=st.integers(1, 5),
)


def test_courant_from_physical():
    zero = courant_from_physical(PhysicalParams(0.0, 0.0, 0.0, dx=1.0, dt=0.1), 4)
    assert zero.courant == (0.0, 0.0, 0.0)
    p = courant_from_physical(PhysicalParams(1.0, 2.0, 3.0, dx=1.0, dt=0.1), 4)
    np.testing.assert_allclose(p.courant, (0.1, 0.2, 0.3), atol=1e-15)


def test_cfl_violation_is_an_error():
    with pytest.raises(CflError):
        courant_from_physical(PhysicalParams(1.0, 0.0, 0.0, dx=1.0, dt=1.0), 4)
    with pytest.raises(CflError):
        AdrParams(0.1, 1.1, 0.0, 4)
    with pytest.raises(CflError):
        AdrParams(0.1, 0.1, -0.1, 4)


def test_lambda_examples():
    assert lambdas(AdrParams(0, 0, 0, 4)) == (1.0, 0.0, 0.0)
    np.testing.assert_allclose(lambdas(AdrParams(0.1, 0.1, 0.2, 4)), (0.6, 0.05, 0.15), atol=1e-15)
    np.testing.assert_allclose(lambdas(AdrParams(0.01, 0.9, 0.01, 4)), (0.97, -0.44, 0.46), atol=1e-15)


def test_matrix_layout():
    a = build_adr_matrix(AdrParams(0.1, 0.1, 0.2, 2))
    np.testing.assert_allclose(a[0], [0.6, 0.05, 0.0, 0.15], atol=1e-15)
    np.testing.assert_allclose(a[3], [0.05, 0.0, 0.15, 0.6], atol=1e-15)
    np.testing.assert_array_equal(build_adr_matrix(AdrParams(0, 0, 0, 3)), np.eye(8))


@settings(max_examples=60, deadline=None)
@given(p=valid_params)
def test_row_sums_are_mass_balance(p):
    a = build_adr_matrix(p)
    np.testing.assert_allclose(a.sum(axis=1), 1.0 - p.gamma_r, atol=1e-13)


@settings(max_examples=60, deadline=None)
@given(p=valid_params)
def test_matrix_is_the_dft_circulant(p):
    # Independent reconstruction A = F diag(mu) F^-1 from the eigenvalue formula.
    n = p.n_dim
    l0, l1, l2 = lambdas(p)
    j = np.arange(n)
    w = np.exp(2j * np.pi * j / n)
    mu = l0 + l1 * w + l2 / w
    f = np.exp(2j * np.pi * np.outer(j, j) / n) / np.sqrt(n)
    np.testing.assert_allclose(f @ np.diag(mu) @ f.conj().T, build_adr_matrix(p), atol=1e-12)
    np.testing.assert_allclose(circulant_spectrum(p), mu, atol=1e-15)


def test_scale_time_examples():
    p = AdrParams(0.01, 0.9, 0.01, 4)
    assert scale_time(p, 1.0) == p
    np.testing.assert_allclose(scale_time(p, 0.5).courant, (0.005, 0.45, 0.005))
    with pytest.raises(ValueError):
        scale_time(p, 0.0)


def test_scale_time_approaches_identity():
    p = AdrParams(0.01, 0.9, 0.01, 4)
    dist = [spectral_norm(build_adr_matrix(scale_time(p, t)) - np.eye(16)) for t in (1.0, 0.5, 0.1, 0.01, 1e-4)]
    assert all(b < a for a, b in zip(dist, dist[1:]))
    assert dist[-1] < 1e-3


def test_classical_step_examples(rng):
    p = AdrParams(0.1, 0.3, 0.2, 4)
    phi = random_state(rng, 16)
    np.testing.assert_array_equal(classical_step(p, phi, 0), phi)
    np.testing.assert_allclose(classical_step(AdrParams(0, 0, 0.3, 4), basis_state(16, 0)), 0.7 * basis_state(16, 0))
    u = uniform_state(16)
    np.testing.assert_allclose(classical_step(p, u), 0.8 * u, atol=1e-15)
    np.testing.assert_allclose(classical_step(AdrParams(0, 0, 0, 4), phi, 7), phi)


def test_classical_step_agrees_with_matrix(rng):
    p = AdrParams(0.01, 0.9, 0.01, 4)
    phi = random_state(rng, 16)
    a = build_adr_matrix(p)
    np.testing.assert_allclose(classical_step(p, phi, 3), a @ a @ a @ phi, atol=1e-13)


def test_advection_only_estimate():
    phi = basis_state(16, 5)
    np.testing.assert_allclose(advection_only_estimate(AdrParams(0.2, 0.0, 0.3, 4), phi), phi)
    expected = basis_state(16, 5) - 0.45 * basis_state(16, 4) + 0.45 * basis_state(16, 6)
    est = advection_only_estimate(AdrParams(0.01, 0.9, 0.01, 4), phi)
    np.testing.assert_allclose(est, expected / np.sqrt(1.405), atol=1e-15)
    assert abs(np.linalg.norm(est) - 1) <= 1e-12
