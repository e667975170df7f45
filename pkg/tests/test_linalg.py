import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adr_oaa.adr import AdrParams, build_adr_matrix, circulant_spectrum
from adr_oaa.linalg import (
    adjoint,
    as_matrix,
    as_state,
    basis_state,
    cyclic_shift,
    haar_state,
    is_unitary,
    kron,
    matmul,
    normalize,
    spectral_norm,
    unitarity_error,
)

from helpers import random_matrix, random_unitary


def test_matmul_identity_and_zero(rng):
    m = random_matrix(rng, 4)
    np.testing.assert_allclose(matmul(np.eye(4), m), m)
    np.testing.assert_array_equal(matmul(m, np.zeros((4, 4))), np.zeros((4, 4)))


def test_matmul_rejects_mismatched_shapes():
    with pytest.raises(ValueError):
        matmul(np.eye(2), np.eye(3))


def test_shift_has_period_n():
    c = cyclic_shift(4)
    np.testing.assert_array_equal(matmul(matmul(c, c), matmul(c, c)), np.eye(4))


def test_shift_small_cases():
    np.testing.assert_array_equal(cyclic_shift(2), [[0, 1], [1, 0]])
    np.testing.assert_array_equal(cyclic_shift(4) @ basis_state(4, 0), basis_state(4, 1))


def test_adjoint_examples(rng):
    s = rng.standard_normal((3, 3))
    s = s + s.T
    np.testing.assert_array_equal(adjoint(s), s)
    np.testing.assert_array_equal(adjoint(1j * np.eye(2)), -1j * np.eye(2))
    a, b = random_matrix(rng, 3), random_matrix(rng, 3)
    np.testing.assert_allclose(adjoint(a @ b), adjoint(b) @ adjoint(a), atol=1e-12)


def test_kron_examples():
    np.testing.assert_array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    p0 = np.diag([1.0, 0.0])
    np.testing.assert_array_equal(kron(p0, np.eye(2)), np.diag([1, 1, 0, 0]))


def test_mixed_product_identity(rng):
    for _ in range(10):
        a, b = random_matrix(rng, 2), random_matrix(rng, 2)
        c, d = random_matrix(rng, 3), random_matrix(rng, 3)
        lhs = matmul(kron(a, c), kron(b, d))
        np.testing.assert_allclose(lhs, kron(a @ b, c @ d), atol=1e-12)


def test_spectral_norm_examples():
    assert spectral_norm(np.eye(5)) == pytest.approx(1.0)
    assert spectral_norm(np.diag([0.5, -2.0])) == pytest.approx(2.0)


@pytest.mark.parametrize("gammas", [(0.01, 0.9, 0.01), (0.1, 0.1, 0.2), (0.5, 1.0, 0.0), (0.0, 0.3, 0.7)])
def test_spectral_norm_matches_dft_oracle(gammas):
    gd, ga, gr = gammas
    p = AdrParams(gd, ga, gr, n_qubits=4)
    l0, l1, l2 = 1 - 2 * gd - gr, gd - ga / 2, gd + ga / 2
    w = np.exp(2j * np.pi * np.arange(16) / 16)
    oracle = np.max(np.abs(l0 + l1 * w + l2 / w))
    assert abs(spectral_norm(build_adr_matrix(p)) - oracle) <= 1e-10
    np.testing.assert_allclose(np.sort_complex(circulant_spectrum(p)), np.sort_complex(l0 + l1 * w + l2 / w))


def test_spectral_norm_unitary_invariance(rng):
    for n in (2, 5, 8):
        m = random_matrix(rng, n)
        u, v = random_unitary(rng, n), random_unitary(rng, n)
        ref = spectral_norm(m)
        assert abs(spectral_norm(u @ m @ v) - ref) <= 1e-10 * ref
        assert abs(spectral_norm(u) - 1.0) <= 1e-10


def test_unitarity_checks(rng):
    u = random_unitary(rng, 6)
    assert unitarity_error(u) <= 1e-12
    assert is_unitary(u)
    assert not is_unitary(2 * u)


def test_non_finite_input_rejected():
    with pytest.raises(ValueError):
        as_matrix([[np.nan, 0], [0, 1]])
    with pytest.raises(ValueError):
        as_state([1.0, np.inf])


def test_normalize_rejects_zero():
    with pytest.raises(ValueError):
        normalize(np.zeros(4))


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**64 - 1), n=st.sampled_from([2, 4, 16]))
def test_haar_state_is_normalized_and_deterministic(seed, n):
    v = haar_state(n, seed)
    assert abs(np.linalg.norm(v) - 1.0) <= 1e-12
    np.testing.assert_array_equal(v, haar_state(n, seed))


def test_haar_first_component_mean():
    # |v_0|^2 of a Haar state on C^N has mean 1/N by unitary invariance.
    samples = [abs(haar_state(4, s)[0]) ** 2 for s in range(10_000)]
    assert abs(np.mean(samples) - 0.25) <= 0.01


def test_haar_rejects_bad_seed():
    with pytest.raises(ValueError):
        haar_state(4, -1)
