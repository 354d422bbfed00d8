import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_expectation, brute_kron, random_hermitian, random_state, x_string_matrix

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Z = np.diag([1.0, -1.0]).astype(complex)


def test_kron_matches_loops(kernels):
    rng = np.random.default_rng(0)
    for ra, ca, rb, cb in [(2, 2, 2, 2), (4, 4, 2, 2), (3, 1, 2, 5), (1, 1, 1, 1)]:
        a = rng.normal(size=(ra, ca)) + 1j * rng.normal(size=(ra, ca))
        b = rng.normal(size=(rb, cb)) + 1j * rng.normal(size=(rb, cb))
        np.testing.assert_allclose(kernels.kron(a, b), brute_kron(a, b), rtol=1e-15, atol=1e-15)


def test_quad_form_and_matvec(kernels):
    rng = np.random.default_rng(1)
    for dim in (1, 2, 5, 16):
        v = random_state(rng, dim)
        m = random_hermitian(rng, dim)
        assert abs(kernels.quad_form(v, m) - brute_expectation(v, m)) < 1e-12
        np.testing.assert_allclose(kernels.matvec(m, v), m @ v, atol=1e-13)


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_pauli_expectation_x_and_z_strings(kernels, n):
    rng = np.random.default_rng(n)
    v = random_state(rng, 2 ** n)
    full = (1 << n) - 1
    z_string = np.diag([(-1) ** bin(i).count("1") for i in range(2 ** n)])
    assert abs(kernels.pauli_expectation(v, full, 0) - brute_expectation(v, x_string_matrix(n))) < 1e-12
    assert abs(kernels.pauli_expectation(v, 0, full) - brute_expectation(v, z_string)) < 1e-12


def test_pauli_expectation_single_site(kernels):
    # sigma_z on particle 1 of 2 is bit 1 (most significant)
    v = np.array([0.6, 0, 0, 0.8], dtype=complex)
    assert kernels.pauli_expectation(v, 0, 0b10) == pytest.approx(0.36 - 0.64)


@pytest.mark.parametrize("n,target", [(1, 0), (3, 0), (3, 1), (3, 2), (5, 4)])
def test_apply_1q_matches_embedded_matrix(kernels, n, target):
    rng = np.random.default_rng(10 * n + target)
    v = random_state(rng, 2 ** n)
    g = np.array([[0.3, 0.4j], [0.1 - 0.2j, -0.7]])
    full = np.kron(np.kron(np.eye(2 ** target), g), np.eye(2 ** (n - target - 1)))
    np.testing.assert_allclose(kernels.apply_1q(v, g, target, n), full @ v, atol=1e-14)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2 ** 32 - 1))
def test_backends_agree(n, seed):
    from noonsim import _pykernels
    try:
        from noonsim import _ckernels
    except ImportError:
        pytest.skip("extension not built")
    rng = np.random.default_rng(seed)
    dim = 2 ** n
    v = random_state(rng, dim)
    m = random_hermitian(rng, dim)
    assert abs(_ckernels.quad_form(v, m) - _pykernels.quad_form(v, m)) < 1e-12
    np.testing.assert_allclose(_ckernels.kron(m, m), _pykernels.kron(m, m), rtol=1e-15, atol=1e-15)
    assert abs(_ckernels.pauli_expectation(v, dim - 1, seed % dim)
               - _pykernels.pauli_expectation(v, dim - 1, seed % dim)) < 1e-12


def test_backend_selection_env(monkeypatch):
    import importlib

    import noonsim._kernels as k
    monkeypatch.setenv("NOONSIM_PURE_PYTHON", "1")
    try:
        importlib.reload(k)
        assert k.BACKEND == "python"
    finally:
        monkeypatch.delenv("NOONSIM_PURE_PYTHON")
        importlib.reload(k)


def test_compiled_backend_selected_when_built():
    import os

    import noonsim._kernels as k
    if os.environ.get("NOONSIM_PURE_PYTHON", "") not in ("", "0"):
        pytest.skip("fallback forced")
    try:
        from noonsim import _ckernels  # noqa: F401
    except ImportError:
        assert k.BACKEND == "python"
    else:
        assert k.BACKEND == "cython"
