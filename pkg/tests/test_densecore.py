import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import WT_CHOI, W_CHOI, random_hermitian
from witnesskit.densecore import (
    HermitianOperator,
    hermitian_eigen,
    is_psd,
    kron,
    orthonormalize,
)
from witnesskit.errors import ConvergenceFailure, NotHermitian, RankDeficient


def e(i, j, d):
    m = np.zeros((d, d))
    m[i, j] = 1
    return m


# -- kron ---------------------------------------------------------------

def test_kron_identities():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_matrix_units():
    k = kron(e(0, 1, 2), e(1, 0, 2))
    expected = np.zeros((4, 4))
    expected[1, 2] = 1
    assert np.array_equal(k, expected)


def test_kron_shift_on_basis_state():
    s = np.roll(np.eye(3), 1, axis=0)
    ket11 = np.kron([0, 1, 0], [0, 1, 0])
    assert np.array_equal(kron(s, np.eye(3)) @ ket11, np.kron([0, 0, 1], [0, 1, 0]))


@pytest.mark.parametrize("n", [2, 3])
def test_kron_associative_and_mixed_product(rng, n):
    a, b, c, dd = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) for _ in range(4))
    assert np.allclose(kron(kron(a, b), c), kron(a, kron(b, c)), atol=1e-12)
    assert np.allclose(kron(a, b) @ kron(c, dd), kron(a @ c, b @ dd), atol=1e-12)


# -- HermitianOperator --------------------------------------------------

def test_hermitian_symmetrizes_small_defect():
    m = np.array([[1, 2 + 1e-10j], [2, 3]])
    h = HermitianOperator(m)
    assert np.linalg.norm(h.matrix - h.matrix.conj().T) == 0


def test_hermitian_rejects_large_defect():
    with pytest.raises(NotHermitian):
        HermitianOperator(np.array([[0, 1], [0, 0]]))


def test_hermitian_rejects_nonfinite():
    with pytest.raises(ValueError):
        HermitianOperator(np.array([[np.nan, 0], [0, 1]]))


# -- hermitian_eigen -----------------------------------------------------

def test_eigen_diagonal():
    assert np.allclose(hermitian_eigen(np.diag([3.0, 1.0, 2.0])).eigenvalues, [1, 2, 3])


def test_eigen_all_ones():
    assert np.allclose(hermitian_eigen(np.ones((3, 3))).eigenvalues, [0, 0, 3], atol=1e-12)


def test_eigen_transformed_choi_rank_one():
    # oracle: numpy's LAPACK route, independent of the Jacobi code
    ev = hermitian_eigen(WT_CHOI).eigenvalues
    assert np.allclose(ev, np.linalg.eigvalsh(WT_CHOI), atol=1e-12)
    assert np.allclose(ev, [0] * 8 + [3], atol=1e-9)


def check_decomposition(m):
    dec = hermitian_eigen(m)
    v, lam = dec.eigenvectors, dec.eigenvalues
    scale = max(1.0, np.linalg.norm(m))
    assert np.linalg.norm(v @ np.diag(lam) @ v.conj().T - m) <= 1e-9 * scale
    assert np.linalg.norm(v.conj().T @ v - np.eye(len(lam))) <= 1e-9
    assert np.all(np.diff(lam) >= 0)
    assert abs(lam.sum() - np.trace(m).real) <= 1e-9 * scale
    assert np.allclose(lam, np.linalg.eigvalsh(m), atol=1e-9 * scale)


@pytest.mark.parametrize("d", [2, 3, 4, 9])
def test_eigen_random_batch(d):
    rng = np.random.default_rng(d)
    for _ in range(200):
        check_decomposition(random_hermitian(rng, d))


def test_eigen_large_bipartite():
    rng = np.random.default_rng(5)
    check_decomposition(random_hermitian(rng, 16))
    check_decomposition(random_hermitian(rng, 25, scale=100.0))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 10), st.integers(0, 2**32 - 1), st.floats(1e-3, 1e3))
def test_eigen_property(n, seed, scale):
    check_decomposition(random_hermitian(np.random.default_rng(seed), n, scale))


def test_eigen_degenerate_spectrum():
    # repeated eigenvalues need not break orthonormality
    rng = np.random.default_rng(1)
    q, _ = np.linalg.qr(rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6)))
    m = q @ np.diag([1, 1, 1, 2, 2, 5]) @ q.conj().T
    check_decomposition(m)
    check_decomposition(np.kron(m, np.eye(2)))


def test_eigen_sweep_budget_exhausted():
    rng = np.random.default_rng(3)
    with pytest.raises(ConvergenceFailure):
        hermitian_eigen(random_hermitian(rng, 9), max_sweeps=1)
    with pytest.raises(ConvergenceFailure):
        hermitian_eigen(random_hermitian(rng, 4), max_sweeps=1)


# -- is_psd ----------------------------------------------------------------

def test_is_psd_examples():
    assert is_psd(np.eye(3), 0.0)
    assert not is_psd(W_CHOI, 1e-9)
    assert is_psd(WT_CHOI, 1e-9)


def test_is_psd_rejects_negative_tol():
    with pytest.raises(ValueError):
        is_psd(np.eye(2), -1.0)


def leading_minors_nonneg(m, eps=1e-12):
    shifted = m + eps * np.eye(len(m))
    return all(np.linalg.det(shifted[:k, :k]).real >= 0 for k in range(1, len(m) + 1))


def test_is_psd_matches_minor_oracle():
    rng = np.random.default_rng(11)
    hits = 0
    for i in range(400):
        if i % 2:
            g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
            m = g @ g.conj().T
        else:
            m = random_hermitian(rng, 3)
        expected = leading_minors_nonneg(m)
        hits += expected
        assert is_psd(m, 0.0) == expected
    assert 100 < hits < 400


# -- orthonormalize ------------------------------------------------------

def test_orthonormalize_examples():
    out = orthonormalize([np.array([1, 0]), np.array([1, 1])])
    assert np.allclose(out, [[1, 0], [0, 1]])
    assert np.allclose(orthonormalize([np.array([2, 0, 0])]), [[1, 0, 0]])
    with pytest.raises(RankDeficient):
        orthonormalize([np.array([1, 0]), np.array([2, 0])])


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 8), st.integers(0, 2**32 - 1), st.data())
def test_orthonormalize_property(d, seed, data):
    k = data.draw(st.integers(1, d))
    rng = np.random.default_rng(seed)
    vecs = rng.standard_normal((k, d)) + 1j * rng.standard_normal((k, d))
    out = np.array(orthonormalize(vecs))
    assert np.allclose(out.conj() @ out.T, np.eye(k), atol=1e-12)
    # same span: projecting the inputs onto the output basis loses nothing
    proj = out.T @ out.conj()
    assert np.allclose(vecs @ proj.T, vecs, atol=1e-9)
