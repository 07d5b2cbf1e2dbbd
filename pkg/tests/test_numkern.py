import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ritzbounds import numkern
from ritzbounds.errors import ContractError, InputDomainError, RankError

from conftest import random_herm


def test_eigh_diagonal():
    lam, v = numkern.eigh(np.diag([4.0, 3, 1, 0]))
    assert np.allclose(lam, [4, 3, 1, 0])
    assert np.allclose(np.abs(v), np.eye(4))


def test_eigh_swap_block():
    assert np.allclose(numkern.eigvalsh([[0, 1], [1, 0]]), [1, -1])


def test_eigh_recovers_constructed_spectrum():
    q = numkern.random_unitary(3, 5)
    a = q @ np.diag([2.0, -1, -1]) @ q.conj().T
    assert np.allclose(numkern.eigh(a)[0], [2, -1, -1], atol=1e-12)


def test_eigh_rejects_nonfinite():
    with pytest.raises(InputDomainError):
        numkern.eigh(np.array([[np.nan, 0], [0, 1]]))


def test_svd_identity_and_swap():
    assert np.allclose(numkern.singular_values(np.eye(3)), 1)
    x = np.eye(4)[:, :2]
    y = np.eye(4)[:, [2, 1]]
    assert np.allclose(numkern.singular_values(x.T @ y), [1, 0])


def test_svd_matches_gram_oracle():
    rng = np.random.default_rng(1)
    b = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
    u, s, v = numkern.svd(b)
    gram = np.sqrt(np.clip(np.linalg.eigvalsh(b.conj().T @ b)[::-1], 0, None))
    assert np.allclose(s, gram, atol=1e-10)
    assert np.allclose(u * s @ v.conj().T, b)


def test_orthonormalize_examples():
    q = numkern.orthonormalize(np.array([[1.0, 1], [0, 1], [0, 0]]))
    assert numkern.is_orthonormal(q)
    assert np.allclose(np.abs(q[2]), 0)
    b = np.random.default_rng(2).standard_normal((6, 2))
    q = numkern.orthonormalize(b)
    assert np.abs(q.conj().T @ q - np.eye(2)).max() <= 1e-12
    # span is preserved: projecting b onto span(q) changes nothing
    assert np.allclose(q @ (q.conj().T @ b), b)


def test_orthonormalize_rank_error_reports_smallest_singular_value():
    with pytest.raises(RankError) as exc:
        numkern.orthonormalize(np.array([[1.0, 2], [1, 2], [0, 0]]))
    assert exc.value.smallest_singular_value < 1e-12


def test_random_unitary():
    q1 = numkern.random_unitary(1, 0)
    assert q1.shape == (1, 1) and np.isclose(abs(q1[0, 0]), 1)
    assert np.array_equal(numkern.random_unitary(5, 9), numkern.random_unitary(5, 9))
    q = numkern.random_unitary(8, 3)
    assert np.abs(q.conj().T @ q - np.eye(8)).max() <= 1e-12


def test_hermitian_from_spectrum():
    assert np.allclose(numkern.hermitian_from_spectrum(np.zeros(3), seed=0), 0)
    a = numkern.hermitian_from_spectrum([1, 1, -1, -1], identity=True)
    assert np.array_equal(a, np.diag([1, 1, -1, -1]).astype(complex))
    a = numkern.hermitian_from_spectrum([3, 0.5, -2], seed=4)
    assert np.allclose(numkern.eigvalsh(a), [3, 0.5, -2])
    assert np.array_equal(a, a.conj().T)


def test_complete_basis():
    q = numkern.random_basis(6, 2, 7)
    qp = numkern.complete_basis(q)
    full = np.hstack([q, qp])
    assert full.shape == (6, 6)
    assert np.allclose(full.conj().T @ full, np.eye(6))


def test_check_orthonormal_rejects():
    with pytest.raises(ContractError):
        numkern.check_orthonormal(np.array([[1.0], [1.0]]))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 7), st.integers(0, 2**32 - 1))
def test_eigh_reconstructs(n, seed):
    a = random_herm(np.random.default_rng(seed), n)
    lam, v = numkern.eigh(a)
    assert np.all(np.diff(lam) <= 0)
    assert np.allclose(v @ np.diag(lam) @ v.conj().T, a, atol=1e-10)
    assert numkern.is_orthonormal(v)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 8), st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_singular_values_descending_nonnegative(m, n, seed):
    b = np.random.default_rng(seed).standard_normal((m, n))
    s = numkern.singular_values(b)
    assert s.size == min(m, n)
    assert np.all(s >= 0) and np.all(np.diff(s) <= 0)
    assert np.isclose(s[0], np.linalg.norm(b, 2))
