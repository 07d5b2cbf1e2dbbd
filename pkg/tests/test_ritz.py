import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ritzbounds import numkern, ritz
from ritzbounds.errors import ContractError
from ritzbounds.harness import sharp_instance
from ritzbounds.subspace import align_bases, perturb_subspace


def test_sharp_family_ritz_values():
    th = np.array([1.2, 0.7, 0.2])
    a, x, y, _ = sharp_instance(th)
    assert np.allclose(ritz.ritz_values(a, x), 1)
    assert np.allclose(ritz.ritz_values(a, y), np.sort(2 * np.cos(th) ** 2 - 1)[::-1])


def test_rayleigh_quotient_of_eigenvector():
    a = numkern.hermitian_from_spectrum([5.0, 2, -1], seed=3)
    lam, v = numkern.eigh(a)
    assert ritz.ritz_values(a, v[:, [1]]) == pytest.approx([2.0])


def test_spread():
    assert ritz.spread(np.diag([1.0, 1, -1, -1])) == 2
    assert ritz.spread(3.5 * np.eye(4)) == 0
    a = numkern.hermitian_from_spectrum([4.0, 1, -2.5], seed=1)
    assert ritz.spread(a) == pytest.approx(6.5)


def test_invariant_subspace():
    x = ritz.invariant_subspace(np.diag([0.0, 5, 1, 3]), [0, 1])
    assert np.allclose(np.abs(x), np.eye(4)[:, [1, 3]])
    x = ritz.invariant_subspace(np.diag([1.0, 1, -1, -1]), [0, 1])
    assert np.allclose(np.abs(x.conj().T @ np.eye(4)[:, :2]) ** 2 @ np.ones(2), 1)
    a = numkern.hermitian_from_spectrum([3.0, 2, 0.5, -1, -4], seed=8)
    assert np.allclose(ritz.ritz_values(a, ritz.invariant_subspace(a, [1, 3])), [2, -1], atol=1e-10)
    with pytest.raises(ContractError):
        ritz.invariant_subspace(a, [])
    with pytest.raises(ContractError):
        ritz.invariant_subspace(a, [5])


@pytest.mark.parametrize("diag,cols,tag", [
    ((4, 3, 1, 0), (0, 1), ritz.CONTIGUOUS_TOP),
    ((4, 3, 1, 0), (2, 3), ritz.CONTIGUOUS_BOTTOM),
    ((4, 3, 1, 0), (0, 2), ritz.GENERAL),
    ((4, 3, 2, 0), (0, 2), ritz.HALF_TOP),
    ((4, 2, 1, 0), (1, 3), ritz.HALF_BOTTOM),
])
def test_classify_examples(diag, cols, tag):
    a = np.diag(np.array(diag, dtype=float))
    assert ritz.classify_invariant(a, np.eye(4)[:, list(cols)]).tag == tag


def test_classify_non_invariant_and_scalar_matrix():
    x = numkern.random_basis(4, 2, 0)
    assert ritz.classify_invariant(np.diag([4.0, 3, 1, 0]), x).tag == ritz.NOT_INVARIANT
    # every subspace is invariant for a multiple of the identity
    assert ritz.classify_invariant(2.0 * np.eye(4), x).invariant


def test_block_identity_examples(counterexample):
    a, x, y = counterexample
    assert ritz.block_ritz_identity(a, align_bases(x, y)) <= 1e-14
    b = ritz.invariant_subspace(a, [0, 1])
    assert ritz.block_ritz_identity(a, align_bases(b, b)) <= 1e-14
    with pytest.raises(ContractError):
        ritz.block_ritz_identity(a, align_bases(numkern.random_basis(4, 2, 1), y))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 10), st.data())
def test_block_identity_random(n, data):
    seed = data.draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    k = data.draw(st.integers(1, n - 1))
    a = numkern.hermitian_from_spectrum(rng.uniform(-5, 5, n), seed=rng)
    x = ritz.invariant_subspace(a, rng.choice(n, k, replace=False))
    y = perturb_subspace(x, rng.uniform(0, np.pi / 2, k) * (np.arange(k) < n - k), seed=rng)
    assert ritz.block_ritz_identity(a, align_bases(x, y)) <= 1e-10 * np.linalg.norm(a, 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.data())
def test_ritz_values_interlace(n, data):
    # Cauchy interlacing: λ_{i+n-k}(A) ≤ μ_i ≤ λ_i(A)
    seed = data.draw(st.integers(0, 2**32 - 1))
    k = data.draw(st.integers(1, n))
    rng = np.random.default_rng(seed)
    a = numkern.hermitian_from_spectrum(rng.uniform(-3, 3, n), seed=rng)
    lam = numkern.eigvalsh(a)
    mu = ritz.ritz_values(a, numkern.random_basis(n, k, rng))
    assert np.all(mu <= lam[:k] + 1e-10)
    assert np.all(mu >= lam[n - k:] - 1e-10)
