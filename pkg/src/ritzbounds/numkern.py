"""Dense complex kernels: Hermitian eigendecomposition, SVD, orthonormalization
and seeded random generators.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Spectra and
singular values are returned in nonincreasing order, which is the convention
used everywhere downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError, InputDomainError, NumericalFailureError, RankError

RNG_ALGORITHM = "numpy.random.PCG64"


@dataclass(frozen=True)
class Tolerances:
    orth: float = 1e-10
    eig: float = 1e-9
    rank: float = 1e-12  # relative to the 2-norm of the input
    inv: float = 1e-8


DEFAULT_TOLERANCES = Tolerances()


def make_rng(seed) -> np.random.Generator:
    """Return a PCG64 generator; ``seed`` may already be a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def as_matrix(b, name="matrix") -> np.ndarray:
    arr = np.asarray(b)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ContractError(f"{name} must be a nonempty 2-D array, got shape {arr.shape}")
    arr = arr.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(arr)):
        raise InputDomainError(f"{name} has non-finite entries")
    return arr


def hermitian(a) -> np.ndarray:
    """Hermitian matrix built from the lower triangle of ``a``.

    The strictly upper triangle is replaced by the conjugate of the lower one
    and the diagonal is made real, so the result is exactly Hermitian.
    """
    a = as_matrix(a, "hermitian matrix")
    if a.shape[0] != a.shape[1]:
        raise ContractError(f"Hermitian matrix must be square, got {a.shape}")
    low = np.tril(a, -1)
    return low + low.conj().T + np.diag(a.diagonal().real).astype(np.complex128)


def is_orthonormal(q, tol=DEFAULT_TOLERANCES.orth) -> bool:
    k = q.shape[1]
    return bool(np.linalg.norm(q.conj().T @ q - np.eye(k), 2) <= tol)


def check_orthonormal(q, name="basis", tol=DEFAULT_TOLERANCES.orth) -> np.ndarray:
    q = as_matrix(q, name)
    if q.shape[1] > q.shape[0]:
        raise ContractError(f"{name} has more columns than rows: {q.shape}")
    err = np.linalg.norm(q.conj().T @ q - np.eye(q.shape[1]), 2)
    if err > tol:
        raise ContractError(f"{name} is not orthonormal: |QᴴQ - I| = {err:.3e} > {tol:.1e}")
    return q


def eigh(a) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and matching eigenvectors of a Hermitian matrix."""
    a = as_matrix(a, "Hermitian matrix")
    if a.shape[0] != a.shape[1]:
        raise ContractError(f"Hermitian matrix must be square, got {a.shape}")
    try:
        w, v = np.linalg.eigh(a, UPLO="L")
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"eigensolver did not converge: {exc}") from exc
    return w[::-1].copy(), v[:, ::-1].copy()


def eigvalsh(a) -> np.ndarray:
    """Descending eigenvalues only; cheaper than :func:`eigh`."""
    a = as_matrix(a, "Hermitian matrix")
    if a.shape[0] != a.shape[1]:
        raise ContractError(f"Hermitian matrix must be square, got {a.shape}")
    try:
        w = np.linalg.eigvalsh(a, UPLO="L")
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"eigensolver did not converge: {exc}") from exc
    return w[::-1].copy()


def svd(b) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thin SVD ``b = U diag(s) Vᴴ``; returns ``(U, s, V)`` with ``s`` descending."""
    b = as_matrix(b)
    try:
        u, s, vh = np.linalg.svd(b, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"SVD did not converge: {exc}") from exc
    return u, s, vh.conj().T


def singular_values(b) -> np.ndarray:
    b = np.asarray(b)
    if b.size == 0:
        return np.zeros(0)
    b = as_matrix(b)
    try:
        return np.linalg.svd(b, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"SVD did not converge: {exc}") from exc


def orthonormalize(b, rank_tol=DEFAULT_TOLERANCES.rank) -> np.ndarray:
    """Orthonormal basis of the column space of a full-column-rank matrix."""
    b = as_matrix(b)
    if b.shape[1] > b.shape[0]:
        raise RankError(f"{b.shape[1]} columns in dimension {b.shape[0]}", 0.0)
    s = singular_values(b)
    if s[-1] <= rank_tol * s[0] or s[0] == 0.0:
        raise RankError(
            f"input is numerically rank deficient (smallest singular value {s[-1]:.3e})",
            float(s[-1]),
        )
    q, _ = np.linalg.qr(b)
    # second pass keeps orthonormality at roundoff level for ill-conditioned b
    q2, _ = np.linalg.qr(q)
    return q2


def complete_basis(q) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of ``span(q)``."""
    n, k = q.shape
    if k == n:
        return np.zeros((n, 0), dtype=np.complex128)
    full, _ = np.linalg.qr(q, mode="complete")
    return full[:, k:]


def random_unitary(n: int, seed) -> np.ndarray:
    """Haar-distributed ``n×n`` unitary matrix from a seeded generator."""
    if n < 1:
        raise ContractError(f"n must be >= 1, got {n}")
    rng = make_rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = r.diagonal()
    return q * (d / np.abs(d))


def random_basis(n: int, k: int, seed) -> np.ndarray:
    """Random ``n×k`` orthonormal basis (first ``k`` columns of a Haar unitary)."""
    if not 1 <= k <= n:
        raise ContractError(f"need 1 <= k <= n, got k={k}, n={n}")
    return random_unitary(n, seed)[:, :k]


def hermitian_from_spectrum(spectrum, seed=None, identity=False) -> np.ndarray:
    """Hermitian ``Q diag(spectrum) Qᴴ`` with ``Q`` Haar random, or ``Q = I``."""
    d = np.asarray(spectrum, dtype=float)
    if d.ndim != 1 or d.size < 1:
        raise ContractError("spectrum must be a nonempty 1-D vector")
    if not np.all(np.isfinite(d)):
        raise InputDomainError("spectrum has non-finite entries")
    if identity:
        return np.diag(d).astype(np.complex128)
    q = random_unitary(d.size, seed)
    return hermitian((q * d) @ q.conj().T)
