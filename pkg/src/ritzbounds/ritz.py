"""Ritz values, spectral spread, invariant subspaces and their classification
against the two sufficient conditions for the sine-squared bound (contiguous
extreme eigenvalues, or eigenvalues confined to one half of the spectrum).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numkern
from .errors import ContractError
from .numkern import DEFAULT_TOLERANCES
from .subspace import AlignedPair

CONTIGUOUS_TOP = "contiguous-top"
CONTIGUOUS_BOTTOM = "contiguous-bottom"
HALF_TOP = "half-top"
HALF_BOTTOM = "half-bottom"
GENERAL = "general"
NOT_INVARIANT = "not-invariant"


@dataclass(frozen=True)
class InvariantClass:
    tag: str
    residual: float
    contiguous_top: bool = False
    contiguous_bottom: bool = False
    half_top: bool = False
    half_bottom: bool = False

    @property
    def invariant(self) -> bool:
        return self.tag != NOT_INVARIANT

    @property
    def contiguous(self) -> bool:
        return self.contiguous_top or self.contiguous_bottom

    @property
    def half(self) -> bool:
        return self.half_top or self.half_bottom


def compress(a, x) -> np.ndarray:
    """``XᴴAX``, made exactly Hermitian."""
    if a.shape[0] != x.shape[0]:
        raise ContractError(f"A is {a.shape[0]}x{a.shape[1]} but X has {x.shape[0]} rows")
    return numkern.hermitian(x.conj().T @ a @ x)


def ritz_values(a, x, tol_orth=DEFAULT_TOLERANCES.orth) -> np.ndarray:
    """Eigenvalues of ``XᴴAX`` in descending order."""
    x = numkern.check_orthonormal(x, "X", tol_orth)
    return numkern.eigvalsh(compress(a, x))


def spread(a) -> float:
    lam = numkern.eigvalsh(a)
    return float(lam[0] - lam[-1])


def invariant_subspace(a, indices) -> np.ndarray:
    """Span of the eigenvectors at the given 0-based positions of the descending spectrum."""
    idx = sorted(set(int(i) for i in indices))
    n = a.shape[0]
    if not idx:
        raise ContractError("index set must be nonempty")
    if idx[0] < 0 or idx[-1] >= n:
        raise ContractError(f"indices must lie in [0, {n - 1}], got {idx}")
    _, v = numkern.eigh(a)
    return v[:, idx]


def invariance_residual(a, x) -> float:
    ax = a @ x
    return float(np.linalg.norm(ax - x @ (x.conj().T @ ax), 2))


def _threshold(lam, tol) -> float:
    # relative part plus a roundoff floor, so that A = αI (spread ~ eps) still classifies
    floor = 64 * lam.size * np.finfo(float).eps * float(np.abs(lam).max())
    return tol * float(lam[0] - lam[-1]) + floor


def classify_invariant(a, x, tol=DEFAULT_TOLERANCES.inv, lam=None) -> InvariantClass:
    """Classify ``span(x)`` with respect to the spectrum of ``a``.

    ``lam`` may pass the precomputed descending spectrum of ``a``.
    """
    if lam is None:
        lam = numkern.eigvalsh(a)
    buf = _threshold(lam, tol)
    res = invariance_residual(a, x)
    if res > buf:
        return InvariantClass(NOT_INVARIANT, res)
    k = x.shape[1]
    ritz = numkern.eigvalsh(compress(a, x))
    top = bool(np.all(np.abs(ritz - lam[:k]) <= buf))
    bottom = bool(np.all(np.abs(ritz - lam[-k:]) <= buf))
    mid = 0.5 * (lam[0] + lam[-1])
    half_top = bool(ritz[-1] >= mid - buf)
    half_bottom = bool(ritz[0] <= mid + buf)
    if top:
        tag = CONTIGUOUS_TOP
    elif bottom:
        tag = CONTIGUOUS_BOTTOM
    elif half_top:
        tag = HALF_TOP
    elif half_bottom:
        tag = HALF_BOTTOM
    else:
        tag = GENERAL
    return InvariantClass(tag, res, top, bottom, half_top, half_bottom)


def invariant_blocks(a, pair: AlignedPair, tol=DEFAULT_TOLERANCES.inv):
    """``(A11, A22)`` of an aligned pair whose X side must be A-invariant."""
    xa, xp = pair.x_aligned, pair.x_perp
    res = invariance_residual(a, xa)
    if res > _threshold(numkern.eigvalsh(a), tol):
        raise ContractError(f"X is not A-invariant (residual {res:.3e})")
    return compress(a, xa), compress(a, xp) if xp.shape[1] else np.zeros((0, 0), complex)


def block_ritz_identity(a, pair: AlignedPair, tol=DEFAULT_TOLERANCES.inv) -> float:
    """Norm of ``YᴴAY - (C A11 C + Sᴴ A22 S)`` for A-invariant ``x_aligned``."""
    a11, a22 = invariant_blocks(a, pair, tol)
    c = np.diag(pair.c_diag)
    s = pair.s_block
    model = c @ a11 @ c
    if s.size:
        model = model + s.conj().T @ a22 @ s
    yay = pair.y_aligned.conj().T @ a @ pair.y_aligned
    return float(np.linalg.norm(yay - model, 2))
