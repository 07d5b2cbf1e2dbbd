"""Principal angles, gap and canonical C/S alignment for pairs of subspaces of
equal dimension.

Small angles are taken from the sines (singular values of ``Y - X XᴴY``) and
large angles from the cosines (singular values of ``XᴴY``).  The cosine route
alone cannot resolve angles much below 1e-8.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numkern
from .errors import CapacityError, ContractError
from .majorize import pad_to
from .numkern import DEFAULT_TOLERANCES

_SWITCH = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class AlignedPair:
    """Bases with ``x_alignedᴴ y_aligned = diag(c_diag)``, cosines ascending.

    ``s_block = x_perpᴴ y_aligned`` so that ``C² + SᴴS = I``.
    """

    x_aligned: np.ndarray
    y_aligned: np.ndarray
    x_perp: np.ndarray
    c_diag: np.ndarray
    s_block: np.ndarray

    @property
    def n(self) -> int:
        return self.x_aligned.shape[0]

    @property
    def k(self) -> int:
        return self.x_aligned.shape[1]


def _pair(x, y, tol):
    x = numkern.check_orthonormal(x, "X", tol)
    y = numkern.check_orthonormal(y, "Y", tol)
    if x.shape != y.shape:
        raise ContractError(f"subspace bases differ in shape: {x.shape} vs {y.shape}")
    return x, y


def principal_angles(x, y, tol_orth=DEFAULT_TOLERANCES.orth) -> np.ndarray:
    """Principal angles between ``span(x)`` and ``span(y)``, descending, in radians."""
    x, y = _pair(x, y, tol_orth)
    cos_asc = np.clip(numkern.singular_values(x.conj().T @ y)[::-1], 0.0, 1.0)
    sin_desc = np.clip(numkern.singular_values(y - x @ (x.conj().T @ y)), 0.0, 1.0)
    # the i-th largest angle pairs the i-th smallest cosine with the i-th largest sine
    return np.where(cos_asc > _SWITCH, np.arcsin(sin_desc), np.arccos(cos_asc))


def gap(x, y, tol_orth=DEFAULT_TOLERANCES.orth) -> float:
    """Sine of the largest principal angle."""
    return float(np.sin(principal_angles(x, y, tol_orth)[0]))


def align_bases(x, y, tol_orth=DEFAULT_TOLERANCES.orth) -> AlignedPair:
    x, y = _pair(x, y, tol_orth)
    u, s, v = numkern.svd(x.conj().T @ y)
    xa = x @ u[:, ::-1]
    ya = y @ v[:, ::-1]
    c = np.clip(s[::-1], 0.0, 1.0)
    xp = numkern.complete_basis(xa)
    return AlignedPair(xa, ya, xp, c, xp.conj().T @ ya)


def sines_padded(pair: AlignedPair) -> np.ndarray:
    """Singular values of the S block, zero padded to length k."""
    s = numkern.singular_values(pair.s_block) if pair.s_block.size else np.zeros(0)
    return pad_to(np.clip(s, 0.0, 1.0), pair.k)


def perturb_subspace(x, target, seed=None, complement=None, tol_orth=DEFAULT_TOLERANCES.orth) -> np.ndarray:
    """Basis ``Y`` whose principal angles to ``span(x)`` are ``target``.

    Targets are sorted descending and the i-th is assigned to column ``x[:, i]``:
    ``y_i = x_i cos θ_i + z_i sin θ_i``, with ``z`` an orthonormal set in the
    complement of ``x``.  ``z`` is drawn from ``seed`` unless ``complement``
    supplies it (``n×m`` orthonormal, orthogonal to ``x``, ``m`` >= number of
    nonzero targets).
    """
    x = numkern.check_orthonormal(x, "X", tol_orth)
    n, k = x.shape
    theta = np.sort(np.asarray(target, dtype=float).ravel())[::-1]
    if theta.size != k:
        raise ContractError(f"need {k} target angles, got {theta.size}")
    if (theta < 0).any() or (theta > np.pi / 2).any():
        raise ContractError("target angles must lie in [0, pi/2]")
    m = int(np.count_nonzero(theta))
    if m > n - k:
        raise CapacityError(f"{m} nonzero angles need {m} complement directions, only {n - k} available")
    if m == 0:
        return x.copy()
    if complement is None:
        rng = numkern.make_rng(seed)
        g = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))
        for _ in range(2):
            g = g - x @ (x.conj().T @ g)
        z = numkern.orthonormalize(g)
    else:
        z = numkern.as_matrix(complement, "complement")[:, :m]
    y = x * np.cos(theta)
    y[:, :m] += z * np.sin(theta[:m])
    return y
