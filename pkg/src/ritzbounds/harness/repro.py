"""Exact reproductions of the two worked examples: the family on which the
sine-squared bound is attained with equality, and the 4×4 instance on which
the intermediate majorant fails to be bounded by ``spr(A) sin²θ``.
"""

from __future__ import annotations

import numpy as np

from .. import ritz
from ..bounds import BoundCheckReport, BoundId, check_bound, intermediate_majorant, lhs_ritz_diff
from ..errors import ReproductionError
from ..majorize import abs_vec, sort_desc, weakly_majorized
from ..subspace import align_bases, principal_angles

SHARP_TOL = 1e-10
EXACT_TOL = 1e-12


def _require(ok, what):
    if not ok:
        raise ReproductionError(what)


def sharp_instance(angles):
    """``(A, X, Y)`` with ``A = diag(I, -I)``, ``X = [I; 0]``, ``Y = [C; S]``."""
    th = np.sort(np.asarray(angles, dtype=float).ravel())[::-1]
    if th.size < 1:
        raise ReproductionError("need at least one angle")
    if (th < 0).any() or (th > np.pi / 2).any():
        raise ReproductionError("angles must lie in [0, pi/2]")
    m = th.size
    a = np.diag(np.concatenate([np.ones(m), -np.ones(m)])).astype(np.complex128)
    x = np.vstack([np.eye(m), np.zeros((m, m))]).astype(np.complex128)
    y = np.vstack([np.diag(np.cos(th)), np.diag(np.sin(th))]).astype(np.complex128)
    return a, x, y, th


def repro_sharp(m: int, angles, tol: float = SHARP_TOL) -> BoundCheckReport:
    """Build the equality family for ``m`` angles and verify it.

    Raises ``ReproductionError`` unless ``lhs = 2 sin²θ = spr(A) sin²θ`` with
    every prefix slack within ``tol`` of zero.
    """
    angles = np.asarray(angles, dtype=float).ravel()
    if angles.size != m:
        raise ReproductionError(f"expected {m} angles, got {angles.size}")
    a, x, y, th = sharp_instance(angles)
    rep = check_bound(BoundId.CONJECTURE_SIN2, a, x, y, tol=tol)
    expected = 2.0 * np.sin(th) ** 2
    _require(rep.spread == 2.0, f"spread {rep.spread} != 2")
    _require(rep.applicable, f"bound not applicable: {rep.reason}")
    _require(np.abs(rep.lhs - expected).max() <= tol, f"lhs {rep.lhs} != 2 sin^2 {expected}")
    _require(np.abs(rep.rhs - expected).max() <= tol, f"rhs {rep.rhs} != 2 sin^2 {expected}")
    _require(np.abs(rep.verdict.prefix_slacks).max() <= tol,
             f"prefix slacks {rep.verdict.prefix_slacks} are not all zero")
    return rep


def intermediate_instance():
    """The 4×4 instance with ``A = diag([[0,1],[1,0]], I)`` and ``[X, X⊥] = I``."""
    a = np.array([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], dtype=np.complex128)
    yy = np.array([[0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1]], dtype=np.complex128)
    return a, np.eye(4, dtype=np.complex128)[:, :2], yy[:, :2]


def repro_intermediate_counterexample() -> dict:
    """Verify every displayed quantity of the 4×4 instance and return them."""
    a, x, y = intermediate_instance()
    close = lambda u, v: np.allclose(u, v, rtol=0, atol=EXACT_TOL)  # noqa: E731

    theta = principal_angles(x, y)
    _require(close(theta, [np.pi / 2, 0.0]), f"angles {theta} != (pi/2, 0)")
    xax = x.conj().T @ a @ x
    yay = y.conj().T @ a @ y
    _require(close(xax, [[0, 1], [1, 0]]), f"XᴴAX = {xax}")
    _require(close(yay, np.diag([1.0, 0.0])), f"YᴴAY = {yay}")
    spr = ritz.spread(a)
    _require(abs(spr - 2.0) <= EXACT_TOL, f"spread {spr} != 2")

    pair = align_bases(x, y)
    cs = np.diag(pair.c_diag ** 2) + pair.s_block.conj().T @ pair.s_block
    _require(close(cs, np.eye(2)), "C² + SᴴS != I")
    a22 = pair.x_perp.conj().T @ a @ pair.x_perp
    sas = pair.s_block.conj().T @ a22 @ pair.s_block
    _require(close(np.sort(np.linalg.eigvalsh(sas))[::-1], [1.0, 0.0]), f"SᴴA22S = {sas}")
    identity_gap = ritz.block_ritz_identity(a, pair)
    _require(identity_gap <= EXACT_TOL, f"YᴴAY != CA11C + SᴴA22S ({identity_gap})")

    lhs = lhs_ritz_diff(a, x, y)
    _require(close(lhs, [1.0, 0.0]), f"lhs {lhs} != (1, 0)")
    conj = check_bound(BoundId.CONJECTURE_SIN2, a, x, y)
    _require(conj.applicable and conj.holds, "sine-squared bound should hold on this instance")
    _require(close(conj.rhs, [2.0, 0.0]), f"rhs {conj.rhs} != (2, 0)")

    vec_a = intermediate_majorant(a, pair)
    _require(close(vec_a, [1.0, -2.0]), f"intermediate vector {vec_a} != (1, -2)")
    abs_a = sort_desc(abs_vec(vec_a))
    failed = weakly_majorized(abs_a, conj.rhs, tol=EXACT_TOL)
    _require(not failed.holds, "|a| should not be weakly majorized by spr sin²θ")
    _require(failed.worst_prefix == 1 and abs(failed.min_slack + 1.0) <= EXACT_TOL,
             f"expected failure at prefix 2 with slack -1, got {failed.worst_prefix + 1}, {failed.min_slack}")

    return {
        "angles_rad": [float(t) for t in theta],
        "spread": float(spr),
        "XhAX": xax.real.tolist(),
        "YhAY": yay.real.tolist(),
        "c_diag": [float(c) for c in pair.c_diag],
        "ShA22S_eigenvalues": [1.0, 0.0],
        "ritz_x": [float(v) for v in ritz.ritz_values(a, x)],
        "ritz_y": [float(v) for v in ritz.ritz_values(a, y)],
        "lhs": [float(v) for v in lhs],
        "rhs_sin2": [float(v) for v in conj.rhs],
        "sin2_bound_holds": bool(conj.holds),
        "intermediate_vector": [float(v) for v in vec_a],
        "abs_intermediate_sorted": [float(v) for v in abs_a],
        "intermediate_majorized": bool(failed.holds),
        "failed_prefix": int(failed.worst_prefix) + 1,
        "failed_slack": float(failed.min_slack),
    }
