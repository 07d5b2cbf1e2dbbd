"""Ritz-value perturbation bounds: right-hand sides, left-hand side, verdicts
and applicability routing.

Every bound compares ``|λ(XᴴAX) - λ(YᴴAY)|`` (both spectra descending, then
the absolute differences re-sorted descending) with ``spr(A)`` times a
function of the principal angles, either by weak majorization or, for the
two ``MAX_*`` bounds, as a scalar comparison of the largest entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import numkern, ritz
from .errors import ContractError
from .majorize import MajorizationVerdict, weakly_majorized
from .numkern import DEFAULT_TOLERANCES
from .subspace import AlignedPair, principal_angles

DEFAULT_TOL = 1e-9


class BoundId(str, Enum):
    SIN_1D = "SIN_1D"
    SIN2_1D = "SIN2_1D"
    SIN_GENERAL = "SIN_GENERAL"
    MAX_GENERAL = "MAX_GENERAL"
    MAX_INVARIANT_EXTREME = "MAX_INVARIANT_EXTREME"
    CONJECTURE_SIN2 = "CONJECTURE_SIN2"
    THM_ECOS = "THM_ECOS"
    SIN2_PLUS_SIN4 = "SIN2_PLUS_SIN4"
    THREE_HALVES_SIN2 = "THREE_HALVES_SIN2"
    TAN2 = "TAN2"

    def __str__(self):
        return self.value


ALL_BOUNDS = tuple(BoundId)
SCALAR_BOUNDS = frozenset({BoundId.MAX_GENERAL, BoundId.MAX_INVARIANT_EXTREME})
ONE_DIMENSIONAL = frozenset({BoundId.SIN_1D, BoundId.SIN2_1D})
NEEDS_INVARIANT = frozenset({
    BoundId.SIN2_1D, BoundId.MAX_INVARIANT_EXTREME, BoundId.CONJECTURE_SIN2, BoundId.THM_ECOS,
    BoundId.SIN2_PLUS_SIN4, BoundId.THREE_HALVES_SIN2, BoundId.TAN2,
})
# proven results; the conjecture is proven only in the contiguous/half regimes
THEOREM_STATUS = frozenset(ALL_BOUNDS) - {BoundId.CONJECTURE_SIN2}


def parse_bound(name) -> BoundId:
    try:
        return BoundId(str(name).strip().upper())
    except ValueError:
        raise ContractError(f"unknown bound {name!r}; choose from {[b.value for b in BoundId]}") from None


def _jsonable(v):
    return [float(t) if np.isfinite(t) else None for t in np.asarray(v, dtype=float)]


@dataclass(frozen=True)
class BoundCheckReport:
    bound: BoundId
    applicable: bool
    reason: str | None
    lhs: np.ndarray = field(repr=False)
    rhs: np.ndarray = field(repr=False)
    relation: str
    verdict: MajorizationVerdict | None = field(repr=False)
    invariant_side: str
    angles: np.ndarray = field(repr=False)
    spread: float
    tolerance: float
    ritz_x: np.ndarray = field(repr=False)
    ritz_y: np.ndarray = field(repr=False)
    tags: dict = field(default_factory=dict)
    theorem_regime: bool = False
    rhs_scale: float = 1.0

    @property
    def holds(self) -> bool | None:
        return None if self.verdict is None else self.verdict.holds

    @property
    def violated(self) -> bool:
        return self.applicable and self.verdict is not None and not self.verdict.holds

    @property
    def unbounded_rhs(self) -> bool:
        return bool(np.isinf(self.rhs).any())

    @property
    def theorem_status(self) -> bool:
        """True when a violation of this report would contradict a proven result."""
        return self.bound in THEOREM_STATUS or self.theorem_regime

    def to_dict(self) -> dict:
        v = self.verdict
        return {
            "bound": self.bound.value,
            "applicable": self.applicable,
            "reason": self.reason,
            "holds": self.holds,
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "prefix_slacks": _jsonable(v.prefix_slacks) if v else None,
            "worst_prefix": v.worst_prefix if v else None,
            "angles_rad": _jsonable(self.angles),
            "spread": float(self.spread),
            "invariant_side": self.invariant_side,
            "tolerance": float(self.tolerance),
            "relation": self.relation,
            "unbounded_rhs": self.unbounded_rhs,
            "ritz_x": _jsonable(self.ritz_x),
            "ritz_y": _jsonable(self.ritz_y),
            "ritz_diff_unsorted": _jsonable(np.abs(self.ritz_x - self.ritz_y)),
            "invariant_tags": dict(self.tags),
            "rhs_scale": float(self.rhs_scale),
        }


def lhs_ritz_diff(a, x, y) -> np.ndarray:
    """``|λ(XᴴAX) - λ(YᴴAY)|`` sorted descending."""
    if x.shape != y.shape:
        raise ContractError(f"X and Y differ in shape: {x.shape} vs {y.shape}")
    d = np.abs(ritz.ritz_values(a, x) - ritz.ritz_values(a, y))
    return np.sort(d)[::-1]


def rhs_vector(bound, spread: float, angles) -> np.ndarray:
    """Right-hand side of ``bound`` for a descending angle vector."""
    bound = parse_bound(bound)
    if spread < 0:
        raise ContractError("spread must be nonnegative")
    th = np.asarray(angles, dtype=float)
    right = th >= np.pi / 2
    s = np.where(right, 1.0, np.sin(th))
    c = np.where(right, 0.0, np.cos(th))
    s2 = s * s
    one_minus_cos = 2.0 * np.sin(th / 2.0) ** 2
    if bound in (BoundId.SIN_1D, BoundId.SIN_GENERAL):
        f = s
    elif bound in (BoundId.SIN2_1D, BoundId.CONJECTURE_SIN2):
        f = s2
    elif bound is BoundId.MAX_GENERAL:
        f = s[:1]
    elif bound is BoundId.MAX_INVARIANT_EXTREME:
        f = s2[:1]
    elif bound is BoundId.THM_ECOS:
        f = one_minus_cos + 0.5 * s2
    elif bound is BoundId.SIN2_PLUS_SIN4:
        f = s2 + 0.5 * s2 * s2
    elif bound is BoundId.THREE_HALVES_SIN2:
        f = 1.5 * s2
    else:  # TAN2
        with np.errstate(divide="ignore"):
            f = np.where(c == 0.0, np.inf, s2 / np.where(c == 0.0, 1.0, c * c))
    # 0 * inf must not occur: a zero spread makes every bound an equality at zero
    return np.where(np.isinf(f) & (spread == 0), 0.0, spread * f)


@dataclass(frozen=True)
class _Instance:
    lam: np.ndarray
    spread: float
    ritz_x: np.ndarray
    ritz_y: np.ndarray
    lhs: np.ndarray
    angles: np.ndarray
    class_x: ritz.InvariantClass
    class_y: ritz.InvariantClass

    @property
    def invariant_side(self) -> str:
        xi, yi = self.class_x.invariant, self.class_y.invariant
        return {(True, True): "both", (True, False): "X", (False, True): "Y"}.get((xi, yi), "none")

    def invariant_classes(self):
        return [c for c in (self.class_x, self.class_y) if c.invariant]


def _prepare(a, x, y, tol_inv, tol_orth) -> _Instance:
    a = numkern.as_matrix(a, "A")
    x = numkern.check_orthonormal(x, "X", tol_orth)
    y = numkern.check_orthonormal(y, "Y", tol_orth)
    if x.shape != y.shape:
        raise ContractError(f"X and Y differ in shape: {x.shape} vs {y.shape}")
    if a.shape != (x.shape[0], x.shape[0]):
        raise ContractError(f"A has shape {a.shape}, bases live in dimension {x.shape[0]}")
    lam = numkern.eigvalsh(a)
    rx = numkern.eigvalsh(ritz.compress(a, x))
    ry = numkern.eigvalsh(ritz.compress(a, y))
    return _Instance(
        lam=lam,
        spread=float(lam[0] - lam[-1]),
        ritz_x=rx,
        ritz_y=ry,
        lhs=np.sort(np.abs(rx - ry))[::-1],
        angles=principal_angles(x, y, tol_orth),
        class_x=ritz.classify_invariant(a, x, tol_inv, lam),
        class_y=ritz.classify_invariant(a, y, tol_inv, lam),
    )


def _applicability(bound: BoundId, inst: _Instance) -> str | None:
    if bound in ONE_DIMENSIONAL and inst.lhs.size != 1:
        return f"requires one-dimensional subspaces (k={inst.lhs.size})"
    if bound in NEEDS_INVARIANT:
        classes = inst.invariant_classes()
        if not classes:
            return "no invariant side"
        if bound is BoundId.MAX_INVARIANT_EXTREME and not any(c.contiguous for c in classes):
            return "invariant side is not a contiguous set of extreme eigenvalues"
    return None


def _evaluate(bound: BoundId, inst: _Instance, tol: float, rhs_scale: float) -> BoundCheckReport:
    reason = _applicability(bound, inst)
    rhs = rhs_scale * rhs_vector(bound, inst.spread, inst.angles)
    if bound in SCALAR_BOUNDS:
        lhs, relation = inst.lhs[:1], "scalar-max"
    else:
        lhs, relation = inst.lhs, "weak-majorization"
    verdict = None if reason else weakly_majorized(lhs, rhs, tol, allow_unbounded=True)
    regime = bound is BoundId.CONJECTURE_SIN2 and any(
        c.contiguous or c.half for c in inst.invariant_classes()
    )
    return BoundCheckReport(
        bound=bound,
        applicable=reason is None,
        reason=reason,
        lhs=lhs,
        rhs=rhs,
        relation=relation,
        verdict=verdict,
        invariant_side=inst.invariant_side,
        angles=inst.angles,
        spread=inst.spread,
        tolerance=tol,
        ritz_x=inst.ritz_x,
        ritz_y=inst.ritz_y,
        tags={"X": inst.class_x.tag, "Y": inst.class_y.tag},
        theorem_regime=regime,
        rhs_scale=rhs_scale,
    )


def check_bound(bound, a, x, y, tol=DEFAULT_TOL, tol_inv=DEFAULT_TOLERANCES.inv,
                tol_orth=DEFAULT_TOLERANCES.orth, rhs_scale=1.0) -> BoundCheckReport:
    """Evaluate one bound on ``(A, X, Y)``.

    Inapplicable bounds are reported with a reason rather than raised.
    ``rhs_scale`` multiplies the right-hand side; values below one give a
    deliberately falsified bound for self-tests.
    """
    return _evaluate(parse_bound(bound), _prepare(a, x, y, tol_inv, tol_orth), tol, rhs_scale)


def check_all(a, x, y, tol=DEFAULT_TOL, bounds=ALL_BOUNDS, tol_inv=DEFAULT_TOLERANCES.inv,
              tol_orth=DEFAULT_TOLERANCES.orth, rhs_scale=1.0) -> list[BoundCheckReport]:
    inst = _prepare(a, x, y, tol_inv, tol_orth)
    wanted = {parse_bound(b) for b in bounds}
    return [_evaluate(b, inst, tol, rhs_scale) for b in ALL_BOUNDS if b in wanted]


def intermediate_majorant(a, pair: AlignedPair, tol_inv=DEFAULT_TOLERANCES.inv) -> np.ndarray:
    """``[λ(A11) - λ(C A11 C)]↓ + λ(-Sᴴ A22 S)`` for A-invariant ``x_aligned``.

    This vector majorizes ``λ(XᴴAX) - λ(YᴴAY)`` but its absolute value is not
    always weakly majorized by ``spr(A) sin²θ``.
    """
    a11, a22 = ritz.invariant_blocks(a, pair, tol_inv)
    c = np.diag(pair.c_diag)
    first = np.sort(numkern.eigvalsh(a11) - numkern.eigvalsh(numkern.hermitian(c @ a11 @ c)))[::-1]
    s = pair.s_block
    if s.size:
        second = numkern.eigvalsh(numkern.hermitian(-(s.conj().T @ a22 @ s)))
    else:
        second = np.zeros(pair.k)
    return first + second
