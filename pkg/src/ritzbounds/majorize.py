"""Weak and strong majorization with explicit slack reporting, plus checks of
the classical eigenvalue/singular-value majorization facts.

Conventions: vectors of different lengths are compared after padding the
shorter one with zeros at the end; prefix sums are taken over the
descending rearrangement.  A prefix is counted as failing only when its slack
is below ``-tol * max(1, largest |prefix sum|)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import numkern
from .errors import ContractError, InputDomainError


@dataclass(frozen=True)
class MajorizationVerdict:
    holds: bool
    mode: str  # "weak" or "strong"
    prefix_slacks: np.ndarray = field(repr=False)
    total_gap: float
    worst_prefix: int | None  # 0-based index of the minimum slack
    tolerance_used: float

    @property
    def min_slack(self) -> float:
        return float(self.prefix_slacks.min()) if self.prefix_slacks.size else 0.0

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "mode": self.mode,
            "prefix_slacks": [float(v) for v in self.prefix_slacks],
            "total_gap": float(self.total_gap),
            "worst_prefix": self.worst_prefix,
            "tolerance_used": float(self.tolerance_used),
        }


def _vec(x, name, allow_posinf=False) -> np.ndarray:
    v = np.asarray(x, dtype=float).ravel()
    bad = ~np.isfinite(v)
    if allow_posinf:
        bad &= ~(v == np.inf)
    if bad.any():
        raise InputDomainError(f"{name} has non-finite entries")
    return v


def sort_desc(x) -> np.ndarray:
    return np.sort(np.asarray(x, dtype=float).ravel())[::-1]


def abs_vec(x) -> np.ndarray:
    return np.abs(np.asarray(x, dtype=float).ravel())


def pad_to(x, length: int) -> np.ndarray:
    """``x`` followed by zeros up to ``length``."""
    x = np.asarray(x, dtype=float).ravel()
    if length < x.size:
        raise ContractError(f"cannot pad a length-{x.size} vector to length {length}")
    return np.concatenate([x, np.zeros(length - x.size)])


def _common(x, y):
    m = max(x.size, y.size)
    return pad_to(x, m), pad_to(y, m)


def _verdict(x, y, tol, mode) -> MajorizationVerdict:
    x, y = _common(x, y)
    px = np.cumsum(sort_desc(x))
    py = np.cumsum(sort_desc(y))
    with np.errstate(invalid="ignore"):
        slacks = py - px
    finite = np.concatenate([np.abs(px), np.abs(py[np.isfinite(py)])])
    scale = max(1.0, float(finite.max())) if finite.size else 1.0
    tol_used = tol * scale
    total_gap = float(x.sum() - y.sum()) if x.size else 0.0
    holds = bool(slacks.size == 0 or slacks.min() >= -tol_used)
    if mode == "strong":
        holds = holds and bool(abs(total_gap) <= tol_used)
    worst = int(np.argmin(slacks)) if slacks.size else None
    return MajorizationVerdict(holds, mode, slacks, total_gap, worst, tol_used)


def weakly_majorized(x, y, tol: float = 0.0, allow_unbounded: bool = False) -> MajorizationVerdict:
    """Test ``x ≺w y``: every descending prefix sum of x is at most that of y.

    With ``allow_unbounded`` the majorant may contain ``+inf`` entries, which
    make every prefix that includes them trivially satisfied.
    """
    return _verdict(_vec(x, "x"), _vec(y, "y", allow_unbounded), tol, "weak")


def strongly_majorized(x, y, tol: float = 0.0) -> MajorizationVerdict:
    """Test ``x ≺ y``: weak majorization plus equal totals."""
    return _verdict(_vec(x, "x"), _vec(y, "y"), tol, "strong")


def pnorm_consequence(x, y, p: float, tol: float = 0.0) -> bool:
    """Check ``||x||_p <= ||y||_p`` for nonnegative vectors (padded)."""
    if p < 1:
        raise ContractError(f"p must be >= 1, got {p}")
    x, y = _common(_vec(x, "x"), _vec(y, "y"))
    if (x < 0).any() or (y < 0).any():
        raise ContractError("p-norm consequence needs nonnegative vectors")
    scale = max(x.max(initial=0.0), y.max(initial=0.0))
    if scale == 0.0:
        return True
    nx = scale * np.sum((x / scale) ** p) ** (1.0 / p)
    ny = scale * np.sum((y / scale) ** p) ** (1.0 / p)
    return bool(nx <= ny + tol * max(1.0, ny))


def doubly_stochastic_mix(y, rng, steps: int | None = None) -> np.ndarray:
    """Apply random two-coordinate averaging maps to ``y``.

    The result ``x`` satisfies ``x ≺ y`` by construction.
    """
    x = np.array(y, dtype=float)
    n = x.size
    if n < 2:
        return x
    rng = numkern.make_rng(rng)
    for _ in range(steps if steps is not None else 2 * n):
        i, j = rng.choice(n, size=2, replace=False)
        t = rng.uniform()
        xi, xj = x[i], x[j]
        x[i] = t * xi + (1 - t) * xj
        x[j] = (1 - t) * xi + t * xj
    return x


# Classical facts, each returning a verdict on concrete inputs.

def lidskii(a, b, tol=1e-9) -> MajorizationVerdict:
    """λ(A) - λ(B) ≺ λ(A - B) for Hermitian A, B."""
    diff = numkern.eigvalsh(a) - numkern.eigvalsh(b)
    return strongly_majorized(diff, numkern.eigvalsh(numkern.hermitian(a - b)), tol)


def singular_sum(a, b, sign=1, tol=1e-9) -> MajorizationVerdict:
    """s(A ± B) ≺w s(A) + s(B)."""
    sa, sb = numkern.singular_values(a), numkern.singular_values(b)
    return weakly_majorized(numkern.singular_values(a + sign * b), sa + sb, tol)


def singular_product(a, b, tol=1e-9) -> MajorizationVerdict:
    """s(AB) ≺w s(A) s(B), zero-padding where shapes differ."""
    sa, sb = numkern.singular_values(a), numkern.singular_values(b)
    m = max(sa.size, sb.size)
    return weakly_majorized(numkern.singular_values(a @ b), pad_to(sa, m) * pad_to(sb, m), tol)


def singular_norm_product(a, b, tol=1e-9) -> bool:
    """s(AB) <= ||A|| s(B) and s(AB) <= ||B|| s(A), elementwise after padding."""
    sab = numkern.singular_values(a @ b)
    sa, sb = numkern.singular_values(a), numkern.singular_values(b)
    scale = max(1.0, sa[0] * sb[0])
    ok = True
    for bound in (sa[0] * sb, sb[0] * sa):
        m = max(sab.size, bound.size)
        ok &= bool(np.all(pad_to(sab, m) <= pad_to(bound, m) + tol * scale))
    return ok


def evsv(a, tol=1e-9) -> bool:
    """|λ(±A)|↓ = s(A) for Hermitian A."""
    lam = numkern.eigvalsh(a)
    s = numkern.singular_values(a)
    scale = max(1.0, float(s[0]))
    return bool(
        np.allclose(sort_desc(abs_vec(lam)), s, rtol=0, atol=tol * scale)
        and np.allclose(sort_desc(abs_vec(-lam)), s, rtol=0, atol=tol * scale)
    )


def abs_difference(x, y, tol=1e-9) -> bool:
    """|x ± y| ≺w |x|↓ + |y|↓."""
    bound = sort_desc(abs_vec(x)) + sort_desc(abs_vec(y))
    return all(weakly_majorized(abs_vec(x + s * y), bound, tol).holds for s in (1, -1))


def abs_of_majorized(x, y, tol=1e-9) -> bool:
    """x ≺ y ⇒ |x| ≺w |y|; vacuously true when x ≺ y fails."""
    if not strongly_majorized(x, y, tol).holds:
        return True
    return weakly_majorized(abs_vec(x), abs_vec(y), tol).holds


def combination(x, y, u, v, tol=1e-9) -> bool:
    """x ≺w y and u ≺w v ⇒ x + u ≺ x↓ + u↓ ≺w y↓ + v↓."""
    if not (weakly_majorized(x, y, tol).holds and weakly_majorized(u, v, tol).holds):
        return True
    middle = sort_desc(x) + sort_desc(u)
    return (
        strongly_majorized(np.asarray(x) + np.asarray(u), middle, tol).holds
        and weakly_majorized(middle, sort_desc(y) + sort_desc(v), tol).holds
    )
