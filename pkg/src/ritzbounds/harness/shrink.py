"""Greedy minimization of bound-violating instances.

The instance is first rotated into the eigenbasis of A (and, when X is
invariant, into a basis where X is spanned by coordinate vectors).  The
following moves are then tried in order, keeping the first one that still
violates the bound, until none does:

1. drop one coordinate (reduces n),
2. drop one dimension of both subspaces (reduces k),
3. snap the affinely normalized spectrum to a coarse grid,
4. snap the cosines of the principal angles to multiples of 1/8.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import numkern, ritz
from ..bounds import BoundCheckReport, check_bound, parse_bound
from ..errors import ContractError
from ..matio import format_matrix
from ..numkern import DEFAULT_TOLERANCES

SPECTRUM_GRIDS = (1.0, 0.5, 0.25, 0.125)
COSINE_GRID = 0.125


@dataclass
class ShrinkResult:
    a: np.ndarray
    x: np.ndarray
    y: np.ndarray
    report: BoundCheckReport
    steps: list = field(default_factory=list)

    @property
    def changed(self) -> bool:
        return bool(self.steps)

    def to_dict(self) -> dict:
        return {
            "n": int(self.a.shape[0]),
            "k": int(self.x.shape[1]),
            "steps": list(self.steps),
            "report": self.report.to_dict(),
            "matrices": {"A": format_matrix(self.a), "X": format_matrix(self.x), "Y": format_matrix(self.y)},
        }


@dataclass
class _State:
    lam: np.ndarray
    y: np.ndarray
    support: list | None  # coordinates spanning X when X is invariant
    x: np.ndarray | None = None  # explicit X otherwise

    def build(self):
        n = self.lam.size
        if self.support is not None:
            x = np.eye(n, dtype=np.complex128)[:, self.support]
        else:
            x = self.x
        return np.diag(self.lam).astype(np.complex128), x, self.y


def _canonical(a, x, y, tol_inv) -> _State:
    if not ritz.classify_invariant(a, x, tol_inv).invariant and ritz.classify_invariant(a, y, tol_inv).invariant:
        x, y = y, x
    if ritz.classify_invariant(a, x, tol_inv).invariant:
        k = x.shape[1]
        mu1, w1 = numkern.eigh(ritz.compress(a, x))
        xp = numkern.complete_basis(x)
        if xp.shape[1]:
            mu2, w2 = numkern.eigh(ritz.compress(a, xp))
            q = np.hstack([x @ w1, xp @ w2])
            lam = np.concatenate([mu1, mu2])
        else:
            q, lam = x @ w1, mu1
        return _State(lam, q.conj().T @ y, list(range(k)))
    lam, v = numkern.eigh(a)
    return _State(lam, v.conj().T @ y, None, v.conj().T @ x)


def _orth(m):
    try:
        return numkern.orthonormalize(m, rank_tol=1e-8)
    except ContractError:
        return None


def _align(x, y):
    u, s, v = numkern.svd(x.conj().T @ y)
    return x @ u[:, ::-1], y @ v[:, ::-1], np.clip(s[::-1], 0.0, 1.0)


def _drop_coordinate(st: _State, j):
    if st.support is not None and j in st.support:
        return None
    if st.lam.size - 1 < st.y.shape[1]:
        return None
    y = _orth(np.delete(st.y, j, axis=0))
    if y is None:
        return None
    if st.support is not None:
        return _State(np.delete(st.lam, j), y, [i - (i > j) for i in st.support])
    x = _orth(np.delete(st.x, j, axis=0))
    return None if x is None else _State(np.delete(st.lam, j), y, None, x)


def _drop_dimension(st: _State, i, c):
    _, x, y = st.build()
    xa, ya, _ = _align(x, y)
    keep = [j for j in range(y.shape[1]) if j != c]
    if st.support is not None:
        return _State(st.lam.copy(), ya[:, keep], [s for s in st.support if s != st.support[i]])
    return _State(st.lam.copy(), ya[:, keep], None, xa[:, keep])


def _snap_spectrum(st: _State, grid):
    lo, hi = st.lam.min(), st.lam.max()
    if hi == lo:
        return None
    lam = np.round((st.lam - 0.5 * (hi + lo)) / (0.5 * (hi - lo)) / grid) * grid
    if np.array_equal(lam, st.lam):
        return None
    return _State(lam, st.y.copy(), st.support, None if st.x is None else st.x.copy())


def _snap_cosines(st: _State, which):
    _, x, y = st.build()
    xa, ya, c = _align(x, y)
    resid = ya - xa * c
    norms = np.linalg.norm(resid, axis=0)
    new_c = c.copy()
    for i in which:
        if norms[i] < 1e-12:
            continue
        new_c[i] = np.round(c[i] / COSINE_GRID) * COSINE_GRID
    if np.abs(new_c - c).max() <= 1e-12:
        return None
    z = resid / np.where(norms < 1e-12, 1.0, norms)
    y_new = xa * new_c + z * np.sqrt(np.clip(1.0 - new_c**2, 0.0, 1.0))
    # X is kept in aligned form so that y_new pairs with it column by column
    if st.support is not None:
        return _State(st.lam.copy(), y_new, st.support)
    return _State(st.lam.copy(), y_new, None, xa)


def _candidates(st: _State):
    n, k = st.y.shape
    for j in range(n - 1, -1, -1):
        yield f"drop coordinate {j}", lambda j=j: _drop_coordinate(st, j)
    if k > 1:
        for i in range(k):
            for c in range(k):
                yield f"drop dimension {i}/{c}", lambda i=i, c=c: _drop_dimension(st, i, c)
    for g in SPECTRUM_GRIDS:
        yield f"snap spectrum to grid {g}", lambda g=g: _snap_spectrum(st, g)
    yield "snap all cosines", lambda: _snap_cosines(st, range(k))
    for i in range(k):
        yield f"snap cosine {i}", lambda i=i: _snap_cosines(st, [i])


def shrink(a, x, y, bound, tol=1e-9, rhs_scale=1.0, tol_inv=DEFAULT_TOLERANCES.inv,
           max_rounds=200) -> ShrinkResult:
    """Greedily minimize a violating instance; the result still violates.

    An instance on which no move preserves the violation is returned unchanged.
    """
    bound = parse_bound(bound)
    first = check_bound(bound, a, x, y, tol, tol_inv=tol_inv, rhs_scale=rhs_scale)
    if not first.violated:
        raise ContractError(f"instance does not violate {bound.value}")

    def violation(state):
        if state is None:
            return None
        try:
            r = check_bound(bound, *state.build(), tol, tol_inv=tol_inv, rhs_scale=rhs_scale)
        except ContractError:
            return None
        return r if r.violated else None

    st = _canonical(a, x, y, tol_inv)
    report = violation(st)
    if report is None:
        # canonicalization alone lost the violation (roundoff at the margin)
        return ShrinkResult(a, x, y, first)
    steps = []
    for _ in range(max_rounds):
        for desc, make in _candidates(st):
            cand = make()
            r = violation(cand)
            if r is not None:
                st, report = cand, r
                steps.append(desc)
                break
        else:
            break
    if not steps:
        return ShrinkResult(a, x, y, first)
    return ShrinkResult(*st.build(), report, steps)
