"""Seeded property suites for the classical majorization facts used by the
bounds: Lidskii, the singular value sum/product inequalities, and the vector
facts about absolute values and sums.
"""

from __future__ import annotations

import numpy as np

from .. import majorize as mj
from .. import numkern

MAX_N = 8


def _herm(n, rng):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return numkern.hermitian(g * rng.uniform(0.1, 5.0))


def _general(m, n, rng):
    return (rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))) * rng.uniform(0.1, 5.0)


def _n(rng):
    return int(rng.integers(1, MAX_N + 1))


def _weakly_below(y, rng):
    """A vector weakly majorized by ``y``: mix, then decrease some entries."""
    return mj.doubly_stochastic_mix(y, rng) - np.abs(rng.standard_normal(y.size)) * (rng.uniform(size=y.size) < 0.5)


def _lidskii(rng, t, tol):
    n = _n(rng)
    a = _herm(n, rng)
    b = a.copy() if t == 0 else _herm(n, rng)
    return mj.lidskii(a, b, tol).holds


def _singular_sum(rng, t, tol):
    n = _n(rng)
    return mj.singular_sum(_general(n, n, rng), _general(n, n, rng), 1 if t % 2 else -1, tol).holds


def _shapes(rng, t):
    if t == 0:
        return 5, 3, 4
    return _n(rng), _n(rng), _n(rng)


def _singular_product(rng, t, tol):
    m, p, q = _shapes(rng, t)
    return mj.singular_product(_general(m, p, rng), _general(p, q, rng), tol).holds


def _singular_norm(rng, t, tol):
    m, p, q = _shapes(rng, t)
    return mj.singular_norm_product(_general(m, p, rng), _general(p, q, rng), tol)


def _evsv(rng, t, tol):
    return mj.evsv(_herm(_n(rng), rng), tol)


def _absd(rng, t, tol):
    n = _n(rng)
    return mj.abs_difference(rng.standard_normal(n) * 3, rng.standard_normal(n) * 3, tol)


def _abs(rng, t, tol):
    y = rng.standard_normal(_n(rng)) * 3
    return mj.abs_of_majorized(mj.doubly_stochastic_mix(y, rng), y, tol)


def _gen(rng, t, tol):
    n = _n(rng)
    y, v = rng.standard_normal(n) * 3, rng.standard_normal(n) * 3
    x, u = _weakly_below(y, rng), _weakly_below(v, rng)
    return (mj.weakly_majorized(x, y, tol).holds and mj.weakly_majorized(u, v, tol).holds
            and mj.combination(x, y, u, v, tol))


SUITES = {
    "lidskii": _lidskii,
    "singular_sum": _singular_sum,
    "singular_product": _singular_product,
    "singular_norm_product": _singular_norm,
    "evsv": _evsv,
    "abs_difference": _absd,
    "abs_of_majorized": _abs,
    "combination": _gen,
}


def property_suites(seed: int, trials: int = 1000, tol: float = 1e-9, suites=None) -> dict:
    """Run each named suite for ``trials`` seeded trials; returns pass/fail counts."""
    out = {}
    for i, name in enumerate(suites or SUITES):
        rng = numkern.make_rng([seed, i])
        failures = [t for t in range(trials) if not SUITES[name](rng, t, tol)]
        out[name] = {"trials": trials, "passed": trials - len(failures), "failed": len(failures),
                     "first_failures": failures[:5]}
    return out
