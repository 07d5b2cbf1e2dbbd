"""Verification toolkit for a-priori Rayleigh-Ritz eigenvalue error bounds."""

from .bounds import (
    ALL_BOUNDS,
    BoundCheckReport,
    BoundId,
    check_all,
    check_bound,
    intermediate_majorant,
    lhs_ritz_diff,
    rhs_vector,
)
from .majorize import MajorizationVerdict, strongly_majorized, weakly_majorized
from .ritz import classify_invariant, invariant_subspace, ritz_values, spread
from .subspace import align_bases, gap, perturb_subspace, principal_angles

__version__ = "0.1.0"
