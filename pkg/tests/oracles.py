"""Independent reference implementations used only by the tests."""

from fractions import Fraction
from itertools import accumulate


def exact_prefix_slacks(x, y):
    """Prefix-sum slacks of descending rearrangements in exact rational arithmetic."""
    m = max(len(x), len(y))
    xs = sorted((Fraction(v) for v in list(x) + [0] * (m - len(x))), reverse=True)
    ys = sorted((Fraction(v) for v in list(y) + [0] * (m - len(y))), reverse=True)
    return [b - a for a, b in zip(accumulate(xs), accumulate(ys))]


def exact_weak(x, y):
    return all(s >= 0 for s in exact_prefix_slacks(x, y))


def exact_strong(x, y):
    s = exact_prefix_slacks(x, y)
    return all(v >= 0 for v in s) and (not s or s[-1] == 0)
