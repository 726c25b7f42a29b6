"""Moments of the minimum completion time of p independent coupon collectors."""

from fractions import Fraction

from ._core import (
    DomainError,
    MomentOrder,
    PrecisionError,
    WorkBudgetError,
    __version__,
    completion_cdf,
    conjecture_scan,
    constants,
    estimate,
    exact_mean,
    exact_second_moment,
    pair_closed_form_mean,
    simulate,
    stirling2,
    threshold_c_N,
    truncation_index,
)


def as_fraction(pair):
    """Turn a (numerator, denominator) pair from the core into a Fraction."""
    return Fraction(*pair)


__all__ = [
    "DomainError",
    "MomentOrder",
    "PrecisionError",
    "WorkBudgetError",
    "__version__",
    "as_fraction",
    "completion_cdf",
    "conjecture_scan",
    "constants",
    "estimate",
    "exact_mean",
    "exact_second_moment",
    "pair_closed_form_mean",
    "simulate",
    "stirling2",
    "threshold_c_N",
    "truncation_index",
]
