"""Sample scale estimators.

All estimators accept a 1-D sample or a 2-D array of samples (one sample
per row, reduced along the last axis), which is how the Monte Carlo engine
evaluates a whole block of replicates at once.
"""
from __future__ import annotations

import enum
import math
from fractions import Fraction

import numpy as np

from .distributions import DomainError

__all__ = [
    "ScaleKind",
    "MeanDevScaling",
    "sample_median",
    "sd_n",
    "sd_n_pairwise",
    "mean_dev_n",
    "gini_n",
    "gini_n_naive",
    "empirical_quantile",
    "iqr_n",
    "estimate",
]

# above this length 1-D sums go through math.fsum
_COMPENSATED_MIN_N = 10_000


class ScaleKind(enum.Enum):
    SD = "sd"
    MEANDEV = "meandev"
    GINI = "gini"
    IQR = "iqr"


class MeanDevScaling(enum.Enum):
    CORRECTED = "corrected"  # 1/(n-1)
    PLAIN = "plain"  # 1/n


def _as_samples(x, min_n=2):
    x = np.asarray(x, dtype=float)
    if x.ndim not in (1, 2):
        raise DomainError("expected a 1-D sample or a 2-D array of samples")
    n = x.shape[-1]
    if n < min_n:
        raise DomainError(f"need at least {min_n} observations, got {n}")
    if not np.all(np.isfinite(x)):
        raise DomainError("sample contains non-finite values")
    return x, n


def _sum(v):
    if v.ndim == 1 and v.shape[0] >= _COMPENSATED_MIN_N:
        return math.fsum(v)
    return np.sum(v, axis=-1)


def _out(v):
    return float(v) if np.ndim(v) == 0 else v


def sample_median(x):
    """Center of the set of medians of the empirical distribution.

    For even n this is the midpoint of the two middle order statistics.
    """
    x, _ = _as_samples(x, min_n=1)
    return _out(np.median(x, axis=-1))


def sd_n(x):
    """Sample standard deviation with the 1/(n-1) factor."""
    x, n = _as_samples(x)
    centered = x - np.mean(x, axis=-1, keepdims=True)
    return _out(np.sqrt(_sum(centered * centered) / (n - 1)))


def sd_n_pairwise(x):
    """Sample standard deviation from the pairwise form.

    ``{1/(n(n-1)) sum_{i<j} (x_i - x_j)^2}^(1/2)``; O(n^2), used as a check.
    """
    x, n = _as_samples(x)
    diff = x[..., :, None] - x[..., None, :]
    total = np.sum(diff * diff, axis=(-2, -1)) / 2
    return _out(np.sqrt(total / (n * (n - 1))))


def mean_dev_n(x, scaling=MeanDevScaling.CORRECTED):
    """Mean absolute deviation about the sample median.

    Parameters
    ----------
    x : array_like
        Sample, or 2-D array of samples along the last axis.
    scaling : MeanDevScaling
        ``CORRECTED`` divides by n - 1, ``PLAIN`` by n.
    """
    x, n = _as_samples(x)
    scaling = MeanDevScaling(scaling)
    med = np.median(x, axis=-1, keepdims=True)
    total = _sum(np.abs(x - med))
    return _out(total / (n - 1 if scaling is MeanDevScaling.CORRECTED else n))


def gini_n(x):
    """Gini's mean difference, the average of all pairwise distances.

    Uses the order-statistic identity
    ``sum_{i<j} |x_i - x_j| = sum_i (2i - n - 1) x_(i)``, so the cost is
    that of a sort.
    """
    x, n = _as_samples(x)
    xs = np.sort(x, axis=-1)
    weights = 2.0 * np.arange(1, n + 1) - n - 1
    return _out(2.0 * _sum(weights * xs) / (n * (n - 1)))


def gini_n_naive(x):
    """Gini's mean difference by explicit enumeration of all pairs."""
    x, n = _as_samples(x)
    diff = np.abs(x[..., :, None] - x[..., None, :])
    # every unordered pair appears twice in the full matrix
    return _out(np.sum(diff, axis=(-2, -1)) / (n * (n - 1)))


def empirical_quantile(x, p):
    """Empirical p-quantile, taking the center of the quantile interval.

    When ``n p`` is an integer k the set of p-quantiles of the empirical
    distribution is ``[x_(k), x_(k+1)]`` and its midpoint is returned;
    otherwise the quantile is the unique order statistic ``x_(ceil(np))``.
    This agrees with :func:`sample_median` at p = 1/2.
    """
    x, n = _as_samples(x, min_n=1)
    if not 0 < p < 1:
        raise DomainError("quantile level must lie in (0, 1)")
    xs = np.sort(x, axis=-1)
    k = Fraction(p) * n
    if k.denominator == 1:
        k = int(k)
        return _out(0.5 * (xs[..., k - 1] + xs[..., k]))
    return _out(xs[..., math.ceil(k) - 1])


def iqr_n(x):
    """Interquartile range from interval-center empirical quartiles."""
    _as_samples(x, min_n=4)
    return _out(np.asarray(empirical_quantile(x, 0.75)) - np.asarray(empirical_quantile(x, 0.25)))


def estimate(kind, x):
    """Dispatch on :class:`ScaleKind`."""
    kind = ScaleKind(kind)
    if kind is ScaleKind.SD:
        return sd_n(x)
    if kind is ScaleKind.MEANDEV:
        return mean_dev_n(x)
    if kind is ScaleKind.GINI:
        return gini_n(x)
    return iqr_n(x)
