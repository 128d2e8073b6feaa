"""Influence functions of the standard deviation, mean deviation and Gini's
mean difference."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import closedform
from .distributions import DomainError
from .estimators import ScaleKind

__all__ = ["InfluenceCurve", "influence_value", "influence_curve", "influence_table"]


def _kind(kind):
    kind = ScaleKind(kind)
    if kind is ScaleKind.IQR:
        raise DomainError("influence functions are provided for sd, meandev and gini only")
    return kind


def influence_value(kind, d, x):
    """Influence function of the scale functional ``kind`` at ``d``.

    Parameters
    ----------
    kind : ScaleKind or str
        ``sd``, ``meandev`` or ``gini``.
    d : DistributionSpec
        Continuous distribution.
    x : float or array_like
        Contamination point(s).
    """
    kind = _kind(kind)
    x = np.asarray(x, dtype=float)
    if kind is ScaleKind.SD:
        m = d.moments()
        sigma = closedform.population_sigma(d)
        out = ((m.mu1 - x) ** 2 - sigma ** 2) / (2 * sigma)
    elif kind is ScaleKind.MEANDEV:
        # median of a symmetric family is its center
        out = np.abs(x - d.center) - closedform.population_d(d)
    else:
        above = np.asarray(d.truncated_mean_above(x))
        below = d.moments().mu1 - above
        F = np.asarray(d.cdf(x))
        out = 2 * (x * (2 * F - 1) + above - below - closedform.population_g(d))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class InfluenceCurve:
    kind: ScaleKind
    dist: object
    x: np.ndarray
    values: np.ndarray

    @property
    def grid(self):
        return list(zip(self.x.tolist(), self.values.tolist()))


def _grid(x_min, x_max, points):
    if not (np.isfinite(x_min) and np.isfinite(x_max)) or x_min >= x_max:
        raise DomainError(f"need finite x_min < x_max, got ({x_min}, {x_max})")
    if int(points) != points or points < 2:
        raise DomainError(f"need at least 2 grid points, got {points}")
    return np.linspace(x_min, x_max, int(points))


def influence_curve(kind, d, x_min, x_max, points):
    x = _grid(x_min, x_max, points)
    kind = _kind(kind)
    return InfluenceCurve(kind, d, x, np.atleast_1d(influence_value(kind, d, x)))


def influence_table(d, kinds, x_min, x_max, points):
    """Columns ``x`` and ``if_<kind>`` for each requested kind."""
    x = _grid(x_min, x_max, points)
    cols = {"x": x}
    for k in kinds:
        k = _kind(k)
        cols[f"if_{k.value}"] = np.atleast_1d(influence_value(k, d, x))
    return cols
