"""Efficiency surfaces and equal-efficiency curves in the normal-mixture plane."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from . import closedform
from .distributions import DomainError, NormalMixture
from .estimators import ScaleKind

__all__ = [
    "Pair",
    "RootNotFound",
    "IsoCurvePoint",
    "SurfaceGrid",
    "pair_difference",
    "epsilon_star",
    "are_surface",
    "iso_curve",
]

EPS_BRACKET = (1e-8, 0.5)
_SCAN_POINTS = 400


class Pair(enum.Enum):
    GINI_VS_SD = "gini-sd"
    MEANDEV_VS_SD = "meandev-sd"
    GINI_VS_MEANDEV = "gini-meandev"

    @property
    def kinds(self):
        num, den = self.value.split("-")
        return ScaleKind(num), ScaleKind(den)


class RootNotFound(LookupError):
    pass


@dataclass(frozen=True)
class IsoCurvePoint:
    lam: float
    epsilon: float
    pair: Pair


@dataclass(frozen=True)
class SurfaceGrid:
    kind: ScaleKind
    lambda_axis: np.ndarray
    log10_eps_axis: np.ndarray
    values: np.ndarray  # shape (len(lambda_axis), len(log10_eps_axis))


def pair_difference(pair, lam, eps):
    """ARE of the pair's first estimator minus that of the second."""
    num, den = Pair(pair).kinds
    d = NormalMixture(lam, eps)
    return closedform.are(num, d) - closedform.are(den, d)


def epsilon_star(lam, pair, bracket=EPS_BRACKET):
    """Smallest contamination fraction at which the pair is equally efficient.

    ARE curves can cross twice (they return towards the normal value as
    eps -> 1); the crossing nearest to eps = 0 is returned.  The search
    scans a log-spaced grid for the first sign change and then solves on
    log(eps).

    Raises
    ------
    RootNotFound
        If the difference does not change sign inside ``bracket``.
    """
    pair = Pair(pair)
    if not lam > 1:
        raise DomainError(f"epsilon_star needs lam > 1, got {lam}")
    lo, hi = bracket
    logs = np.linspace(math.log(lo), math.log(hi), _SCAN_POINTS)
    vals = np.array([pair_difference(pair, lam, math.exp(t)) for t in logs])
    signs = np.sign(vals)
    change = np.nonzero(signs[1:] * signs[:-1] <= 0)[0]
    if change.size == 0:
        raise RootNotFound(f"no equal-efficiency point for {pair.value} at lam={lam} "
                           f"with eps in [{lo:g}, {hi:g}]")
    i = change[0]
    if vals[i] == 0:
        return math.exp(logs[i])
    root = optimize.brentq(lambda t: pair_difference(pair, lam, math.exp(t)),
                           logs[i], logs[i + 1], xtol=1e-15, rtol=1e-15, maxiter=200)
    return math.exp(root)


def _axis(spec, name, lower=-math.inf):
    lo, hi, num = spec
    if int(num) != num or num < 2 or not lo < hi or lo < lower:
        raise DomainError(f"invalid {name} range {spec}")
    return np.linspace(lo, hi, int(num))


def are_surface(kind, lambda_range=(1.0, 6.0, 121), log10_eps_range=(-5.0, -0.3, 121)):
    """ARE of ``kind`` over a (lambda, log10 eps) grid."""
    kind = ScaleKind(kind)
    if kind is ScaleKind.SD:
        raise DomainError("the surface of sd against itself is constant")
    lam_axis = _axis(lambda_range, "lambda", lower=1.0)
    le_axis = _axis(log10_eps_range, "log10 epsilon")
    if le_axis[-1] > 0:
        raise DomainError("log10 epsilon must be <= 0")
    values = np.empty((lam_axis.size, le_axis.size))
    for i, lam in enumerate(lam_axis):
        for j, le in enumerate(le_axis):
            values[i, j] = closedform.are(kind, NormalMixture(float(lam), 10.0 ** le))
    return SurfaceGrid(kind, lam_axis, le_axis, values)


def iso_curve(pair, lambda_grid):
    """Equal-efficiency points along ``lambda_grid``.

    Returns
    -------
    points : list of IsoCurvePoint
    missing : list of float
        Lambda values for which no crossing was found.
    """
    pair = Pair(pair)
    points, missing = [], []
    for lam in lambda_grid:
        lam = float(lam)
        try:
            points.append(IsoCurvePoint(lam, epsilon_star(lam, pair), pair))
        except (RootNotFound, DomainError):
            missing.append(lam)
    return points, missing
