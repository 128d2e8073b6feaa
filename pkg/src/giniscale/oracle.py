"""Independent recomputation of population quantities by quadrature.

Nothing in here uses the closed forms of :mod:`giniscale.closedform`;
every quantity is obtained from the density (and, for the t family, the
cdf) by adaptive Gauss-Kronrod quadrature.  Infinite ranges are mapped
onto a bounded interval with ``x = c + t / (1 - t^2)``.
"""
from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .distributions import DomainError, StudentT, std_normal_cdf, std_normal_pdf
from .estimators import ScaleKind

__all__ = [
    "AccuracyError",
    "QuadratureResult",
    "integrate_interval",
    "integrate_real_line",
    "g_by_quadrature",
    "j_by_quadrature",
    "k_nu",
    "normal_I1",
    "mixture_subintegral",
    "if_finite_difference",
    "contaminated_value",
]

TOL_1D = 1e-10
TOL_NESTED = 1e-11  # inner passes of nested integrals
NESTED_RTOL = 1e-10  # inner values grow like |x| far in the tails
_LIMIT = 500


class AccuracyError(ArithmeticError):
    """Quadrature failed to reach the requested tolerance."""

    def __init__(self, message, best_estimate=None, abs_error=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.abs_error = abs_error


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int


def _mapped(f, c):
    """Integrand in t for ``x = c + t / (1 - t^2)``."""

    def g(t):
        w = 1.0 - t * t
        if w <= 0.0:
            return 0.0
        x = c + t / w
        if not math.isfinite(x):
            return 0.0
        val = f(x) * (1.0 + t * t) / (w * w)
        return val if math.isfinite(val) else 0.0

    return g


def _t_of(x, c):
    # inverse of x = c + t / (1 - t^2)
    u = x - c
    if u == 0:
        return 0.0
    return (-1.0 + math.sqrt(1.0 + 4.0 * u * u)) / (2.0 * u)


def integrate_interval(f, a, b, tol=TOL_1D, points=(), rtol=0.0):
    """Integrate ``f`` over ``[a, b]``; either end may be infinite.

    The error estimate must satisfy ``err <= max(tol, rtol * |value|)``.

    Raises
    ------
    AccuracyError
        If the error estimate exceeds the tolerance after the maximum number
        of subdivisions.  The exception carries the best estimate.
    """
    if a == b:
        return QuadratureResult(0.0, 0.0, 0)
    if a > b:
        r = integrate_interval(f, b, a, tol, points, rtol)
        return QuadratureResult(-r.value, r.abs_error_estimate, r.evaluations)

    if math.isinf(a) or math.isinf(b):
        if math.isinf(a) and math.isinf(b):
            c = 0.0
        else:
            c = a if math.isfinite(a) else b
        ta = -1.0 if math.isinf(a) else _t_of(a, c)
        tb = 1.0 if math.isinf(b) else _t_of(b, c)
        func = _mapped(f, c)
        pts = sorted({_t_of(p, c) for p in points if a < p < b})
        lo, hi = ta, tb
    else:
        func = f
        pts = sorted({p for p in points if a < p < b})
        lo, hi = a, b

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, err, info, *_ = integrate.quad(
            func, lo, hi, epsabs=tol, epsrel=rtol, limit=_LIMIT,
            points=pts or None, full_output=1)
    if not err <= max(tol, rtol * abs(value)):
        raise AccuracyError(
            f"quadrature error estimate {err:.3g} exceeds tolerance {tol:.3g}",
            best_estimate=value, abs_error=err)
    return QuadratureResult(float(value), float(err), int(info["neval"]))


def integrate_real_line(f, tol=TOL_1D, points=(), rtol=0.0):
    return integrate_interval(f, -math.inf, math.inf, tol, points, rtol)


def _over_support(d, f, lo, hi, tol, rtol=0.0):
    # integrate in the standardized variable u = (x - center) / scale so the
    # infinite-range mapping sees the bulk of the mass near u = 0
    s_lo, s_hi = d.support
    lo, hi = max(lo, s_lo), min(hi, s_hi)
    if lo >= hi:
        return 0.0
    c = d.center
    s = math.sqrt(d.moments().sigma2)
    pts = tuple((p - c) / s for p in d.breakpoints + (c,))
    return integrate_interval(lambda u: s * f(c + s * u), (lo - c) / s, (hi - c) / s,
                              tol, points=pts, rtol=rtol).value


def _upper_excess(d, x, tol=TOL_NESTED):
    """``int_{z > x} (z - x) f(z) dz`` by quadrature."""
    return _over_support(d, lambda z: (z - x) * d.pdf(z), x, math.inf, tol, NESTED_RTOL)


def _lower_excess(d, x, tol=TOL_NESTED):
    """``int_{y < x} (x - y) f(y) dy`` by quadrature."""
    return _over_support(d, lambda y: (x - y) * d.pdf(y), -math.inf, x, tol, NESTED_RTOL)


def g_by_quadrature(d, tol=1e-9):
    """Gini's mean difference from ``8 int_c^inf int_x^inf (y - c) f(y) dy f(x) dx``.

    Valid for distributions symmetric about their center ``c``.
    """
    c = d.center

    def inner(x):
        return _over_support(d, lambda y: (y - c) * d.pdf(y), x, math.inf, TOL_NESTED, NESTED_RTOL)

    return 8.0 * _over_support(d, lambda x: inner(x) * d.pdf(x), c, math.inf, tol)


def j_by_quadrature(d, tol=1e-9):
    """The triple integral J via its factorization given the middle point."""

    def integrand(x):
        fx = d.pdf(x)
        if fx == 0.0:
            return 0.0
        return fx * _lower_excess(d, x) * _upper_excess(d, x)

    return _over_support(d, integrand, -math.inf, math.inf, tol)


@functools.lru_cache(maxsize=None)
def k_nu(nu):
    """``int x^2 f_nu(x) F_nu(x)^2 dx`` for the t distribution with nu d.o.f."""
    d = StudentT(nu)

    def integrand(x):
        F = d.cdf(x)
        # x and -x folded together: F(x)^2 + F(-x)^2
        return x * x * d.pdf(x) * (F * F + (1.0 - F) ** 2)

    return integrate_interval(integrand, 0.0, math.inf, tol=1e-12).value


def normal_I1(tol=1e-12):
    """``int x^2 phi(x) Phi(x)^2 dx`` by quadrature."""
    return integrate_real_line(
        lambda x: x * x * float(std_normal_pdf(x)) * float(std_normal_cdf(x)) ** 2, tol).value


_SUBINTEGRANDS = {
    "A": lambda x, lam: x * std_normal_pdf(x) ** 2 * std_normal_cdf(x / lam),
    "B": lambda x, lam: x * x * std_normal_pdf(x) * std_normal_cdf(x),
    "C": lambda x, lam: x * x * std_normal_pdf(x) * std_normal_cdf(x / lam) ** 2,
    "D": lambda x, lam: x * x * std_normal_pdf(x) * std_normal_cdf(x) * std_normal_cdf(x / lam),
    "E": lambda x, lam: std_normal_pdf(x) ** 2 * std_normal_pdf(x / lam),
}


def mixture_subintegral(name, lam, tol=1e-12):
    """Quadrature of one of the normal-mixture building blocks A..E."""
    if lam <= 0:
        raise DomainError("lam must be positive")
    fn = _SUBINTEGRANDS[name]
    return integrate_real_line(lambda x: float(fn(x, lam)), tol).value


# ---------------------------------------------------------------------------
# point-mass contamination
# ---------------------------------------------------------------------------

def _contaminated_median(d, x, eps):
    """Center of the median set of ``(1 - eps) F + eps delta_x``."""
    Fx = float(d.cdf(x))
    if (1 - eps) * Fx > 0.5:
        return float(d.quantile(0.5 / (1 - eps)))
    if (1 - eps) * Fx + eps >= 0.5:
        return x
    return float(d.quantile((0.5 - eps) / (1 - eps)))


def contaminated_value(kind, d, x, eps):
    """Value of the scale functional at ``(1 - eps) F + eps delta_x``.

    Computed exactly from moments, the contaminated median and ``E|X - t|``
    of the uncontaminated distribution.
    """
    kind = ScaleKind(kind)
    m = d.moments()
    if kind is ScaleKind.SD:
        mu2 = (1 - eps) * m.mu2 + eps * x * x
        mu1 = (1 - eps) * m.mu1 + eps * x
        return math.sqrt(mu2 - mu1 * mu1)
    if kind is ScaleKind.MEANDEV:
        med = _contaminated_median(d, x, eps)
        return (1 - eps) * float(d.mean_abs_dev_from(med)) + eps * abs(x - med)
    if kind is ScaleKind.GINI:
        g0 = _gini_from_pairs(d)
        return (1 - eps) ** 2 * g0 + 2 * eps * (1 - eps) * float(d.mean_abs_dev_from(x))
    raise DomainError("no influence function for the IQR")


@functools.lru_cache(maxsize=256)
def _gini_from_pairs(d):
    return g_by_quadrature(d, tol=1e-11)


def if_finite_difference(kind, d, x, eps=1e-6):
    """Difference quotient ``(s(F_eps,x) - s(F)) / eps``."""
    if not 0 < eps <= 0.01:
        raise DomainError("eps must lie in (0, 0.01]")
    return (contaminated_value(kind, d, x, eps) - contaminated_value(kind, d, x, 0.0)) / eps
