"""Population values, asymptotic variances and efficiencies in closed form.

Everything here takes the distribution's own parameters (location, scale,
interval endpoints).  The only non-elementary ingredient is the integral
``K_nu = int x^2 f_nu(x) F_nu(x)^2 dx`` for the t family, which has no
known closed form and is delegated to :func:`giniscale.oracle.k_nu`.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from . import oracle
from .distributions import (
    DomainError,
    Laplace,
    Normal,
    NormalMixture,
    StudentT,
    Uniform,
    log_beta,
)
from .estimators import ScaleKind

__all__ = [
    "PopulationSummary",
    "population_sigma",
    "population_d",
    "population_g",
    "population_iqr",
    "population_value",
    "integral_J",
    "asv",
    "are",
    "lomnicki_var",
    "summarize",
    "mix_A",
    "mix_B",
    "mix_C",
    "mix_D",
    "mix_E",
    "mixture_g",
    "mixture_J",
    "mixture_J_compact",
]

PI = math.pi
SQRT3 = math.sqrt(3.0)


# ---------------------------------------------------------------------------
# normal-mixture building blocks (valid for every lam > 0)
# ---------------------------------------------------------------------------

def zeta(lam):
    return math.sqrt(2.0 + lam * lam)


def mix_A(lam):
    """``int x phi(x)^2 Phi(x/lam) dx``."""
    return 1.0 / (4 * PI * math.sqrt(1 + 2 * lam * lam))


# ``int x^2 phi(x) Phi(x) dx``
mix_B = 0.5


def mix_C(lam):
    """``int x^2 phi(x) Phi(x/lam)^2 dx``."""
    return (0.25 + lam / (PI * (1 + lam * lam) * zeta(lam))
            + math.atan(1 / (lam * zeta(lam))) / (2 * PI))


def mix_D(lam):
    """``int x^2 phi(x) Phi(x) Phi(x/lam) dx``."""
    r = math.sqrt(2 * lam * lam + 1)
    return (0.25 + (3 * lam * lam + 1) / (4 * PI * (1 + lam * lam) * r)
            + math.atan(1 / r) / (2 * PI))


def mix_E(lam):
    """``int phi(x)^2 phi(x/lam) dx``."""
    return lam / (2 * PI * math.sqrt(1 + 2 * lam * lam))


def mixture_g(lam, eps):
    return 2 / math.sqrt(PI) * (lam * eps ** 2 + (1 - eps) ** 2
                                + eps * (1 - eps) * math.sqrt(2 * (1 + lam * lam)))


def mixture_J(lam, eps):
    """J for ``(1-eps) N(0,1) + eps N(0, lam^2)``, assembled from A..E."""
    A, B, C, D, E = mix_A, mix_B, mix_C, mix_D, mix_E
    l2 = lam * lam
    il = 1 / lam
    same = (eps ** 3 * l2 + (1 - eps) ** 3) * (2 * A(1) + C(1) + E(1))
    wide_heavy = eps ** 2 * (1 - eps) * (
        2 * (2 + l2) * A(il) + C(lam) + 2 * l2 * D(il) + lam * (2 + l2) * E(il))
    narrow_heavy = eps * (1 - eps) ** 2 * (
        2 * (2 * l2 + 1) * A(lam) + l2 * C(il) + 2 * D(lam) + (il + 2 * lam) * E(lam))
    return same - (eps * l2 + 1 - eps) * B + wide_heavy + narrow_heavy


def mixture_J_compact(lam, eps):
    """The simplified arctan form of the mixture J (used as a cross-check)."""
    l2 = lam * lam
    z, zi = zeta(lam), zeta(1 / lam)
    out = (1 / 3 + SQRT3 / (2 * PI)) * (eps ** 3 * l2 + (1 - eps) ** 3) - (eps * l2 + 1 - eps) / 2
    out += eps ** 2 * (1 - eps) * (
        l2 / 2 + 0.25 + 3 * lam * z / (2 * PI)
        + l2 / PI * math.atan(lam / z) + math.atan(1 / (lam * z)) / (2 * PI))
    out += eps * (1 - eps) ** 2 * (
        l2 / 4 + 0.5 + 3 * math.sqrt(1 + 2 * l2) / (2 * PI)
        + l2 / (2 * PI) * math.atan(lam / zi) + math.atan(1 / (lam * zi)) / PI)
    return out


# ---------------------------------------------------------------------------
# t_nu helpers
# ---------------------------------------------------------------------------

def _t_g(nu):
    lb = log_beta(nu / 2 + 0.5, nu - 0.5) - log_beta(nu / 2, 0.5) - log_beta(nu / 2, nu)
    return 4 * math.sqrt(nu) / (nu - 1) * math.exp(lb)


def _t_J(nu):
    lb = log_beta(1.5 * nu - 1, 0.5) - 3 * log_beta(nu / 2, 0.5)
    return 2 * nu / (nu - 1) ** 2 * math.exp(lb) - nu / (2 * (nu - 2)) + oracle.k_nu(nu)


def _t_c(nu):
    return math.exp(-0.5 * math.log(nu) - log_beta(nu / 2, 0.5))


# ---------------------------------------------------------------------------
# population values
# ---------------------------------------------------------------------------

def population_sigma(d):
    if isinstance(d, Normal):
        return d.sigma
    if isinstance(d, Laplace):
        return math.sqrt(2) * d.alpha
    if isinstance(d, Uniform):
        return (d.b - d.a) / (2 * SQRT3)
    if isinstance(d, StudentT):
        return math.sqrt(d.nu / (d.nu - 2))
    if isinstance(d, NormalMixture):
        return math.sqrt(d.eps * d.lam ** 2 + 1 - d.eps)
    raise TypeError(f"unsupported distribution {d!r}")


def population_d(d):
    """Mean absolute deviation about the center of symmetry."""
    if isinstance(d, Normal):
        return 2 * d.sigma / math.sqrt(2 * PI)
    if isinstance(d, Laplace):
        return d.alpha
    if isinstance(d, Uniform):
        return (d.b - d.a) / 4
    if isinstance(d, StudentT):
        return 2 * d.nu * _t_c(d.nu) / (d.nu - 1)
    if isinstance(d, NormalMixture):
        return math.sqrt(2 / PI) * (d.eps * d.lam + 1 - d.eps)
    raise TypeError(f"unsupported distribution {d!r}")


def population_g(d):
    """Gini's mean difference ``E|X - Y|``."""
    if isinstance(d, Normal):
        return 2 * d.sigma / math.sqrt(PI)
    if isinstance(d, Laplace):
        return 1.5 * d.alpha
    if isinstance(d, Uniform):
        return (d.b - d.a) / 3
    if isinstance(d, StudentT):
        return _t_g(d.nu)
    if isinstance(d, NormalMixture):
        return mixture_g(d.lam, d.eps)
    raise TypeError(f"unsupported distribution {d!r}")


def population_iqr(d):
    return d.quantile(0.75) - d.quantile(0.25)


def integral_J(d):
    """``J = E[(X - Y)(Z - X); Y <= X <= Z]`` for i.i.d. X, Y, Z."""
    if isinstance(d, Normal):
        return (SQRT3 / (2 * PI) - 1 / 6) * d.sigma ** 2
    if isinstance(d, Laplace):
        return 5 / 24 * d.alpha ** 2
    if isinstance(d, Uniform):
        return (d.b - d.a) ** 2 / 120
    if isinstance(d, StudentT):
        return _t_J(d.nu)
    if isinstance(d, NormalMixture):
        return mixture_J(d.lam, d.eps)
    raise TypeError(f"unsupported distribution {d!r}")


def population_value(kind, d):
    kind = ScaleKind(kind)
    return {
        ScaleKind.SD: population_sigma,
        ScaleKind.MEANDEV: population_d,
        ScaleKind.GINI: population_g,
        ScaleKind.IQR: population_iqr,
    }[kind](d)


def asv(kind, d):
    """Asymptotic variance of the sample version of ``kind`` at ``d``.

    The IQR uses the joint asymptotics of the two sample quartiles, which
    for a symmetric density reduce to ``1 / (4 f(q_{3/4})^2)``.
    """
    kind = ScaleKind(kind)
    if kind is ScaleKind.SD:
        m = d.moments()
        s2 = m.sigma2
        return (m.mu4 - 4 * m.mu3 * m.mu1 + 3 * m.mu2 ** 2) / (4 * s2) - s2
    if kind is ScaleKind.MEANDEV:
        return population_sigma(d) ** 2 - population_d(d) ** 2
    if kind is ScaleKind.GINI:
        return 4 * (population_sigma(d) ** 2 + 4 * integral_J(d) - population_g(d) ** 2)
    return 0.25 / d.pdf(d.quantile(0.75)) ** 2


def are(kind, d):
    """Efficiency of ``kind`` relative to the standard deviation.

    Both estimators are first standardized to estimate sigma, so the ratio
    of asymptotic variances picks up the factor ``s(F)^2 / sigma(F)^2``.
    """
    kind = ScaleKind(kind)
    if kind is ScaleKind.SD:
        return 1.0
    ratio = population_value(kind, d) / population_sigma(d)
    return asv(ScaleKind.SD, d) / asv(kind, d) * ratio * ratio


def lomnicki_var(d, n):
    """Exact variance of the sample mean difference for sample size n."""
    if int(n) != n or n < 2:
        raise DomainError(f"lomnicki_var needs an integer n >= 2, got {n}")
    s2 = population_sigma(d) ** 2
    g = population_g(d)
    J = integral_J(d)
    return (4 * (n - 1) * s2 + 16 * (n - 2) * J - 2 * (2 * n - 3) * g * g) / (n * (n - 1))


@dataclass(frozen=True)
class PopulationSummary:
    dist: str
    sigma: float
    d: float
    g: float
    J: float
    iqr: float
    asv_sd: float
    asv_d: float
    asv_g: float
    asv_iqr: float
    are_g: float
    are_d: float
    are_iqr: float

    def as_dict(self):
        return asdict(self)


def summarize(d):
    sigma = population_sigma(d)
    dd = population_d(d)
    g = population_g(d)
    J = integral_J(d)
    iqr = population_iqr(d)
    asv_sd = asv(ScaleKind.SD, d)
    asv_d = sigma ** 2 - dd ** 2
    asv_g = 4 * (sigma ** 2 + 4 * J - g ** 2)
    asv_iqr = asv(ScaleKind.IQR, d)

    def eff(s, v):
        return asv_sd / v * (s / sigma) ** 2

    return PopulationSummary(
        dist=d.label(), sigma=sigma, d=dd, g=g, J=J, iqr=iqr,
        asv_sd=asv_sd, asv_d=asv_d, asv_g=asv_g, asv_iqr=asv_iqr,
        are_g=eff(g, asv_g), are_d=eff(dd, asv_d), are_iqr=eff(iqr, asv_iqr),
    )
