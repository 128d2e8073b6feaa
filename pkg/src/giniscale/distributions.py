"""Symmetric distribution families used throughout the package.

Five families are supported: normal, Laplace, uniform, Student t with an
integer number of degrees of freedom, and the two-component scale mixture
of centered normals (Tukey's contaminated normal).  Every family exposes
its density, cdf, quantile function, non-central moments, truncated first
moment and a seeded sampler.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import optimize, special

__all__ = [
    "DomainError",
    "Normal",
    "Laplace",
    "Uniform",
    "StudentT",
    "NormalMixture",
    "DistributionSpec",
    "MomentSet",
    "log_beta",
    "std_normal_cdf",
    "std_normal_pdf",
    "make_rng",
    "parse_distribution",
]

SQRT_2PI = math.sqrt(2.0 * math.pi)


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


def log_beta(a, b):
    """Natural logarithm of the beta function B(a, b) for a, b > 0."""
    if not (a > 0 and b > 0):
        raise DomainError(f"log_beta requires positive arguments, got ({a}, {b})")
    return float(special.betaln(a, b))


def std_normal_pdf(x):
    x = np.asarray(x, dtype=float)
    return np.exp(-0.5 * x * x) / SQRT_2PI


def std_normal_cdf(x):
    """Standard normal cdf.

    Evaluated through the complementary error function on the lower tail
    so that ``Phi(-x) == 1 - Phi(x)`` holds to rounding.
    """
    return special.ndtr(np.asarray(x, dtype=float))


def _scalar(out):
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class MomentSet:
    """Non-central moments ``E X^k`` for k = 1..4."""

    mu1: float
    mu2: float
    mu3: float
    mu4: float

    @property
    def sigma2(self) -> float:
        return self.mu2 - self.mu1 ** 2


class _Family:
    """Shared machinery; subclasses supply the family-specific formulas."""

    family: str = ""

    @property
    def center(self) -> float:
        """Center of symmetry (mean = median)."""
        return 0.0

    @property
    def support(self) -> tuple[float, float]:
        return (-math.inf, math.inf)

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Points where the density is not smooth (kinks or jumps)."""
        return ()

    def params(self) -> dict:
        raise NotImplementedError

    def label(self) -> str:
        """Compact label in the CLI mini-grammar, e.g. ``nm:3,0.008``."""
        vals = ",".join(_fmt(v) for v in self.params().values())
        return f"{self.family}:{vals}" if vals else self.family

    # -- quantile via bracketing + root finding; closed forms override --
    def quantile(self, p):
        p_arr = np.asarray(p, dtype=float)
        if np.any((p_arr <= 0) | (p_arr >= 1)) or np.any(np.isnan(p_arr)):
            raise DomainError("quantile requires 0 < p < 1")
        out = np.vectorize(self._quantile_scalar, otypes=[float])(p_arr)
        return _scalar(out)

    def _quantile_scalar(self, p: float) -> float:
        c = self.center
        if p == 0.5:
            return c
        width = self._bracket_width()
        lo, hi = c - width, c + width
        while self.cdf(lo) > p:
            lo = c - 2.0 * (c - lo)
        while self.cdf(hi) < p:
            hi = c + 2.0 * (hi - c)
        return optimize.brentq(lambda x: self.cdf(x) - p, lo, hi,
                               xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=400)

    def _bracket_width(self) -> float:
        return 1.0

    def truncated_mean_below(self, x):
        """``E[X 1{X <= x}]``, as the mean minus the upper truncated mean."""
        return self.moments().mu1 - self.truncated_mean_above(x)

    def mean_abs_dev_from(self, t):
        """``E|X - t|`` from truncated first moments."""
        t = np.asarray(t, dtype=float)
        above = self.truncated_mean_above(t)
        out = 2.0 * above - self.moments().mu1 + t * (2.0 * self.cdf(t) - 1.0)
        return _scalar(out)


def _fmt(v) -> str:
    return repr(v) if isinstance(v, int) else f"{v:.12g}"


@dataclass(frozen=True)
class Normal(_Family):
    mu: float = 0.0
    sigma: float = 1.0
    family = "normal"

    def __post_init__(self):
        if not (math.isfinite(self.mu) and math.isfinite(self.sigma) and self.sigma > 0):
            raise DomainError(f"Normal needs finite mu and sigma > 0, got ({self.mu}, {self.sigma})")

    @property
    def center(self):
        return self.mu

    def params(self):
        return {"mu": self.mu, "sigma": self.sigma}

    def pdf(self, x):
        z = (np.asarray(x, dtype=float) - self.mu) / self.sigma
        return _scalar(std_normal_pdf(z) / self.sigma)

    def cdf(self, x):
        return _scalar(std_normal_cdf((np.asarray(x, dtype=float) - self.mu) / self.sigma))

    def quantile(self, p):
        p = np.asarray(p, dtype=float)
        if np.any((p <= 0) | (p >= 1)) or np.any(np.isnan(p)):
            raise DomainError("quantile requires 0 < p < 1")
        return _scalar(self.mu + self.sigma * special.ndtri(p))

    def moments(self):
        m, s2 = self.mu, self.sigma ** 2
        return MomentSet(m, s2 + m ** 2, m ** 3 + 3 * m * s2, m ** 4 + 6 * m ** 2 * s2 + 3 * s2 ** 2)

    def truncated_mean_above(self, x):
        z = (np.asarray(x, dtype=float) - self.mu) / self.sigma
        return _scalar(self.mu * std_normal_cdf(-z) + self.sigma * std_normal_pdf(z))

    def sample(self, rng, n):
        return rng.normal(self.mu, self.sigma, size=n)

    def _bracket_width(self):
        return self.sigma


@dataclass(frozen=True)
class Laplace(_Family):
    mu: float = 0.0
    alpha: float = 1.0
    family = "laplace"

    def __post_init__(self):
        if not (math.isfinite(self.mu) and math.isfinite(self.alpha) and self.alpha > 0):
            raise DomainError(f"Laplace needs finite mu and alpha > 0, got ({self.mu}, {self.alpha})")

    @property
    def center(self):
        return self.mu

    @property
    def breakpoints(self):
        return (self.mu,)

    def params(self):
        return {"mu": self.mu, "alpha": self.alpha}

    def pdf(self, x):
        z = np.abs(np.asarray(x, dtype=float) - self.mu) / self.alpha
        return _scalar(np.exp(-z) / (2 * self.alpha))

    def cdf(self, x):
        z = (np.asarray(x, dtype=float) - self.mu) / self.alpha
        out = np.where(z < 0, 0.5 * np.exp(np.minimum(z, 0)), 1 - 0.5 * np.exp(-np.maximum(z, 0)))
        return _scalar(out)

    def quantile(self, p):
        p = np.asarray(p, dtype=float)
        if np.any((p <= 0) | (p >= 1)) or np.any(np.isnan(p)):
            raise DomainError("quantile requires 0 < p < 1")
        out = np.where(p < 0.5, self.mu + self.alpha * np.log(2 * p),
                       self.mu - self.alpha * np.log(2 * (1 - p)))
        return _scalar(out)

    def moments(self):
        m, a2 = self.mu, self.alpha ** 2
        return MomentSet(m, m ** 2 + 2 * a2, m ** 3 + 6 * a2 * m, m ** 4 + 12 * a2 * m ** 2 + 24 * a2 ** 2)

    def truncated_mean_above(self, x):
        x = np.asarray(x, dtype=float)
        m, a = self.mu, self.alpha
        z = (x - m) / a
        upper = 0.5 * np.exp(-np.maximum(z, 0)) * (x + a)
        lower = m - 0.5 * np.exp(np.minimum(z, 0)) * (x - a)
        return _scalar(np.where(z >= 0, upper, lower))

    def sample(self, rng, n):
        return rng.laplace(self.mu, self.alpha, size=n)


@dataclass(frozen=True)
class Uniform(_Family):
    a: float = 0.0
    b: float = 1.0
    family = "uniform"

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.b > self.a):
            raise DomainError(f"Uniform needs finite a < b, got ({self.a}, {self.b})")

    @property
    def center(self):
        return 0.5 * (self.a + self.b)

    @property
    def support(self):
        return (self.a, self.b)

    @property
    def breakpoints(self):
        return (self.a, self.b)

    def params(self):
        return {"a": self.a, "b": self.b}

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return _scalar(np.where((x >= self.a) & (x <= self.b), 1.0 / (self.b - self.a), 0.0))

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return _scalar(np.clip((x - self.a) / (self.b - self.a), 0.0, 1.0))

    def quantile(self, p):
        p = np.asarray(p, dtype=float)
        if np.any((p <= 0) | (p >= 1)) or np.any(np.isnan(p)):
            raise DomainError("quantile requires 0 < p < 1")
        return _scalar(self.a + p * (self.b - self.a))

    def moments(self):
        a, b = self.a, self.b
        return MomentSet(
            (a + b) / 2,
            ((a + b) ** 2 - a * b) / 3,
            (a + b) * (a * a + b * b) / 4,
            ((a + b) * (a ** 3 + a * b * b) + b ** 4) / 5,
        )

    def truncated_mean_above(self, x):
        c = np.clip(np.asarray(x, dtype=float), self.a, self.b)
        return _scalar((self.b ** 2 - c * c) / (2 * (self.b - self.a)))

    def sample(self, rng, n):
        return rng.uniform(self.a, self.b, size=n)


@dataclass(frozen=True)
class StudentT(_Family):
    nu: int = 5
    family = "t"

    def __post_init__(self):
        if isinstance(self.nu, bool) or not isinstance(self.nu, (int, np.integer)):
            raise DomainError(f"StudentT needs an integer nu, got {self.nu!r}")
        if self.nu < 5:
            raise DomainError(f"StudentT needs nu >= 5 (finite fourth moment), got {self.nu}")
        object.__setattr__(self, "nu", int(self.nu))

    def params(self):
        return {"nu": self.nu}

    @property
    def log_c(self) -> float:
        """Log of the density normalizing constant c_nu."""
        nu = self.nu
        return -0.5 * math.log(nu) - log_beta(nu / 2, 0.5)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        nu = self.nu
        return _scalar(np.exp(self.log_c - 0.5 * (nu + 1) * np.log1p(x * x / nu)))

    def cdf(self, x):
        return _scalar(special.stdtr(self.nu, np.asarray(x, dtype=float)))

    def quantile(self, p):
        p = np.asarray(p, dtype=float)
        if np.any((p <= 0) | (p >= 1)) or np.any(np.isnan(p)):
            raise DomainError("quantile requires 0 < p < 1")
        return _scalar(special.stdtrit(self.nu, p))

    def moments(self):
        nu = self.nu
        return MomentSet(0.0, nu / (nu - 2), 0.0, 3 * nu * nu / ((nu - 2) * (nu - 4)))

    def truncated_mean_above(self, x):
        # antiderivative of x (1 + x^2/nu)^(-(nu+1)/2)
        x = np.asarray(x, dtype=float)
        nu = self.nu
        log_val = self.log_c + math.log(nu / (nu - 1)) - 0.5 * (nu - 1) * np.log1p(x * x / nu)
        return _scalar(np.exp(log_val))

    def sample(self, rng, n):
        z = rng.standard_normal(size=n)
        v = rng.chisquare(self.nu, size=n)
        return z * np.sqrt(self.nu / v)


@dataclass(frozen=True)
class NormalMixture(_Family):
    """``(1 - eps) N(0, 1) + eps N(0, lam^2)``."""

    lam: float = 3.0
    eps: float = 0.0
    family = "nm"

    def __post_init__(self):
        if not (math.isfinite(self.lam) and self.lam >= 1):
            raise DomainError(f"NormalMixture needs lam >= 1, got {self.lam}")
        if not (0 <= self.eps <= 1):
            raise DomainError(f"NormalMixture needs 0 <= eps <= 1, got {self.eps}")

    def params(self):
        return {"lam": self.lam, "eps": self.eps}

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        lam, eps = self.lam, self.eps
        return _scalar(eps * std_normal_pdf(x / lam) / lam + (1 - eps) * std_normal_pdf(x))

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        lam, eps = self.lam, self.eps
        return _scalar(eps * std_normal_cdf(x / lam) + (1 - eps) * std_normal_cdf(x))

    def moments(self):
        lam, eps = self.lam, self.eps
        return MomentSet(0.0, eps * lam ** 2 + 1 - eps, 0.0, 3 * eps * lam ** 4 + 3 * (1 - eps))

    def truncated_mean_above(self, x):
        x = np.asarray(x, dtype=float)
        lam, eps = self.lam, self.eps
        return _scalar(eps * lam * std_normal_pdf(x / lam) + (1 - eps) * std_normal_pdf(x))

    def sample(self, rng, n):
        wide = rng.random(size=n) < self.eps
        z = rng.standard_normal(size=n)
        return np.where(wide, self.lam * z, z)


DistributionSpec = Union[Normal, Laplace, Uniform, StudentT, NormalMixture]


def make_rng(seed: int, *keys: int) -> np.random.Generator:
    """Counter-based generator whose stream is a hash of ``(seed, *keys)``.

    Child streams for different keys are statistically independent, so
    simulation blocks can be drawn in any order.
    """
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF, *(int(k) for k in keys)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def parse_distribution(text: str) -> DistributionSpec:
    """Parse ``normal[:mu,sigma] | laplace[:mu,alpha] | uniform[:a,b] | t:nu | nm:lam,eps``."""
    name, _, rest = text.strip().partition(":")
    name = name.lower()
    args = [s for s in rest.split(",") if s.strip()] if rest else []
    try:
        if name == "normal":
            return Normal(*map(float, args))
        if name == "laplace":
            return Laplace(*map(float, args))
        if name == "uniform":
            return Uniform(*map(float, args))
        if name == "t":
            if len(args) != 1:
                raise DomainError("t needs exactly one argument: t:nu")
            nu = float(args[0])
            if nu != int(nu):
                raise DomainError(f"t needs an integer nu, got {args[0]}")
            return StudentT(int(nu))
        if name == "nm":
            if len(args) != 2:
                raise DomainError("nm needs two arguments: nm:lambda,epsilon")
            return NormalMixture(float(args[0]), float(args[1]))
    except TypeError as exc:
        raise DomainError(f"bad parameters in {text!r}: {exc}") from None
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"bad parameters in {text!r}: {exc}") from None
    raise DomainError(f"unknown distribution family {name!r}")
