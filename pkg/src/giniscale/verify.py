"""Cross-checks between the closed forms and the quadrature oracle.

:func:`run_battery` yields one :class:`Check` per comparison; the CLI's
``verify`` command prints them and fails on any tolerance breach.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


from . import closedform as cf
from . import influence, oracle
from .distributions import Laplace, Normal, NormalMixture, StudentT, Uniform
from .estimators import ScaleKind

__all__ = ["Check", "oracle_grid", "run_battery", "SECTIONS"]

GRID_LAMBDAS = (1.0, 1.5, 3.0, 5.0)
GRID_EPS = (0.0, 1e-4, 1e-2, 0.1, 0.5, 1.0)
GRID_NUS = (5, 6, 7, 10, 16, 41, 100)
SUBINTEGRAL_LAMBDAS = (0.5, 1.0, 2.0, 3.0)
IF_POINTS = (-3.0, -1.0, 0.0, 0.5, 2.0)


@dataclass(frozen=True)
class Check:
    section: str
    name: str
    value: float
    reference: float
    tol: float

    @property
    def error(self):
        return abs(self.value - self.reference)

    @property
    def passed(self):
        return bool(self.error <= self.tol)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} [{self.section}] {self.name}: value={self.value:.12g} "
                f"reference={self.reference:.12g} err={self.error:.3g} tol={self.tol:.1g}")


def oracle_grid():
    """Parameter grid for the closed-form vs quadrature comparison."""
    grid = [NormalMixture(lam, eps) for lam in GRID_LAMBDAS for eps in GRID_EPS]
    grid += [StudentT(nu) for nu in GRID_NUS]
    grid += [Normal(mu, s) for mu, s in
             [(0, 1), (0, 0.5), (0, 2), (1, 1), (-2, 3), (5, 0.1), (0.3, 1.7), (-1, 0.25), (10, 4), (0, 7)]]
    grid += [Laplace(mu, a) for mu, a in
             [(0, 1), (0, 0.5), (0, 2), (1, 1), (-2, 3), (5, 0.1), (0.3, 1.7), (-1, 0.25), (10, 4), (0, 7)]]
    grid += [Uniform(a, b) for a, b in
             [(0, 1), (2, 6), (-1, 1), (-3, 0), (0.5, 0.75), (-10, 10), (1, 2), (-0.2, 0.3), (4, 9), (0, 12)]]
    return grid


def check_oracle_equivalence(tol=1e-8):
    for d in oracle_grid():
        yield Check("oracle", f"g {d.label()}", oracle.g_by_quadrature(d), cf.population_g(d), tol)
        yield Check("oracle", f"J {d.label()}", oracle.j_by_quadrature(d), cf.integral_J(d), tol)


def check_subintegrals(tol=1e-9):
    closed = {"A": cf.mix_A, "C": cf.mix_C, "D": cf.mix_D, "E": cf.mix_E}
    for name, fn in closed.items():
        for lam in SUBINTEGRAL_LAMBDAS:
            yield Check("mixture-integrals", f"{name}({lam:g})",
                        oracle.mixture_subintegral(name, lam), fn(lam), tol)
    yield Check("mixture-integrals", "B", oracle.mixture_subintegral("B", 1.0), cf.mix_B, tol)
    for lam in GRID_LAMBDAS:
        for eps in GRID_EPS:
            yield Check("mixture-integrals", f"J assembled vs compact nm:{lam:g},{eps:g}",
                        cf.mixture_J(lam, eps), cf.mixture_J_compact(lam, eps), 1e-12)


def check_normal_identities(tol=1e-10):
    i1 = oracle.normal_I1()
    yield Check("normal", "I1 = 1/3 + 1/(2 pi sqrt 3)", i1, 1 / 3 + 1 / (2 * math.pi * math.sqrt(3)), tol)
    yield Check("normal", "I1 = C(1)", i1, cf.mix_C(1.0), tol)
    yield Check("normal", "J = 2A(1) + I1 + E(1) - 1/2", 2 * cf.mix_A(1.0) + i1 + cf.mix_E(1.0) - 0.5,
                cf.integral_J(Normal()), tol)
    yield Check("normal", "J = sqrt3/(2 pi) - 1/6", oracle.j_by_quadrature(Normal()),
                math.sqrt(3) / (2 * math.pi) - 1 / 6, 1e-9)


def _c(nu):
    return math.exp(-0.5 * math.log(nu) - math.lgamma(nu / 2) - math.lgamma(0.5) + math.lgamma(nu / 2 + 0.5))


def check_t_identities(tol=1e-10):
    for m in (5, 9, 16):
        lhs = oracle.integrate_real_line(lambda x: (1 + x * x / m) ** (-m), tol=1e-12).value
        yield Check("t-identities", f"int (1+x^2/m)^-m, m={m}", lhs,
                    math.sqrt(m / (2 * m - 1)) / _c(2 * m - 1), tol)
        lhs = oracle.integrate_real_line(lambda x: (1 + x * x / m) ** (-(3 * m - 1) / 2), tol=1e-12).value
        yield Check("t-identities", f"int (1+x^2/m)^-(3m-1)/2, m={m}", lhs,
                    math.sqrt(m / (3 * m - 2)) / _c(3 * m - 2), tol)
        # antiderivative identity on a finite range, alpha = -(m+1)/2, beta = m
        alpha, beta = -(m + 1) / 2, float(m)
        lhs = oracle.integrate_interval(lambda x: x * (1 + x * x / beta) ** alpha, -0.7, 2.5, tol=1e-13).value

        def prim(x):
            return beta / (2 * (alpha + 1)) * (1 + x * x / beta) ** (alpha + 1)

        yield Check("t-identities", f"antiderivative x(1+x^2/b)^a, m={m}", lhs, prim(2.5) - prim(-0.7), tol)
    yield Check("t-identities", "K_nu normal limit (nu=1e6)", oracle.k_nu(10 ** 6),
                1 / 3 + 1 / (2 * math.pi * math.sqrt(3)), 1e-5)


def check_reductions(tol=1e-12):
    for lam in (1.5, 3.0, 5.0):
        for eps, ref in ((0.0, Normal(0, 1)), (1.0, Normal(0, lam))):
            a = cf.summarize(NormalMixture(lam, eps)).as_dict()
            b = cf.summarize(ref).as_dict()
            for key in ("sigma", "d", "g", "J", "iqr", "asv_sd", "asv_d", "asv_g", "asv_iqr",
                        "are_g", "are_d", "are_iqr"):
                yield Check("reductions", f"nm:{lam:g},{eps:g} {key}", a[key], b[key],
                            tol * max(1.0, abs(b[key])))


def check_lomnicki(tol=1e-4):
    for d in (Normal(), Laplace(), Uniform(0, 1), NormalMixture(3, 0.008), StudentT(10)):
        n = 10 ** 6
        yield Check("lomnicki", f"n*var at n=1e6 {d.label()}", n * cf.lomnicki_var(d, n),
                    cf.asv(ScaleKind.GINI, d), tol)


def _if_families():
    return (Normal(), Laplace(), Uniform(0, 1), StudentT(5), StudentT(16), NormalMixture(3, 0.05))


def check_influence():
    kinds = (ScaleKind.SD, ScaleKind.MEANDEV, ScaleKind.GINI)
    for d in _if_families():
        pts = d.breakpoints + (d.center,)
        for kind in kinds:
            def f1(x, kind=kind, d=d):
                return influence.influence_value(kind, d, x) * d.pdf(x)

            def f2(x, kind=kind, d=d):
                return influence.influence_value(kind, d, x) ** 2 * d.pdf(x)

            lo, hi = d.support
            mean_if = oracle.integrate_interval(f1, lo, hi, tol=1e-11, points=pts).value
            yield Check("influence", f"int IF f = 0, {kind.value} {d.label()}", mean_if, 0.0, 1e-8)
            sq = oracle.integrate_interval(f2, lo, hi, tol=1e-10, points=pts).value
            yield Check("influence", f"int IF^2 f = ASV, {kind.value} {d.label()}", sq,
                        cf.asv(kind, d), 1e-6)
    for d in (Normal(), Laplace(), NormalMixture(3, 0.05)):
        for kind in kinds:
            for x in IF_POINTS:
                yield Check("influence", f"finite difference {kind.value} {d.label()} x={x:g}",
                            oracle.if_finite_difference(kind, d, x, 1e-6),
                            influence.influence_value(kind, d, x), 1e-4)


def check_distributions():
    fams = (Normal(), Normal(1, 2), Laplace(), Laplace(-1, 0.5), Uniform(0, 1), Uniform(2, 6),
            StudentT(5), StudentT(41), NormalMixture(3, 0.008), NormalMixture(5, 0.5))
    for d in fams:
        lo, hi = d.support
        pts = d.breakpoints + (d.center,)
        total = oracle.integrate_interval(d.pdf, lo, hi, tol=1e-11, points=pts).value
        yield Check("distributions", f"int pdf = 1 {d.label()}", total, 1.0, 1e-8)
        m = d.moments()
        for k, ref in enumerate((m.mu1, m.mu2, m.mu3, m.mu4), start=1):
            if isinstance(d, StudentT) and k == 4 and d.nu == 5:
                # x^4 f(x) ~ x^-2 at nu = 5: converges but slowly
                val = 2 * oracle.integrate_interval(lambda x: x ** 4 * d.pdf(x), 0, math.inf,
                                                    tol=1e-9, rtol=1e-12).value
            else:
                val = oracle.integrate_interval(lambda x, k=k: x ** k * d.pdf(x), lo, hi,
                                                tol=1e-10, points=pts, rtol=1e-12).value
            yield Check("distributions", f"moment {k} {d.label()}", val, ref, 1e-8 * max(1, abs(ref)))
        for p in (0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99):
            yield Check("distributions", f"cdf(quantile({p})) {d.label()}",
                        float(d.cdf(d.quantile(p))), p, 1e-10)
        for x in (-2.0, 0.0, 0.3, 1.5):
            x = d.center + x * (hi - lo if math.isfinite(hi - lo) else 1.0) / 4
            val = oracle.integrate_interval(lambda t: t * d.pdf(t), x, hi, tol=1e-11, points=pts).value
            yield Check("distributions", f"E[X 1(X>={x:g})] {d.label()}",
                        float(d.truncated_mean_above(x)), val, 1e-10)


SECTIONS = {
    "distributions": check_distributions,
    "oracle": check_oracle_equivalence,
    "mixture-integrals": check_subintegrals,
    "normal": check_normal_identities,
    "t-identities": check_t_identities,
    "reductions": check_reductions,
    "lomnicki": check_lomnicki,
    "influence": check_influence,
}


def run_battery(sections=None):
    for name, fn in SECTIONS.items():
        if sections is None or name in sections:
            yield from fn()
