import math

import pytest

import derived_values as D
from giniscale import closedform as cf
from giniscale import oracle
from giniscale.distributions import Laplace, Normal, NormalMixture, StudentT, Uniform, std_normal_pdf
from giniscale.estimators import ScaleKind


def test_integrate_real_line_basics():
    r = oracle.integrate_real_line(lambda x: float(std_normal_pdf(x)), tol=1e-12)
    assert r.value == pytest.approx(1.0, abs=1e-12)
    assert r.abs_error_estimate <= 1e-12
    assert r.evaluations > 0
    r = oracle.integrate_real_line(lambda x: x * x * float(std_normal_pdf(x)))
    assert r.value == pytest.approx(1.0, abs=1e-10)


def test_half_lines_and_reversed_limits():
    assert oracle.integrate_interval(math.exp, -math.inf, 0.0).value == pytest.approx(1.0, abs=1e-10)
    assert oracle.integrate_interval(lambda x: math.exp(-x), 0.0, math.inf).value == pytest.approx(1.0, abs=1e-10)
    assert oracle.integrate_interval(lambda x: x, 2.0, 0.0).value == pytest.approx(-2.0, abs=1e-14)
    assert oracle.integrate_interval(lambda x: x, 1.0, 1.0).value == 0.0


def test_accuracy_error_carries_estimate():
    with pytest.raises(oracle.AccuracyError) as info:
        oracle.integrate_interval(lambda x: math.sin(1 / x) / x, 1e-9, 1.0, tol=1e-14)
    assert info.value.best_estimate is not None
    assert info.value.abs_error > 1e-14


def test_normal_I1():
    assert oracle.normal_I1() == pytest.approx(D.NORMAL_I1, abs=1e-12)
    assert oracle.normal_I1() == pytest.approx(1 / 3 + 1 / (2 * math.pi * math.sqrt(3)), abs=1e-12)


@pytest.mark.parametrize("d, expected, tol", [
    (Normal(), 2 / math.sqrt(math.pi), 1e-8),
    (Laplace(), 1.5, 1e-8),
    (StudentT(16), 1.194859, 5e-7),
    (Uniform(0, 1), 1 / 3, 1e-10),
], ids=["normal", "laplace", "t16", "uniform"])
def test_g_by_quadrature(d, expected, tol):
    assert oracle.g_by_quadrature(d) == pytest.approx(expected, abs=tol)


@pytest.mark.parametrize("d, expected, tol", [
    (Normal(), D.NORMAL_J, 1e-8),
    (Uniform(0, 1), 1 / 120, 1e-10),
    (NormalMixture(3, 0.008), cf.mixture_J(3, 0.008), 1e-8),
    (StudentT(5), D.J_T_5, 1e-8),
], ids=["normal", "uniform", "nm", "t5"])
def test_j_by_quadrature(d, expected, tol):
    assert oracle.j_by_quadrature(d) == pytest.approx(expected, abs=tol)


@pytest.mark.parametrize("nu", [5, 16, 41])
def test_k_nu(nu):
    assert oracle.k_nu(nu) == pytest.approx(getattr(D, f"K_NU_{nu}"), abs=1e-10)


def test_k_nu_normal_limit():
    assert oracle.k_nu(10 ** 6) == pytest.approx(D.NORMAL_I1, abs=1e-5)


def test_k_nu_reproduces_t_efficiencies():
    assert cf.asv(ScaleKind.GINI, StudentT(5)) == pytest.approx(1.784415, abs=5e-7)
    assert cf.are(ScaleKind.GINI, StudentT(41)) == pytest.approx(0.9999998, abs=5e-8)


@pytest.mark.parametrize("name, lam", [(n, lam) for n in "ACDE" for lam in (2, 3)])
def test_mixture_subintegral(name, lam):
    assert oracle.mixture_subintegral(name, lam) == pytest.approx(getattr(D, f"MIX_{name}_{lam}"), abs=1e-10)


@pytest.mark.parametrize("kind, x, expected, tol", [
    (ScaleKind.SD, 1.0, 0.0, 1e-5),
    (ScaleKind.MEANDEV, 0.0, -math.sqrt(2 / math.pi), 1e-4),
    (ScaleKind.GINI, 0.0, D.IF_GINI_NORMAL_0, 1e-4),
    (ScaleKind.GINI, 2.0, D.IF_GINI_NORMAL_2, 1e-4),
])
def test_finite_difference_influence(kind, x, expected, tol):
    assert oracle.if_finite_difference(kind, Normal(), x, 1e-6) == pytest.approx(expected, abs=tol)


@pytest.mark.parametrize("x", [-5.0, -0.2, 0.0, 0.7, 3.0])
def test_contaminated_median_is_a_median(x):
    d = NormalMixture(3, 0.05)
    eps = 0.01
    m = oracle._contaminated_median(d, x, eps)
    below = (1 - eps) * float(d.cdf(m)) + (eps if x < m else 0.0)
    at_or_below = (1 - eps) * float(d.cdf(m)) + (eps if x <= m else 0.0)
    assert below <= 0.5 + 1e-12
    assert at_or_below >= 0.5 - 1e-12


def test_contaminated_values_at_zero_eps():
    d = Laplace()
    for kind in (ScaleKind.SD, ScaleKind.MEANDEV, ScaleKind.GINI):
        assert oracle.contaminated_value(kind, d, 1.3, 0.0) == pytest.approx(cf.population_value(kind, d),
                                                                             abs=1e-10)
