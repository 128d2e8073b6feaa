import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

import derived_values as D
from golden import FINITE_SAMPLE, FINITE_SAMPLE_SIZES
from giniscale import closedform as cf
from giniscale.distributions import (
    DomainError,
    Laplace,
    Normal,
    NormalMixture,
    StudentT,
    Uniform,
    parse_distribution,
)
from giniscale.estimators import ScaleKind


def test_population_sigma():
    assert cf.population_sigma(StudentT(5)) == pytest.approx(math.sqrt(5 / 3), abs=1e-15)
    assert cf.population_sigma(Uniform(0, 1)) == pytest.approx(1 / (2 * math.sqrt(3)), abs=1e-15)
    assert cf.population_sigma(NormalMixture(3, 0.008)) == pytest.approx(1.031504, abs=5e-7)


def test_population_d():
    assert cf.population_d(Normal()) == pytest.approx(math.sqrt(2 / math.pi), abs=1e-15)
    assert cf.population_d(Laplace()) == 1.0
    assert cf.population_d(StudentT(7)) == pytest.approx(0.898313, abs=5e-7)


def test_population_g():
    assert cf.population_g(Normal()) == pytest.approx(2 / math.sqrt(math.pi), abs=1e-15)
    assert cf.population_g(StudentT(5)) == pytest.approx(1.383983, abs=5e-7)
    assert cf.population_g(NormalMixture(3, 0.00175)) == pytest.approx(1.133259, abs=5e-7)
    assert cf.population_g(NormalMixture(3, 0.008)) == pytest.approx(D.G_NM_3_0008, abs=1e-15)


def test_integral_J():
    assert cf.integral_J(Normal()) == pytest.approx(D.NORMAL_J, abs=1e-15)
    assert cf.integral_J(Laplace()) == pytest.approx(5 / 24, abs=1e-15)
    assert cf.integral_J(StudentT(5)) == pytest.approx(D.J_T_5, abs=1e-12)
    for lam in (1.5, 3.0, 10.0):
        assert cf.integral_J(NormalMixture(lam, 0.0)) == pytest.approx(D.NORMAL_J, abs=1e-15)


@pytest.mark.parametrize("name, lam", [(n, lam) for n in "ACDE" for lam in (2, 3)])
def test_mixture_subintegrals(name, lam):
    fn = getattr(cf, f"mix_{name}")
    assert fn(lam) == pytest.approx(getattr(D, f"MIX_{name}_{lam}"), abs=1e-15)


@given(lam=st.floats(1, 20), eps=st.floats(0, 1))
def test_mixture_J_forms_agree(lam, eps):
    assert cf.mixture_J(lam, eps) == pytest.approx(cf.mixture_J_compact(lam, eps), rel=1e-12, abs=1e-14)


@given(lam=st.floats(1.01, 20))
def test_mixture_duality(lam):
    # eps = 1 is N(0, lam^2): everything scales by lam (resp. lam^2)
    d = NormalMixture(lam, 1.0)
    assert cf.population_g(d) == pytest.approx(lam * cf.population_g(Normal()), rel=1e-13)
    assert cf.integral_J(d) == pytest.approx(lam * lam * D.NORMAL_J, rel=1e-12)
    # swapping the components: (1-eps) N(0,1) + eps N(0, lam^2) is lam times
    # eps' N(0, 1/lam^2) + (1-eps') N(0, 1) with eps' = 1 - eps
    eps = 0.3
    assert cf.mixture_J(lam, eps) == pytest.approx(lam * lam * cf.mixture_J(1 / lam, 1 - eps), rel=1e-12)
    assert cf.mixture_g(lam, eps) == pytest.approx(lam * cf.mixture_g(1 / lam, 1 - eps), rel=1e-13)


def test_asv_values():
    assert cf.asv(ScaleKind.SD, StudentT(5)) == pytest.approx(10 / 3, abs=1e-14)
    assert cf.asv(ScaleKind.GINI, Normal()) == pytest.approx(0.651006, abs=5e-7)
    assert cf.asv(ScaleKind.MEANDEV, Laplace()) == pytest.approx(1.0, abs=1e-15)
    assert cf.asv(ScaleKind.GINI, Uniform(0, 1)) == pytest.approx(1 / 45, abs=1e-15)


def test_are_values():
    assert cf.are(ScaleKind.GINI, Normal()) == pytest.approx(
        1 / (2 * math.pi / 3 + 4 * (math.sqrt(3) - 2)), abs=1e-14)
    assert cf.are(ScaleKind.MEANDEV, Laplace()) == pytest.approx(1.25, abs=1e-14)
    assert cf.are(ScaleKind.GINI, StudentT(41)) == pytest.approx(0.9999998, abs=5e-8)
    assert cf.are(ScaleKind.SD, StudentT(41)) == 1.0
    s = cf.summarize(Uniform(0, 1))
    assert (s.are_g, s.are_d, s.are_iqr) == (pytest.approx(1), pytest.approx(0.6), pytest.approx(0.2))


@pytest.mark.parametrize("d", [Normal(2, 3), Laplace(-1, 0.5), Uniform(3, 7), NormalMixture(3, 0.1)],
                         ids=lambda d: d.label())
def test_scale_equivariance_of_population_values(d):
    # s(aX + b) = |a| s(X); ASVs scale by a^2 and AREs are invariant
    base = {Normal: Normal(), Laplace: Laplace(), Uniform: Uniform(0, 1)}.get(type(d))
    if base is None:
        return
    a = cf.population_sigma(d) / cf.population_sigma(base)
    for kind in (ScaleKind.SD, ScaleKind.MEANDEV, ScaleKind.GINI, ScaleKind.IQR):
        assert cf.population_value(kind, d) == pytest.approx(a * cf.population_value(kind, base), rel=1e-12)
        assert cf.asv(kind, d) == pytest.approx(a * a * cf.asv(kind, base), rel=1e-10)
        assert cf.are(kind, d) == pytest.approx(cf.are(kind, base), rel=1e-10)


def test_lomnicki():
    assert 10 * cf.lomnicki_var(Normal(), 10) == pytest.approx(0.740, abs=5e-4)
    assert 500 * cf.lomnicki_var(Laplace(), 500) == pytest.approx(2.336, abs=5e-4)
    n = 10 ** 6
    assert n * cf.lomnicki_var(Normal(), n) == pytest.approx(0.651006, abs=1e-4)
    # n = 2: var |X - Y| = E(X - Y)^2 - g^2 = 2 sigma^2 - g^2
    assert cf.lomnicki_var(Laplace(), 2) == pytest.approx(2 * 2 - 1.5 ** 2, abs=1e-14)
    for bad in (1, 0, 2.5):
        with pytest.raises(DomainError):
            cf.lomnicki_var(Normal(), bad)


@pytest.mark.parametrize("label", list(FINITE_SAMPLE))
def test_lomnicki_all_reference_rows(label):
    d = parse_distribution(label)
    for n, ref in zip(FINITE_SAMPLE_SIZES, FINITE_SAMPLE[label]["gini.true_n_var"]):
        assert n * cf.lomnicki_var(d, n) == pytest.approx(ref, abs=5e-4)


def test_summary_dict_keys():
    s = cf.summarize(StudentT(16)).as_dict()
    assert s["dist"] == "t:16"
    assert s["are_d"] == pytest.approx(0.995444, abs=1e-6)
    assert set(s) == {"dist", "sigma", "d", "g", "J", "iqr", "asv_sd", "asv_d", "asv_g", "asv_iqr",
                      "are_g", "are_d", "are_iqr"}
