import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from giniscale.distributions import DomainError
from giniscale.estimators import (
    MeanDevScaling,
    ScaleKind,
    empirical_quantile,
    estimate,
    gini_n,
    gini_n_naive,
    iqr_n,
    mean_dev_n,
    sample_median,
    sd_n,
    sd_n_pairwise,
)

samples = arrays(np.float64, st.integers(2, 60), elements=st.floats(-1e3, 1e3, allow_subnormal=False))


def test_median():
    assert sample_median([1, 2, 3]) == 2
    assert sample_median([4, 1, 3, 2]) == 2.5
    assert sample_median([5, 5, 5, 5]) == 5
    with pytest.raises(DomainError):
        sample_median([])


def test_small_sample_values():
    x = [0.0, 1.0, 2.0]
    assert sd_n(x) == 1.0
    assert mean_dev_n(x) == 1.0
    assert mean_dev_n(x, MeanDevScaling.PLAIN) == pytest.approx(2 / 3, abs=1e-15)
    assert gini_n(x) == pytest.approx(4 / 3, abs=1e-15)
    assert gini_n_naive(x) == pytest.approx(4 / 3, abs=1e-15)
    assert gini_n([1.0, 1.0, 2.0]) == pytest.approx(2 / 3, abs=1e-15)
    assert gini_n([3.0, -1.5]) == 4.5
    assert iqr_n([1.0, 2.0, 3.0, 4.0]) == 2.0


@pytest.mark.parametrize("fn", [sd_n, mean_dev_n, gini_n, iqr_n])
def test_constant_sample(fn):
    assert fn([7.25] * 6) == 0.0


@pytest.mark.parametrize("fn", [sd_n, sd_n_pairwise, mean_dev_n, gini_n, gini_n_naive])
def test_too_small(fn):
    with pytest.raises(DomainError):
        fn([1.0])


def test_iqr_needs_four():
    with pytest.raises(DomainError):
        iqr_n([1.0, 2.0, 3.0])


def test_non_finite_rejected():
    with pytest.raises(DomainError):
        sd_n([1.0, np.nan, 2.0])


def test_gini_permutation_invariant():
    x = [3.0, -1.0, 4.0, 1.5, 9.0]
    vals = {gini_n(list(p)) for p in itertools.permutations(x)}
    assert len(vals) == 1


def test_gini_large_random():
    x = np.random.default_rng(0).normal(size=1000)
    assert abs(gini_n(x) - gini_n_naive(x)) <= 1e-12 * gini_n(x)


def test_empirical_quantile_interval_center():
    x = [1.0, 2.0, 3.0, 4.0]
    # n p integral: center of the flat part of the empirical cdf inverse
    assert empirical_quantile(x, 0.25) == 1.5
    assert empirical_quantile(x, 0.75) == 3.5
    assert empirical_quantile(x, 0.5) == 2.5
    assert empirical_quantile([1.0, 2.0, 3.0, 4.0, 5.0], 0.25) == 2.0
    with pytest.raises(DomainError):
        empirical_quantile(x, 1.0)


@given(samples)
def test_sd_pairwise_identity(x):
    a, b = sd_n(x), sd_n_pairwise(x)
    assert a == pytest.approx(b, rel=1e-9, abs=1e-9)


@given(samples)
def test_gini_sorted_equals_naive(x):
    a, b = gini_n(x), gini_n_naive(x)
    assert a == pytest.approx(b, rel=1e-12, abs=1e-9)


@settings(max_examples=200)
@given(samples.filter(lambda v: v.size >= 4), st.floats(0.01, 100), st.floats(-100, 100),
       st.sampled_from(list(ScaleKind)))
def test_affine_equivariance(x, a, b, kind):
    base = estimate(kind, x)
    assert estimate(kind, -a * x + b) == pytest.approx(a * base, rel=1e-9, abs=1e-7 * (1 + abs(b)))


@given(samples)
def test_plain_meandev_is_rescaled(x):
    n = x.size
    assert mean_dev_n(x, MeanDevScaling.PLAIN) == pytest.approx(mean_dev_n(x) * (n - 1) / n,
                                                                rel=1e-14, abs=1e-300)


@given(samples)
def test_ordering_of_pairwise_and_central(x):
    # g_n <= sqrt(2) * sd_n by Cauchy-Schwarz over pairs
    assert gini_n(x) <= np.sqrt(2) * sd_n(x) * (1 + 1e-12) + 1e-12


def test_row_wise_matches_one_dimensional():
    x = np.random.default_rng(4).standard_t(5, size=(7, 12))
    for fn in (sd_n, mean_dev_n, gini_n, iqr_n, sample_median):
        np.testing.assert_allclose(fn(x), [fn(r) for r in x], rtol=1e-14)


def test_compensated_sum_path():
    x = 1e8 + np.random.default_rng(2).normal(size=20_000)
    assert sd_n(x) == pytest.approx(np.std(x - 1e8, ddof=1), rel=1e-9)
