import math

import numpy as np
import pytest

from giniscale import closedform as cf
from giniscale.curves import Pair, RootNotFound, are_surface, epsilon_star, iso_curve, pair_difference
from giniscale.distributions import DomainError, Normal, NormalMixture
from giniscale.estimators import ScaleKind


@pytest.mark.parametrize("pair, expected", [
    (Pair.GINI_VS_SD, 0.000310431200),
    (Pair.MEANDEV_VS_SD, 0.0017536539),
    (Pair.GINI_VS_MEANDEV, 0.0130239299),
])
def test_epsilon_star_at_three(pair, expected):
    assert epsilon_star(3.0, pair) == pytest.approx(expected, rel=1e-7)


@pytest.mark.parametrize("pair", list(Pair))
@pytest.mark.parametrize("lam", [2.0, 3.0, 4.5, 6.0])
def test_root_contract(pair, lam):
    e = epsilon_star(lam, pair)
    assert abs(pair_difference(pair, lam, e)) <= 1e-10
    # a genuine crossing, not a touch
    assert pair_difference(pair, lam, e / 2) * pair_difference(pair, lam, e * 2) < 0


def test_no_crossing_for_small_lambda():
    with pytest.raises(RootNotFound):
        epsilon_star(1.2, "gini-sd")
    with pytest.raises(DomainError):
        epsilon_star(1.0, "gini-sd")


def test_epsilon_star_decreasing_in_lambda():
    e = [epsilon_star(lam, Pair.GINI_VS_SD) for lam in np.linspace(2, 6, 9)]
    assert all(a > b for a, b in zip(e, e[1:]))


def test_iso_curve_reports_missing():
    points, missing = iso_curve("meandev-sd", [1.1, 3.0])
    assert missing == [1.1]
    assert len(points) == 1 and points[0].lam == 3.0
    assert points[0].epsilon == pytest.approx(0.0017536539, rel=1e-7)


def test_surface_cells():
    s = are_surface("gini", (1.0, 3.0, 3), (math.log10(0.008), -1.0, 2))
    assert s.values.shape == (3, 2)
    assert s.values[2, 0] == pytest.approx(1.399511, abs=5e-7)
    # lambda = 1 is the normal whatever eps is
    np.testing.assert_allclose(s.values[0], cf.are(ScaleKind.GINI, Normal()), rtol=1e-12)
    assert s.values[1, 1] == pytest.approx(cf.are("gini", NormalMixture(2.0, 0.1)), rel=1e-14)


@pytest.mark.parametrize("kw", [
    {"lambda_range": (0.5, 3, 5)},
    {"lambda_range": (3, 2, 5)},
    {"lambda_range": (1, 3, 1)},
    {"log10_eps_range": (-3, 0.5, 5)},
    {"log10_eps_range": (-3, -4, 5)},
])
def test_surface_rejects_bad_ranges(kw):
    with pytest.raises(DomainError):
        are_surface("gini", **kw)


def test_surface_rejects_sd():
    with pytest.raises(DomainError):
        are_surface("sd")
