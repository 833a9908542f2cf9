import math

import numpy as np
import pytest
from scipy import special, stats

from d2k import kolmogorov
from d2k.exceptions import DomainError
from d2k.kolmogorov import kolmogorov_pvalue, kolmogorov_survival, ks_statistic, ks_test, standard_normal_cdf


def test_quantile_lattice():
    for size in (1, 10, 257):
        samples = special.ndtri((np.arange(1, size + 1) - 0.5) / size)
        assert ks_statistic(samples) == pytest.approx(1 / (2 * size), abs=1e-12)


def test_degenerate_sample():
    assert ks_statistic(np.zeros(50)) == 0.5
    assert ks_statistic([0.0]) == 0.5


def test_statistic_matches_scipy():
    rng = np.random.default_rng(17)
    samples = rng.standard_t(5, size=300)
    expected = stats.kstest(samples, 'norm').statistic
    assert ks_statistic(samples) == pytest.approx(expected, abs=1e-14)


def test_statistic_with_ties():
    samples = np.repeat([-1.0, 0.0, 2.0], 4)
    expected = stats.kstest(samples, 'norm').statistic
    assert ks_statistic(samples) == pytest.approx(expected, abs=1e-14)


def test_empty_sample():
    with pytest.raises(DomainError):
        ks_statistic([])


def test_normal_samples_are_not_rejected():
    rng = np.random.default_rng(99)
    size = 10 ** 4
    assert ks_statistic(rng.standard_normal(size)) < 1.63 / math.sqrt(size)


@pytest.mark.parametrize('x', np.linspace(0.05, 3.0, 60))
def test_survival_matches_scipy(x):
    assert kolmogorov_survival(x) == pytest.approx(special.kolmogorov(x), abs=1e-9)


@pytest.mark.parametrize('x', [0.8, 0.9, 1.0, 1.1, 1.3, 1.6])
def test_series_forms_agree(x):
    assert kolmogorov._q_theta(x) == pytest.approx(kolmogorov._q_alternating(x), abs=1e-9)


def test_pvalue_limits():
    assert kolmogorov_pvalue(0.0, 100) == 1.0
    for size in (20, 100, 2500):
        assert kolmogorov_pvalue(1.0, size) < 1e-8
    assert kolmogorov_survival(-1.0) == 1.0


@pytest.mark.parametrize('d, size', [(-0.1, 10), (1.5, 10), (0.2, 0)])
def test_pvalue_domain(d, size):
    with pytest.raises(DomainError):
        kolmogorov_pvalue(d, size)


def test_ks_test():
    rng = np.random.default_rng(5)
    samples = rng.standard_normal(400)
    result = ks_test(samples, mean_used=3.0, sigma_used=2.0)
    assert result.n_samples == 400
    assert result.mean_used == 3.0
    assert result.sigma_used == 2.0
    assert result.p_value == pytest.approx(special.kolmogorov(math.sqrt(400) * result.d_statistic), abs=1e-9)


def test_standard_normal_cdf():
    assert standard_normal_cdf(0.0) == 0.5
    assert isinstance(standard_normal_cdf(1.0), float)
    np.testing.assert_allclose(standard_normal_cdf(np.array([-1.0, 1.0])), [0.15865525393145707, 0.8413447460685429],
                               rtol=1e-14)


def test_pvalues_are_uniform_under_the_null():
    rng = np.random.default_rng(20240601)
    pvalues = [ks_test(rng.standard_normal(500)).p_value for _ in range(300)]
    assert stats.kstest(pvalues, 'uniform').pvalue > 0.001
