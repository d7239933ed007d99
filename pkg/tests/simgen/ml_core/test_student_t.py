"""Test ml_core/student_t.py"""

# standard
import math

# external
import numpy as np
import pytest
from scipy import stats

# internal
from simgen.exceptions import InvalidLevel, InvalidParams
from simgen.ml_core import ForecastDistribution, interval, student_t_nll, t_cdf, t_quantile
from simgen.ml_core.student_t import nll_terms


def dist(mu, sigma, nu) -> ForecastDistribution:
    return ForecastDistribution(np.atleast_1d(mu), np.atleast_1d(sigma), np.atleast_1d(nu))


class TestNll:
    """Test the negative log-likelihood."""

    def test_cauchy_at_the_centre(self):
        assert student_t_nll(dist(0.0, 1.0, 1.0), [0.0]) == pytest.approx(math.log(math.pi))

    def test_minimised_at_the_location(self):
        ys = np.linspace(-3, 3, 61)
        values = nll_terms(0.5, 2.0, 4.0, ys)
        assert ys[np.argmin(values)] == pytest.approx(0.5)

    def test_matches_scipy(self):
        y = np.array([-2.0, 0.3, 5.0])
        expected = -stats.t.logpdf(y, df=3.5, loc=1.0, scale=0.7).sum()
        got = student_t_nll(dist([1.0] * 3, [0.7] * 3, [3.5] * 3), y)
        assert got == pytest.approx(expected, rel=1e-10)

    def test_gaussian_limit(self):
        y, sigma = 1.3, 0.8
        gauss = 0.5 * math.log(2 * math.pi) + math.log(sigma) + 0.5 * (y / sigma) ** 2
        assert student_t_nll(dist(0.0, sigma, 1e6), [y]) == pytest.approx(gauss, abs=1e-5)

    @pytest.mark.parametrize("sigma, nu", [(0.0, 3.0), (-1.0, 3.0), (1.0, 0.0)])
    def test_invalid_params(self, sigma, nu):
        with pytest.raises(InvalidParams):
            student_t_nll(dist(0.0, sigma, nu), [0.0])


class TestQuantiles:
    """Test the inverse CDF."""

    def test_median_is_zero(self):
        assert t_quantile(5.0, 0.5) == 0.0

    def test_cauchy_quartile(self):
        assert t_quantile(1.0, 0.75) == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("nu", [1.0, 2.0, 2.5, 7.0, 30.0, 1e4])
    @pytest.mark.parametrize("p", [0.01, 0.25, 0.75, 0.925, 0.999])
    def test_matches_scipy(self, nu, p):
        assert t_quantile(nu, p) == pytest.approx(stats.t.ppf(p, nu), rel=1e-8, abs=1e-9)

    def test_cdf_inverts_quantile(self):
        assert t_cdf(t_quantile(3.0, 0.9), 3.0) == pytest.approx(0.9, abs=1e-10)

    @pytest.mark.parametrize("p", [0.0, 1.0, -0.1])
    def test_probability_outside_unit_interval(self, p):
        with pytest.raises(InvalidParams):
            t_quantile(3.0, p)


class TestInterval:
    """Test central prediction intervals."""

    def test_nested_levels(self):
        d = dist([1.0, 2.0, 3.0], [0.5, 1.0, 2.0], [2.5, 4.0, 10.0])
        lo50, hi50 = interval(d, 0.5)
        lo85, hi85 = interval(d, 0.85)
        assert np.all(lo85 <= lo50) and np.all(lo50 <= d.mu)
        assert np.all(d.mu <= hi50) and np.all(hi50 <= hi85)

    def test_symmetric_and_scaled(self):
        lo, hi = interval(dist(10.0, 2.0, 1.0), 0.5)
        assert hi[0] - 10.0 == pytest.approx(10.0 - lo[0])
        assert hi[0] == pytest.approx(12.0, abs=1e-8)

    def test_width_grows_with_sigma(self):
        narrow = interval(dist(0.0, 1.0, 3.0), 0.85)
        wide = interval(dist(0.0, 2.0, 3.0), 0.85)
        assert wide[1][0] > narrow[1][0]

    def test_batch_shape(self):
        d = ForecastDistribution(np.zeros((4, 3)), np.ones((4, 3)), np.full((4, 3), 5.0))
        lo, hi = interval(d, 0.85)
        assert lo.shape == hi.shape == (4, 3)

    @pytest.mark.parametrize("level", [0.0, 1.0, 1.5])
    def test_invalid_level(self, level):
        with pytest.raises(InvalidLevel):
            interval(dist(0.0, 1.0, 3.0), level)
