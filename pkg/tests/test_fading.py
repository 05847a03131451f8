import math

import numpy as np
import pytest
from scipy import integrate

from isacsim.fading import (
    DEFAULT_FIT,
    M_BISTATIC,
    M_MONOSTATIC,
    FadingFitParams,
    cdf_hj,
    cdf_hj_exact,
    cdf_hjr,
    cdf_hjr_exact,
    ccdf_hj,
    ccdf_hjr,
    fitted_mean,
    harmonic,
    sample_exp,
    sample_hj,
    sample_hjr,
)
from isacsim.metrics import ks_distance


def harmonic_series_oracle(m: float, terms: int = 2_000_000) -> float:
    """Direct series sum of m / (k (k + m)) with an integral tail bound;
    independent of the digamma route."""
    k = np.arange(1, terms + 1, dtype=float)
    head = float(np.sum(m / (k * (k + m))))
    tail = math.log1p(m / terms) - m / (2.0 * terms * (terms + m))
    return head + tail


class TestHarmonic:
    def test_integer_values(self):
        assert harmonic(1.0) == pytest.approx(1.0, abs=1e-12)
        assert harmonic(2.0) == pytest.approx(1.5, abs=1e-12)
        assert harmonic(5.0) == pytest.approx(1 + 1 / 2 + 1 / 3 + 1 / 4 + 1 / 5, abs=1e-12)

    @pytest.mark.parametrize("m", [M_BISTATIC, M_MONOSTATIC, 0.1, 3.7])
    def test_against_series(self, m):
        assert harmonic(m) == pytest.approx(harmonic_series_oracle(m), abs=1e-10)

    def test_domain(self):
        with pytest.raises(ValueError):
            harmonic(0.0)
        with pytest.raises(ValueError):
            harmonic(-1.0)


class TestFitParams:
    def test_default_rates(self):
        fit = FadingFitParams.default()
        assert fit.m_bi == pytest.approx(math.sqrt(7 / 20))
        assert fit.m_mono == pytest.approx(math.sqrt(3 / 20))
        assert fit.eps_bi == pytest.approx(harmonic(M_BISTATIC), abs=1e-12)
        assert fit.eps_mono == pytest.approx(harmonic(M_BISTATIC) / 2, abs=1e-12)
        mm = FadingFitParams.default("mean_matched")
        assert mm.eps_mono == pytest.approx(harmonic(M_MONOSTATIC) / 2, abs=1e-12)

    def test_unknown_convention(self):
        with pytest.raises(ValueError):
            FadingFitParams.default("bogus")

    def test_two_hop_fit_has_unit_mean(self):
        mean, _ = integrate.quad(lambda x: ccdf_hj(x), 0, np.inf)
        assert mean == pytest.approx(1.0, abs=1e-8)

    def test_mean_matched_echo_fit_has_mean_two(self):
        fit = FadingFitParams.default("mean_matched")
        mean, _ = integrate.quad(lambda x: ccdf_hjr(x, fit), 0, np.inf)
        assert mean == pytest.approx(2.0, abs=1e-8)

    def test_shipped_echo_fit_trades_mean_for_fit(self):
        # rate harmonic(m_bi)/2 does not preserve the exact mean of 2; it is
        # the better sup-norm fit (see TestFitQuality).
        mean, _ = integrate.quad(lambda x: ccdf_hjr(x), 0, np.inf)
        assert mean == pytest.approx(fitted_mean(DEFAULT_FIT.eps_mono, DEFAULT_FIT.m_mono),
                                     abs=1e-8)
        assert mean == pytest.approx(1.4445, abs=1e-3)


class TestFittedCdfs:
    def test_endpoints(self):
        assert cdf_hj(0.0) == 0.0
        assert cdf_hj(-1.0) == 0.0
        assert cdf_hj(1e9) == pytest.approx(1.0)
        assert cdf_hjr(0.0) == 0.0
        assert cdf_hjr(1e9) == pytest.approx(1.0)

    def test_plug_in_value(self):
        eps = harmonic_series_oracle(M_BISTATIC)
        expected = (1.0 - math.exp(-eps)) ** M_BISTATIC
        assert cdf_hj(1.0) == pytest.approx(expected, abs=1e-10)
        assert cdf_hj(1.0) == pytest.approx(0.66474, abs=1e-4)

    def test_monotone_into_unit_interval(self):
        x = np.linspace(0, 50, 2000)
        for f in (cdf_hj, cdf_hjr):
            y = f(x)
            assert np.all(np.diff(y) >= 0)
            assert np.all((y >= 0) & (y < 1.0 + 1e-15))


class TestSamplers:
    def test_exp_and_product_means(self, rng):
        n = 1_000_000
        e = sample_exp(rng, n)
        assert abs(e.mean() - 1.0) < 3 * e.std() / math.sqrt(n)
        hj = sample_hj(rng, n)
        assert abs(hj.mean() - 1.0) < 3 * hj.std() / math.sqrt(n)
        hjr = sample_hjr(rng, n)
        assert abs(hjr.mean() - 2.0) < 3 * hjr.std() / math.sqrt(n)

    def test_product_variance(self, rng):
        # E[(h1 h2)^2] - 1 = 4 - 1 = 3
        hj = sample_hj(rng, 2_000_000)
        centred = (hj - hj.mean()) ** 2
        se = centred.std() / math.sqrt(hj.size)
        assert abs(hj.var() - 3.0) < 4 * se


@pytest.fixture(scope="module")
def draws():
    rng = np.random.default_rng(90125)
    return sample_hj(rng, 1_000_000), sample_hjr(rng, 1_000_000)


class TestFitQuality:
    def test_samplers_match_exact_laws(self, draws):
        hj, hjr = draws
        assert ks_distance(hj, cdf_hj_exact) < 0.002
        assert ks_distance(hjr, cdf_hjr_exact) < 0.002

    def test_two_hop_fit_gap_is_measured(self, draws):
        # The fitted constants admit no freedom; the sup distance to the
        # exact product-exponential law is 0.071 (peak near x = 0.5).
        hj, _ = draws
        ks = ks_distance(hj, lambda x: cdf_hj(x))
        assert 0.06 < ks < 0.08

    def test_echo_fit_shipped_rate(self, draws):
        _, hjr = draws
        assert ks_distance(hjr, lambda x: cdf_hjr(x)) < 0.05

    def test_echo_fit_mean_matched_rate_gap_is_measured(self, draws):
        _, hjr = draws
        fit = FadingFitParams.default("mean_matched")
        ks = ks_distance(hjr, lambda x: cdf_hjr(x, fit))
        assert 0.065 < ks < 0.085

    def test_shipped_rate_is_the_better_fit(self, draws):
        _, hjr = draws
        fit_mm = FadingFitParams.default("mean_matched")
        assert (ks_distance(hjr, lambda x: cdf_hjr(x))
                < ks_distance(hjr, lambda x: cdf_hjr(x, fit_mm)))
