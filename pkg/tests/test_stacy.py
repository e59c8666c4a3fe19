import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate, stats

from powerlaw_priors.errors import DegenerateDataError, DomainError
from powerlaw_priors.specfun import log_gamma
from powerlaw_priors.stacy import (
    SUBFAMILIES,
    Dataset,
    ParamVector,
    cdf,
    fisher_info,
    log_likelihood,
    log_pdf,
    pdf,
    resolve_subfamily,
    sample,
    score,
)

# log of pdf(1)·pdf(2) under θ=(2, 0.5, 1), frozen from mpmath
LOGLIK_12 = -3.5794415416798359283

shape = st.floats(min_value=0.2, max_value=5.0)


class TestParamVectorAndDataset:
    @pytest.mark.parametrize("bad", [(0, 1, 1), (1, -1, 1), (1, 1, float("nan")), (1, float("inf"), 1)])
    def test_invalid_theta(self, bad):
        with pytest.raises(DomainError):
            ParamVector(*bad)

    def test_dataset_stats(self):
        d = Dataset([1.0, 2.0, 4.0])
        assert d.n == 3 and len(d) == 3
        assert d.geometric_mean == pytest.approx(2.0)
        assert d.maximum == 4.0 and d.minimum == 1.0
        assert d.log_sum == pytest.approx(math.log(8.0))
        assert not d.degenerate

    def test_degenerate_flag(self):
        d = Dataset([3.0, 3.0, 3.0])
        assert d.degenerate
        with pytest.raises(DegenerateDataError):
            d.require_nondegenerate()

    def test_rejects_bad_values_with_positions(self):
        with pytest.raises(DomainError, match=r"\[1, 2\]"):
            Dataset([1.0, -1.0, 0.0])
        with pytest.raises(DomainError):
            Dataset([])

    def test_values_are_read_only(self):
        d = Dataset([1.0, 2.0])
        with pytest.raises(ValueError):
            d.values[0] = 5.0


class TestDensity:
    def test_exponential_value(self):
        assert pdf(0.5, (1, 2, 1)) == pytest.approx(2 * math.exp(-1), rel=1e-14)

    @given(shape, shape, st.floats(min_value=0.05, max_value=10))
    def test_weibull_row(self, mu, alpha, x):
        weibull = alpha * mu**alpha * x ** (alpha - 1) * math.exp(-((mu * x) ** alpha))
        assert pdf(x, (1.0, mu, alpha)) == pytest.approx(weibull, rel=1e-12, abs=1e-300)

    def test_normalization(self, rng):
        for _ in range(20):
            phi, mu, alpha = rng.uniform(0.2, 5.0, 3)
            f = lambda x: pdf(x, (phi, mu, alpha))
            # split at the mode region so quad sees the peak
            mid = (max(phi - 1 / alpha, 1e-3)) ** (1 / alpha) / mu
            total = integrate.quad(f, 0, mid, epsabs=0, epsrel=1e-12, limit=200)[0]
            total += integrate.quad(f, mid, np.inf, epsabs=0, epsrel=1e-12, limit=200)[0]
            assert abs(total - 1.0) < 1e-8

    def test_domain(self):
        with pytest.raises(DomainError):
            pdf(0.0, (1, 1, 1))
        with pytest.raises(DomainError):
            log_pdf(-1.0, (1, 1, 1))

    def test_cdf_matches_scipy(self):
        x = np.array([0.1, 0.7, 2.0, 5.0])
        ref = stats.gengamma(a=2.5, c=1.7, scale=1 / 0.8).cdf(x)
        np.testing.assert_allclose(cdf(x, (2.5, 0.8, 1.7)), ref, rtol=1e-10)


class TestLikelihood:
    def test_single_point(self):
        assert log_likelihood(Dataset([1.0]), (1, 1, 1)) == pytest.approx(-1.0, abs=1e-15)

    def test_equals_sum_of_log_pdf(self, rng):
        x = rng.gamma(2.0, size=15)
        theta = (1.7, 0.6, 2.2)
        assert log_likelihood(Dataset(x), theta) == pytest.approx(np.sum(log_pdf(x, theta)), abs=1e-10)

    def test_product_oracle(self):
        assert log_likelihood(Dataset([1.0, 2.0]), (2, 0.5, 1)) == pytest.approx(LOGLIK_12, abs=1e-13)

    def test_finite_for_huge_phi(self):
        assert math.isfinite(log_likelihood(Dataset([1.0, 2.0]), (1e6, 1.0, 1.0)))

    @given(shape, shape)
    def test_concave_in_log_mu(self, phi, alpha):
        d = Dataset([0.3, 1.1, 2.5])
        t = np.linspace(-3, 3, 25)
        ll = np.array([log_likelihood(d, (phi, math.exp(v), alpha)) for v in t])
        assert np.all(np.diff(ll, 2) <= 1e-9)


class TestSampler:
    def test_deterministic(self):
        a = sample((1.5, 2.0, 0.7), 100, seed=11)
        b = sample((1.5, 2.0, 0.7), 100, seed=11)
        np.testing.assert_array_equal(a.values, b.values)
        assert np.all(a.values > 0)

    @pytest.mark.parametrize("theta", [(2.0, 1.0, 1.5), (0.4, 2.0, 0.8), (5.0, 0.3, 3.0)])
    def test_mean_within_four_se(self, theta):
        phi, mu, alpha = theta
        d = sample(theta, 100_000, seed=3)
        mean = math.exp(log_gamma(phi + 1 / alpha) - log_gamma(phi)) / mu
        second = math.exp(log_gamma(phi + 2 / alpha) - log_gamma(phi)) / mu**2
        se = math.sqrt((second - mean**2) / d.n)
        assert abs(d.values.mean() - mean) < 4 * se

    def test_exponential_ks(self):
        d = sample((1.0, 2.0, 1.0), 5000, seed=8)
        assert stats.kstest(d.values, stats.expon(scale=0.5).cdf).pvalue > 0.01

    @pytest.mark.parametrize("theta", [(0.5, 1.0, 2.0), (3.0, 1.0, 1.0), (1.5, 0.5, 0.5)])
    def test_histogram_chi_square(self, theta):
        d = sample(theta, 20_000, seed=21)
        edges = np.quantile(d.values, np.linspace(0, 1, 21))
        edges[0], edges[-1] = 0.0, np.inf
        probs = np.diff(np.concatenate([[0.0], cdf(edges[1:-1], theta), [1.0]]))
        counts = np.histogram(d.values, bins=edges)[0]
        chi2 = np.sum((counts - d.n * probs) ** 2 / (d.n * probs))
        assert stats.chi2(df=19).sf(chi2) > 0.01

    def test_bad_count(self):
        with pytest.raises(DomainError):
            sample((1, 1, 1), 0, seed=1)
        with pytest.raises(DomainError):
            sample((1, 1, 1), 2.0, seed=1)


class TestFisher:
    def test_unit_theta(self):
        m = fisher_info((1, 1, 1))
        # order (α, μ, φ)
        assert m[1, 1] == pytest.approx(1.0)
        assert m[2, 2] == pytest.approx(math.pi**2 / 6)
        assert abs(m[1, 2]) == pytest.approx(1.0)

    def test_symmetric_positive_definite(self, rng):
        for _ in range(50):
            m = fisher_info(tuple(rng.uniform(0.3, 4.0, 3)))
            np.testing.assert_array_equal(m, m.T)
            assert np.all(np.diag(m) > 0)
            assert np.linalg.eigvalsh(m).min() > 0

    def test_score_covariance(self):
        theta = (2.0, 1.0, 1.5)
        d = sample(theta, 200_000, seed=5)
        s = score(d.values, theta)
        assert np.all(np.abs(s.mean(axis=0)) < 0.02)
        cov = s.T @ s / d.n
        np.testing.assert_allclose(cov, fisher_info(theta), rtol=0.05)


class TestSubfamilies:
    def test_maxwell_boltzmann(self):
        assert resolve_subfamily("MaxwellBoltzmann", mu=1.2) == ParamVector(1.5, 1.2, 2.0)

    def test_chi_square(self):
        assert resolve_subfamily("ChiSquare", n=4) == ParamVector(2.0, 0.5, 1.0)

    def test_weibull_equals_exponential(self):
        assert resolve_subfamily("Weibull", mu=1.0, alpha=1.0) == resolve_subfamily("Exponential", mu=1.0)

    def test_every_row_resolves(self):
        for name, pinned in SUBFAMILIES.items():
            free = {p: 1.0 for p in ("phi", "mu", "alpha") if p not in pinned}
            if pinned.get("phi") in ("n", "n/2"):
                free["n"] = 3
            theta = resolve_subfamily(name, **free)
            for p, v in pinned.items():
                if not isinstance(v, str):
                    assert getattr(theta, p) == v

    def test_errors(self):
        with pytest.raises(DomainError):
            resolve_subfamily("Rayleigh", mu=1.0, alpha=2.0)
        with pytest.raises(DomainError):
            resolve_subfamily("Erlang", mu=1.0, n=2.5)
        with pytest.raises(DomainError):
            resolve_subfamily("Erlang", mu=1.0, n=True)
        with pytest.raises(DomainError):
            resolve_subfamily("Gamma", mu=1.0)
        with pytest.raises(DomainError):
            resolve_subfamily("Lognormal", mu=1.0)
