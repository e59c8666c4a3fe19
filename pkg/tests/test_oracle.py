import math

import numpy as np
import pytest
from scipy import special, stats

from powerlaw_priors import oracle as O
from powerlaw_priors.errors import DegenerateDataError, DomainError, ProprietyGateError
from powerlaw_priors.priors import custom_prior, get_prior
from powerlaw_priors.stacy import Dataset, sample

SMALL = O.LadderConfig(min_power=1, max_power=3, nodes=24, check_nodes=12)


class TestDiagnose:
    def test_saturating(self):
        g = O.diagnose([0, 0.40, 0.44, 0.441, 0.4411, 0.44111])
        assert g.status == O.CONVERGING

    def test_linear_log_growth(self):
        g = O.diagnose(np.arange(8) * math.log(2.0))
        assert g.status == O.DIVERGING
        assert g.tail_slope == pytest.approx(1.0)

    def test_alternating(self):
        g = O.diagnose([0.0, 0.3, 0.1, 0.4, 0.2, 0.5, 0.3])
        assert g.status == O.INCONCLUSIVE

    def test_logarithmic_divergence_caught_by_increment_decay(self):
        # I(T) = ln T: slope of ln I against ln T is small but increments never shrink
        T = 2.0 ** np.arange(4, 29)
        lad = O.TruncationLadder(T=T, log_values=np.log(np.log(T) + 20.0), rel_err=np.zeros(T.size))
        g = O.diagnose(lad)
        assert g.tail_slope < 0.05 and g.status == O.DIVERGING

    def test_needs_five_levels(self):
        with pytest.raises(DomainError):
            O.diagnose([0.0, 1.0, 2.0, 3.0])

    def test_ladder_levels_must_increase(self):
        with pytest.raises(DomainError):
            O.TruncationLadder(T=[4.0, 2.0], log_values=[0.0, 1.0], rel_err=[0.0, 0.0])


class TestQuadrature:
    def test_closed_form_gamma_product(self):
        # ∫ x^(a-1) e^(-x) dx = Γ(a) per axis; a = 60 is a narrow, nearly point-mass factor in log space
        shapes = (4.0, 60.0, 6.0)

        def log_f(*ts):
            return sum(a * t - np.exp(t) for a, t in zip(shapes, ts))

        lad = O.integrate_log_density(log_f, 3, O.LadderConfig(min_power=5, max_power=7, nodes=24, check_nodes=12))
        expected = sum(special.gammaln(a) for a in shapes)
        assert abs(math.expm1(lad.log_values[-1] - expected)) < 1e-6

    @pytest.mark.parametrize(
        "pid,scope,kw",
        [("R10", "general", {}), ("J1", "general", {}), ("R8", "alpha-known", {"alpha": 1.3}), ("R7", "phi-known", {"phi": 0.8})],
    )
    def test_reduced_matches_full(self, pid, scope, kw):
        d = sample((2.0, 1.0, 1.5), 3, seed=12)
        spec = get_prior(pid, scope)
        a = O.truncated_mu_reduced(d, spec, SMALL, **kw).log_values
        b = O.integrate_norm_const(d, spec, config=SMALL, method="full", **kw).log_values
        np.testing.assert_allclose(a, b, rtol=0, atol=1e-6)

    def test_custom_prior_full_path(self):
        d = sample((1.0, 1.0, 1.0), 3, seed=2)
        spec = custom_prior({"k": -1, "q0": -1, "q_inf": -1, "r0": -0.5, "r_inf": -1.5})
        a = O.truncated_mu_reduced(d, spec, SMALL).log_values
        b = O.integrate_norm_const(d, spec, config=SMALL, method="full").log_values
        np.testing.assert_allclose(a, b, atol=1e-6)

    def test_refinement_changes_little(self):
        d = sample((2.0, 1.0, 1.5), 4, seed=1)
        spec = get_prior("R10")
        a = O.integrate_norm_const(d, spec).log_values[-1]
        b = O.integrate_norm_const(d, spec, config=O.LadderConfig(nodes=40, check_nodes=24)).log_values[-1]
        assert abs(math.expm1(a - b)) < 1e-4

    def test_values_non_decreasing(self):
        d = sample((2.0, 1.0, 1.5), 3, seed=9)
        lad = O.integrate_norm_const(d, get_prior("J1"))
        assert np.all(np.diff(lad.log_values) >= -1e-12)
        assert np.all(lad.rel_err < 1e-6)

    def test_weibull_boundary_pair(self):
        spec = get_prior("R10", "phi-known")
        one = O.integrate_norm_const(Dataset([1.0]), spec, phi=1.0)
        two = O.integrate_norm_const(Dataset([1.0, 2.0]), spec, phi=1.0)
        assert O.diagnose(one).status == O.DIVERGING
        assert O.diagnose(two).status == O.CONVERGING

    def test_refuses_degenerate(self):
        with pytest.raises(DegenerateDataError):
            O.integrate_norm_const(Dataset([2.0, 2.0]), get_prior("R10"))

    def test_heavy_mu_needs_full_path(self):
        spec = custom_prior({"k": -2, "r0": -1, "r_inf": -1}, scope="alpha-known")
        with pytest.raises(DomainError):
            O.integrate_norm_const(Dataset([1.0, 2.0]), spec, alpha=1.0)

    def test_ladder_csv(self, tmp_path):
        lad = O.integrate_norm_const(Dataset([1.0, 2.0]), get_prior("R8", "alpha-known"), alpha=1.0, config=SMALL)
        path = tmp_path / "ladder.csv"
        lad.write_csv(path)
        lines = path.read_text().splitlines()
        assert lines[0] == "T,log_value,rel_err" and len(lines) == 4


class TestMCMC:
    def test_gate(self):
        with pytest.raises(ProprietyGateError):
            O.mcmc_sample(sample((1, 1, 1), 5, seed=1), get_prior("J1"))
        with pytest.raises(ProprietyGateError):
            O.mcmc_sample(Dataset([1.0]), get_prior("R10"))

    def test_gamma_case_recovers_shape(self):
        d = sample((2.0, 1.0, 1.0), 30, seed=0)
        cfg = O.MCMCConfig(steps=3000, burn_in=1500, seed=4)
        r = O.mcmc_sample(d, get_prior("R8", "alpha-known"), alpha=1.0, config=cfg)
        s = r.summary()
        assert abs(s["mean"]["phi"] - 2.0) < 3 * s["std"]["phi"]
        assert 0.15 < r.acceptance_rate < 0.6
        assert np.all(r.draws[:, :, 2] == 1.0)

    def test_weibull_case_mu_mean_does_not_settle(self):
        d = sample((1.0, 1.0, 1.5), 2, seed=4)
        cfg = O.MCMCConfig(steps=6000, burn_in=1000, seed=3, chains=8)
        r = O.mcmc_sample(d, get_prior("R10", "phi-known"), phi=1.0, config=cfg)
        mu = r.draws[:, :, 1]
        running = [mu[:m].mean() for m in (500, 6000)]
        assert running[1] > 10 * running[0]
        assert mu.max() / np.median(mu) > 1e3

    def test_mu_slice_matches_gamma_posterior(self):
        d = sample((1.0, 2.0, 1.0), 20, seed=3)
        cfg = O.MCMCConfig(steps=5000, burn_in=1000, seed=1, chains=40)
        r = O.mcmc_sample(d, get_prior("J1"), alpha=1.0, phi=1.0, config=cfg)
        mu = r.draws[::2, :, 1].ravel()
        assert mu.size == 100_000
        post = stats.gamma(a=d.n, scale=1.0 / d.values.sum())
        # thinned chains are close to independent; compare against the 5% critical value
        ks = stats.kstest(mu, post.cdf).statistic
        assert ks < 1.358 / math.sqrt(mu.size) * 2.0

    def test_deterministic_and_csv(self, tmp_path):
        d = sample((2.0, 1.0, 1.0), 10, seed=0)
        cfg = O.MCMCConfig(steps=200, burn_in=100, seed=9, chains=2)
        a = O.mcmc_sample(d, get_prior("R8", "alpha-known"), alpha=1.0, config=cfg)
        b = O.mcmc_sample(d, get_prior("R8", "alpha-known"), alpha=1.0, config=cfg)
        np.testing.assert_array_equal(a.draws, b.draws)
        path = tmp_path / "chain.csv"
        a.write_csv(path)
        lines = path.read_text().splitlines()
        assert lines[0] == "step,phi,mu,alpha,log_post" and len(lines) == 201
        assert next(a.params()).alpha == 1.0

    def test_config_validation(self):
        with pytest.raises(DomainError):
            O.MCMCConfig(step_sizes=(1.0, 1.0))
        with pytest.raises(DomainError):
            O.MCMCConfig(steps=0)
