"""Monte Carlo harness, exact binomial oracle and the posterior fixed point."""

import math

import numpy as np
import pytest

from riskbounds import (
    BernoulliExact,
    DivergenceRiskError,
    DomainError,
    GridDensity,
    LinearGaussianModel,
    MCRun,
    bernoulli_exact_lambda,
    linear_gaussian_min_lambda,
    mc_lambda,
    risk_sensitive_posterior_estimator,
    scalar_ml_lambda,
)
from riskbounds.phase_transition import bernoulli_bayes_exponent

from oracles import bernoulli_nonbayes_exponent

LN2 = math.log(2.0)


class TestMcLambda:
    def test_conditional_mean_matches_exact_minimum(self):
        model = LinearGaussianModel(0.5, 1.0, 1.0)
        alpha = 0.5 * model.alpha_c()
        run = MCRun("lin-gauss", "cond-mean", alpha=alpha, n_samples=10 ** 6,
                    master_seed=7, sigma2=0.5, es=1.0, n0=1.0)
        res = mc_lambda(run)
        exact = linear_gaussian_min_lambda(model, alpha).value
        assert res.covers(exact, n_se=3.0)

    def test_trivial_estimator_matches_prior_moment(self):
        sigma2, alpha = 0.8, 0.4
        run = MCRun("phase-trivial", "zero", alpha=alpha, n_samples=5 * 10 ** 5,
                    master_seed=11, sigma2=sigma2)
        res = mc_lambda(run)
        exact = 0.5 * math.log(1.0 / (1.0 - 2.0 * alpha * sigma2))
        assert res.covers(exact, n_se=3.0)

    def test_ml_error_moment(self):
        run = MCRun("nb-ml", "ml", alpha=0.5, n_samples=5 * 10 ** 5,
                    master_seed=3, es=1.0, n0=1.0)
        res = mc_lambda(run)
        assert res.covers(0.5 * LN2, n_se=3.0)
        assert res.covers(scalar_ml_lambda(0.5, 1.0, 1.0), n_se=3.0)

    def test_zero_estimator_on_signal_model_sees_only_the_prior(self):
        # the zero estimator's error is minus the parameter, so the signal
        # path contributes nothing and the moment matches the prior's
        sigma2, alpha = 0.6, 0.5
        run = MCRun("lin-gauss", "zero", alpha=alpha, n_samples=2 * 10 ** 5,
                    master_seed=9, sigma2=sigma2, es=2.0, n0=1.0)
        res = mc_lambda(run)
        exact = 0.5 * math.log(1.0 / (1.0 - 2.0 * alpha * sigma2))
        assert res.covers(exact, n_se=3.0)

    def test_refuses_near_threshold(self):
        with pytest.raises(DivergenceRiskError):
            mc_lambda(MCRun("lin-gauss", "cond-mean", alpha=0.9, n_samples=10 ** 4,
                            master_seed=1, sigma2=0.5, es=0.0))

    def test_worker_count_does_not_change_bits(self):
        run = MCRun("lin-gauss", "cond-mean", alpha=0.4, n_samples=123_457,
                    master_seed=5, sigma2=0.5, es=1.0, n0=1.0)
        serial = mc_lambda(run, workers=1)
        threaded = mc_lambda(run, workers=3)
        assert serial.lambda_hat == threaded.lambda_hat
        assert serial.se == threaded.se
        assert serial.max_share == threaded.max_share

    def test_seed_reproducibility_and_sensitivity(self):
        base = MCRun("nb-ml", "ml", alpha=0.3, n_samples=10 ** 4, master_seed=2)
        again = MCRun("nb-ml", "ml", alpha=0.3, n_samples=10 ** 4, master_seed=2)
        other = MCRun("nb-ml", "ml", alpha=0.3, n_samples=10 ** 4, master_seed=3)
        assert mc_lambda(base).lambda_hat == mc_lambda(again).lambda_hat
        assert mc_lambda(base).lambda_hat != mc_lambda(other).lambda_hat

    def test_heavy_tail_flag_consistency(self):
        run = MCRun("phase-trivial", "zero", alpha=0.45, n_samples=2000,
                    master_seed=0, sigma2=0.8)
        res = mc_lambda(run)
        assert 0.0 < res.max_share <= 1.0
        assert res.heavy_tail == (res.max_share > 0.01)

    def test_minimum_sample_size_enforced(self):
        with pytest.raises(DomainError):
            MCRun("nb-ml", "ml", alpha=0.1, n_samples=100, master_seed=0)

    def test_calibration_coverage_at_reduced_scale(self):
        # 100 independently seeded runs must cover the closed form within
        # three standard errors at least 95 times
        alpha, sigma2 = 0.3, 0.5
        exact = 0.5 * math.log(1.0 / (1.0 - alpha))
        hits = 0
        for seed in range(100):
            run = MCRun("lin-gauss", "cond-mean", alpha=alpha, n_samples=10 ** 4,
                        master_seed=seed, sigma2=sigma2, es=0.0, n0=1.0)
            hits += mc_lambda(run).covers(exact, n_se=3.0)
        assert hits >= 95


class TestBernoulliExact:
    def test_zero_risk_scale_is_exactly_zero(self):
        spec = BernoulliExact(n=100, a=0.0, theta=0.3, estimator=lambda q: 0.77)
        assert bernoulli_exact_lambda(spec) == pytest.approx(0.0, abs=1e-12)

    def test_plugin_approaches_the_exponent(self):
        spec = BernoulliExact(n=200, a=1.0, theta=0.3, estimator=lambda q: q)
        lam = bernoulli_exact_lambda(spec)
        exponent = bernoulli_nonbayes_exponent(1.0, 0.3)
        assert abs(lam / 200 - exponent) <= 0.05

    def test_gap_shrinks_with_sample_size(self):
        exponent = bernoulli_nonbayes_exponent(1.0, 0.3)
        gaps = []
        for n in (200, 400):
            spec = BernoulliExact(n=n, a=1.0, theta=0.3, estimator=lambda q: q)
            gaps.append(abs(bernoulli_exact_lambda(spec) / n - exponent))
        assert 1.5 <= gaps[0] / gaps[1] <= 3.0

    def test_type_counting_floor(self):
        # the largest binomial term alone gives lambda_n / n >= exponent -
        # ln(n+1)/n, so the exact sum can never fall below that floor
        n, a, theta = 300, 2.5, 0.4
        spec = BernoulliExact(n=n, a=a, theta=theta, estimator=lambda q: q)
        lam = bernoulli_exact_lambda(spec)
        exponent = bernoulli_nonbayes_exponent(a, theta)
        assert lam / n >= exponent - math.log(n + 1) / n - 1e-12

    def test_saddle_optimal_estimator_wins_beyond_transition(self):
        # at a sharp risk scale the saddle-game estimator's moment must not
        # exceed the plugin's
        a, n, theta = 10.0, 400, 0.3
        _, q_grid, curve = bernoulli_bayes_exponent(a)
        est = lambda q: float(np.interp(q, q_grid, curve))
        lam_opt = bernoulli_exact_lambda(BernoulliExact(n=n, a=a, theta=theta, estimator=est))
        lam_plug = bernoulli_exact_lambda(BernoulliExact(n=n, a=a, theta=theta,
                                                         estimator=lambda q: q))
        assert lam_opt <= lam_plug

    def test_domain_validation(self):
        with pytest.raises(DomainError):
            BernoulliExact(n=0, a=1.0, theta=0.3, estimator=lambda q: q)
        with pytest.raises(DomainError):
            BernoulliExact(n=10, a=1.0, theta=0.0, estimator=lambda q: q)


class TestPosteriorEstimator:
    def test_gaussian_posterior_fixed_point_is_its_mean(self):
        theta = np.linspace(-6.0, 8.0, 4097)
        dens = np.exp(-((theta - 1.0) ** 2) / (2 * 0.5))
        post = GridDensity(theta, dens / np.trapezoid(dens, theta))
        eta = risk_sensitive_posterior_estimator(post, 0.3)
        assert eta == pytest.approx(1.0, abs=1e-9)

    def test_zero_risk_recovers_posterior_mean(self):
        theta = np.linspace(-2.0, 6.0, 2049)
        dens = np.exp(-((theta - 0.7) ** 2) / 2) + 0.3 * np.exp(-((theta - 2.5) ** 2) / 0.5)
        post = GridDensity(theta, dens / np.trapezoid(dens, theta))
        assert risk_sensitive_posterior_estimator(post, 0.0) == pytest.approx(
            post.mean(), abs=1e-12)

    def _two_point_posterior(self, width=0.004, n=8001):
        theta = np.linspace(-0.5, 1.5, n)
        dens = (np.exp(-theta ** 2 / (2 * width ** 2))
                + np.exp(-((theta - 1.0) ** 2) / (2 * width ** 2)))
        return GridDensity(theta, dens / np.trapezoid(dens, theta))

    def test_two_point_posterior_fixed_point_matches_direct_minimization(self):
        post = self._two_point_posterior()
        eta = risk_sensitive_posterior_estimator(post, 3.0)
        # direct scan oracle of the tilted log normalizer
        from scipy.special import logsumexp
        w = np.gradient(post.theta)
        log_p = np.log(np.maximum(post.density, 1e-300))
        def objective(e):
            return logsumexp(log_p + 3.0 * (post.theta - e) ** 2, b=w)
        etas = np.linspace(0.2, 0.8, 60001)
        direct = etas[int(np.argmin([objective(e) for e in etas]))]
        assert eta == pytest.approx(float(direct), abs=1e-8)

    def test_oscillatory_regime_falls_back_to_direct_minimization(self):
        # steep tilts destabilize the damped iteration; the fallback must
        # still land on the symmetric minimizer
        post = self._two_point_posterior()
        eta = risk_sensitive_posterior_estimator(post, 10.0)
        assert eta == pytest.approx(0.5, abs=1e-6)

    def test_divergent_tilt_rejected(self):
        theta = np.linspace(-8.0, 8.0, 4097)
        v = 1.0
        dens = np.exp(-theta ** 2 / (2 * v))
        post = GridDensity(theta, dens / np.trapezoid(dens, theta))
        with pytest.raises(DivergenceRiskError):
            risk_sensitive_posterior_estimator(post, 0.7 / v)
