import numpy as np
import pytest

from lptail import (
    DegenerateTailError,
    DomainError,
    OrderPair,
    Pareto,
    RegimeError,
    RngStream,
    Sample,
    bm_estimator,
    empirical_lp_quantile,
    extram,
    hill,
    order_statistic_quantile,
    qua_estimator,
)


@pytest.fixture(scope="module")
def pareto_sample():
    return Sample(Pareto(1 / 3).sample(5000, RngStream(900, 0)))


class TestBm:
    def test_equal_levels_is_intermediate_estimate(self, pareto_sample):
        eps_n = 0.011
        est = bm_estimator(pareto_sample, 2.4, eps_n, eps_n, gamma_hat=0.3)
        assert est.value == empirical_lp_quantile(pareto_sample, 2.4, 1.0 - eps_n)

    def test_extrapolation_factor_hand_value(self, pareto_sample):
        eps_n = 0.04
        base = empirical_lp_quantile(pareto_sample, 2.4, 1.0 - eps_n)
        est = bm_estimator(pareto_sample, 2.4, eps_n, eps_n / 8.0, gamma_hat=1 / 3)
        assert est.value == pytest.approx(2.0 * base, rel=1e-12)

    def test_rejects_reversed_levels(self, pareto_sample):
        with pytest.raises(DomainError):
            bm_estimator(pareto_sample, 2.4, 0.005, 0.011, gamma_hat=0.3)

    def test_nonpositive_anchor_fails(self):
        x = Sample(np.linspace(-10.0, -1.0, 200))
        with pytest.raises(DegenerateTailError):
            bm_estimator(x, 2.0, 0.1, 0.01, gamma_hat=0.3)


class TestQua:
    def test_p_one_prefactor_collapses(self, pareto_sample):
        eps_n, eps_p = 0.011, 0.005
        gamma_hat = 0.29
        est = qua_estimator(pareto_sample, 1.0, eps_n, eps_p, gamma_hat)
        anchor = order_statistic_quantile(pareto_sample, eps_n)
        assert est.value == pytest.approx((eps_p / eps_n) ** (-gamma_hat) * anchor, rel=1e-14)

    def test_p_one_equal_levels_is_the_order_statistic(self, pareto_sample):
        est = qua_estimator(pareto_sample, 1.0, 0.011, 0.011, gamma_hat=0.4)
        assert est.value == order_statistic_quantile(pareto_sample, 0.011)

    def test_expectile_prefactor_hand_value(self, pareto_sample):
        # gamma = 1/3, p = 2: prefactor [(1/3)/B(2,2)]**(-1/3) = 2**(-1/3)
        eps_n = 0.011
        est = qua_estimator(pareto_sample, 2.0, eps_n, eps_n, gamma_hat=1 / 3)
        anchor = order_statistic_quantile(pareto_sample, eps_n)
        assert est.value == pytest.approx(2.0 ** (-1 / 3) * anchor, rel=1e-12)

    def test_regime_error(self, pareto_sample):
        with pytest.raises(RegimeError):
            qua_estimator(pareto_sample, 2.4, 0.011, 0.005, gamma_hat=0.75)


class TestExtram:
    def test_variant_three_hand_factor(self, pareto_sample):
        # plugin coefficient at gamma 1/3 for (2, 1) is 1/2; with
        # eps_n / eps_prime = 8 the factor is (0.5 * 8)**(1/3) = 4**(1/3)
        pair = OrderPair(2.0, 1.0)
        eps_n = 0.04
        theta1 = empirical_lp_quantile(pareto_sample, 1.0, 1.0 - eps_n)
        est = extram(pareto_sample, pair, eps_n, eps_n / 8.0, 1 / 3, variant=3)
        assert est.value == pytest.approx(4.0 ** (1 / 3) * theta1, rel=1e-12)
        assert est.transition.value == pytest.approx(0.5, rel=1e-12)

    def test_variant_one_uses_intermediate_coefficient(self, pareto_sample):
        pair = OrderPair(2.4, 1.8)
        est = extram(pareto_sample, pair, 0.011, 0.005, 0.32, variant=1)
        assert est.transition.method.value == "intermediate"
        tq = empirical_lp_quantile(pareto_sample, 1.8, 1.0 - 0.011)
        expected = (est.transition.value * 0.011 / 0.005) ** 0.32 * tq
        assert est.value == pytest.approx(expected, rel=1e-12)

    def test_bad_variant(self, pareto_sample):
        with pytest.raises(DomainError):
            extram(pareto_sample, OrderPair(2.4, 1.8), 0.011, 0.005, 0.3, variant=4)

    def test_degenerate_transition_is_the_intermediate_estimate(self, pareto_sample):
        # p = q and eps_prime = eps_n force the coefficient and the
        # extrapolation factor both to 1
        eps_n = 0.011
        est = extram(pareto_sample, OrderPair(2.0, 2.0), eps_n, eps_n, 0.3, variant=1)
        assert est.transition.value == 1.0
        assert est.value == empirical_lp_quantile(pareto_sample, 2.0, 1.0 - eps_n)

    def test_reduction_to_qua_at_q_one(self, pareto_sample):
        # with q = 1 the variant-3 estimator is algebraically the
        # quantile-anchored estimator; both sides computed independently
        gamma_hat = hill(pareto_sample, 55)
        pair = OrderPair(2.0, 1.0)
        a = extram(pareto_sample, pair, 0.011, 0.005, gamma_hat, variant=3)
        b = qua_estimator(pareto_sample, 2.0, 0.011, 0.005, gamma_hat)
        assert a.value == pytest.approx(b.value, rel=1e-12)


class TestInvariants:
    def test_scale_equivariance_all_methods(self):
        rng = np.random.default_rng(31)
        dist = Pareto(1 / 3)
        for trial in range(20):
            x = dist.sample(2000, RngStream(31, trial))
            a = float(rng.uniform(0.2, 8.0))
            sample, scaled = Sample(x), Sample(a * x)
            gamma_hat = hill(sample, 58)
            assert hill(scaled, 58) == pytest.approx(gamma_hat, abs=1e-12)
            pair = OrderPair(2.4, 1.8)
            for build in (
                lambda s: bm_estimator(s, 2.4, 0.029, 0.005, gamma_hat).value,
                lambda s: qua_estimator(s, 2.4, 0.029, 0.005, gamma_hat).value,
                lambda s: extram(s, pair, 0.029, 0.005, gamma_hat, 1).value,
                lambda s: extram(s, pair, 0.029, 0.005, gamma_hat, 2).value,
                lambda s: extram(s, pair, 0.029, 0.005, gamma_hat, 3).value,
            ):
                assert build(scaled) == pytest.approx(a * build(sample), rel=1e-8)

    def test_monotone_in_eps_prime(self, pareto_sample):
        gamma_hat = hill(pareto_sample, 55)
        pair = OrderPair(2.4, 2.0)
        eps_primes = [0.009, 0.007, 0.005, 0.003, 0.001]
        vals = [extram(pareto_sample, pair, 0.011, e, gamma_hat, 3).value for e in eps_primes]
        assert np.all(np.diff(vals) > 0.0)
        bm_vals = [bm_estimator(pareto_sample, 2.4, 0.011, e, gamma_hat).value for e in eps_primes]
        assert np.all(np.diff(bm_vals) > 0.0)
