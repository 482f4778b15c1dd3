import numpy as np
import pytest

from lptail import (
    DomainError,
    Frechet,
    KoenkerBassett,
    NumericError,
    OrderPair,
    Pareto,
    QuadratureSpec,
    RngStream,
    StudentT,
    check_loss,
    quantile_ratio_limit,
    scale_equation_residual,
    tau0_scan,
    transition_limit,
    true_dual_transition_coefficient,
    true_lp_quantile,
    true_transition_coefficient,
)


class TestTrueLpQuantile:
    def test_p_one_is_the_quantile(self):
        assert true_lp_quantile(Pareto(1 / 3), 1.0, 0.875) == pytest.approx(2.0, rel=1e-12)

    def test_student_t_center_expectile_is_zero(self):
        for gamma in (1 / 3, 0.45):
            assert true_lp_quantile(StudentT(gamma), 2.0, 0.5) == pytest.approx(0.0, abs=1e-9)

    def test_scale_equation_residual_small(self):
        cases = [
            (Pareto(1 / 3), 2.4, 0.95),
            (Pareto(0.45), 2.0, 0.99),
            (Frechet(1 / 3), 2.4, 0.9),
            (Frechet(0.45), 2.0, 0.97),
            (StudentT(1 / 3), 2.4, 0.95),
            (KoenkerBassett(), 2.0, 0.9),
        ]
        for dist, p, tau in cases:
            theta = true_lp_quantile(dist, p, tau)
            assert abs(scale_equation_residual(dist, theta, p, tau)) < 1e-9

    def test_raw_residual_at_moderate_level(self):
        dist = Pareto(1 / 3)
        theta = true_lp_quantile(dist, 2.4, 0.95)
        raw = scale_equation_residual(dist, theta, 2.4, 0.95, normalized=False)
        assert abs(raw) < 1e-9

    def test_monte_carlo_cross_check(self):
        # independent route: minimize the empirical loss on a huge sample
        dist = Pareto(1 / 3)
        theta = true_lp_quantile(dist, 2.4, 0.95)
        x = dist.sample(10_000_000, RngStream(77, 0))
        grid = np.linspace(theta * 0.97, theta * 1.03, 61)
        losses = [np.mean(check_loss(x - g, 2.4, 0.95)) for g in grid]
        mc = grid[int(np.argmin(losses))]
        assert abs(mc / theta - 1.0) < 5e-3

    def test_koenker_bassett_expectile_equals_quantile(self):
        kb = KoenkerBassett()
        for tau in (0.6, 0.75, 0.9, 0.99):
            assert true_lp_quantile(kb, 2.0, tau) == pytest.approx(kb.quantile(tau), rel=1e-7)

    def test_monotone_in_level(self):
        dist = Frechet(0.45)
        taus = np.linspace(0.55, 0.99, 12)
        vals = [true_lp_quantile(dist, 2.0, t) for t in taus]
        assert np.all(np.diff(vals) > 0.0)

    def test_moment_regime_rejected(self):
        with pytest.raises(DomainError):
            true_lp_quantile(Pareto(0.45), 3.5, 0.9)  # 3.5 > 1 + 1/0.45

    def test_pareto_p1_closed_form_grid(self):
        for gamma in (0.1, 0.25, 1 / 3, 0.45, 0.6):
            for tau in (0.5, 0.9, 0.99, 0.999, 0.2):
                got = true_lp_quantile(Pareto(gamma), 1.0, tau)
                assert got == pytest.approx((1.0 - tau) ** -gamma, rel=1e-8)


class TestTransitionOracle:
    def test_equal_orders(self):
        assert true_transition_coefficient(Pareto(1 / 3), OrderPair(2.0, 2.0), 0.05) == 1.0
        assert true_dual_transition_coefficient(Pareto(1 / 3), OrderPair(2.0, 2.0), 0.05) == 1.0

    def test_koenker_bassett_is_unity(self):
        kb = KoenkerBassett()
        pair = OrderPair(2.0, 1.0)
        for eps in (0.01, 0.05, 0.1):
            assert true_transition_coefficient(kb, pair, eps) == pytest.approx(1.0, abs=1e-6)

    def test_limits_approached_from_moderate_levels(self):
        # the coefficient decreases toward the Beta-ratio limit as eps falls
        dist = Pareto(1 / 3)
        pair = OrderPair(2.4, 1.8)
        vals = [true_transition_coefficient(dist, pair, e) for e in (0.05, 0.01, 1e-3, 1e-5)]
        assert np.all(np.diff(vals) < 0.0)
        assert abs(vals[-1] / transition_limit(1 / 3, 2.4, 1.8) - 1.0) < 0.05

    def test_duality_identities(self):
        cases = [(Pareto(1 / 3), OrderPair(2.4, 1.8), 0.0),
                 (Frechet(0.45), OrderPair(2.0, 1.5), 0.0)]
        for dist, pair, tau0 in cases:
            for eps in (0.01, 0.05):
                pi = true_transition_coefficient(dist, pair, eps, tau0=tau0)
                dual = true_dual_transition_coefficient(dist, pair, eps)
                assert true_transition_coefficient(dist, pair, eps / dual, tau0=tau0) == \
                    pytest.approx(dual, abs=1e-6)
                assert true_dual_transition_coefficient(dist, pair, pi * eps) == \
                    pytest.approx(pi, abs=1e-6)

    def test_student_t_transition_with_tau0(self):
        c = true_transition_coefficient(StudentT(1 / 3), OrderPair(2.4, 1.8), 0.0265, tau0=0.5)
        assert 1.0 < c < 0.5 / 0.0265

    def test_ratio_limit_oracle(self):
        dist = Pareto(1 / 3)
        tp = true_lp_quantile(dist, 2.4, 1.0 - 1e-6)
        tq = true_lp_quantile(dist, 1.8, 1.0 - 1e-6)
        assert abs(tp / tq / quantile_ratio_limit(1 / 3, 2.4, 1.8) - 1.0) < 0.01

    def test_quadrature_spec_validation(self):
        with pytest.raises(DomainError):
            QuadratureSpec(abs_tol=-1.0)
        with pytest.raises(DomainError):
            QuadratureSpec(max_subdivisions=0)

    def test_dual_bracket_limit(self):
        with pytest.raises(NumericError):
            true_dual_transition_coefficient(Pareto(1 / 3), OrderPair(2.4, 1.8),
                                             0.05, d_limit=1.5)


class TestTau0Scan:
    def test_equal_orders_returns_top_grid_point(self):
        got = tau0_scan(Pareto(1 / 3), OrderPair(2.0, 2.0), 0.05)
        assert got == pytest.approx(0.95)

    def test_pareto_never_crosses(self):
        # theta_p stays above theta_q on the whole grid
        got = tau0_scan(Pareto(1 / 3), OrderPair(2.4, 1.8), 0.05)
        assert got == 0.0

    def test_student_t_crosses_at_half(self):
        got = tau0_scan(StudentT(1 / 3), OrderPair(2.4, 1.8), 0.05)
        assert 0.0 < got <= 0.5

    def test_grid_step_domain(self):
        with pytest.raises(DomainError):
            tau0_scan(Pareto(1 / 3), OrderPair(2.4, 1.8), 0.2)


@pytest.mark.slow
class TestSlowOracle:
    def test_pareto_fine_scan_is_zero(self):
        assert tau0_scan(Pareto(1 / 3), OrderPair(2.4, 1.8), 0.001) == 0.0

    def test_student_t_fine_scan(self):
        got = tau0_scan(StudentT(1 / 3), OrderPair(2.4, 1.8), 0.001)
        assert 0.45 <= got <= 0.5
