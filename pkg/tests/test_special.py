import numpy as np
import pytest
from scipy import special as sps

from lptail import DomainError, beta, log_gamma, reg_inc_beta


def test_log_gamma_of_one_is_zero():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-13)


def test_log_gamma_half():
    assert log_gamma(0.5) == pytest.approx(np.log(np.sqrt(np.pi)), rel=1e-13)


def test_log_gamma_ten_is_log_9_factorial():
    assert log_gamma(10.0) == pytest.approx(np.log(362880.0), rel=1e-12)


def test_log_gamma_matches_scipy_over_wide_range():
    xs = np.geomspace(1e-3, 1e3, 400)
    ours = log_gamma(xs)
    ref = sps.gammaln(xs)
    # relative 1e-12 away from the zeros at x = 1, 2; absolute there
    assert np.all(np.abs(ours - ref) <= 1e-12 * np.maximum(np.abs(ref), 0.5))


@pytest.mark.parametrize("bad", [0.0, -1.0, np.nan, np.inf])
def test_log_gamma_domain(bad):
    with pytest.raises(DomainError):
        log_gamma(bad)


def test_beta_trivial_and_hand_values():
    assert beta(1.0, 1.0) == pytest.approx(1.0, rel=1e-14)
    assert beta(2.0, 2.0) == pytest.approx(1.0 / 6.0, rel=1e-13)
    gamma = 1.0 / 3.0
    assert beta(2.0, 1.0 / gamma - 1.0) == pytest.approx(1.0 / 6.0, rel=1e-13)


def test_beta_symmetry_and_recurrence():
    rng = np.random.default_rng(1234)
    a = rng.uniform(0.1, 50.0, 1000)
    b = rng.uniform(0.1, 50.0, 1000)
    ab = beta(a, b)
    assert np.max(np.abs(ab - beta(b, a)) / ab) < 1e-14
    # B(a+1, b) = B(a, b) * a / (a + b)
    lhs = beta(a + 1.0, b)
    rhs = ab * a / (a + b)
    assert np.max(np.abs(lhs - rhs) / rhs) < 1e-12


def test_beta_rejects_nonpositive():
    with pytest.raises(DomainError):
        beta(0.0, 1.0)
    with pytest.raises(DomainError):
        beta(1.0, -2.0)


def test_reg_inc_beta_endpoints_and_uniform():
    assert reg_inc_beta(0.0, 2.3, 4.5) == 0.0
    assert reg_inc_beta(1.0, 2.3, 4.5) == 1.0
    assert reg_inc_beta(0.5, 1.0, 1.0) == pytest.approx(0.5, abs=1e-14)


def test_reg_inc_beta_monotone_in_x():
    xs = np.linspace(0.0, 1.0, 201)
    vals = reg_inc_beta(xs, 2.5, 0.7)
    assert np.all(np.diff(vals) >= 0.0)


def test_reg_inc_beta_complement_identity():
    rng = np.random.default_rng(77)
    for _ in range(300):
        a, b = rng.uniform(0.1, 30.0, 2)
        x = rng.uniform(0.0, 1.0)
        assert reg_inc_beta(x, a, b) + reg_inc_beta(1.0 - x, b, a) == pytest.approx(1.0, abs=1e-12)


def test_reg_inc_beta_matches_scipy():
    rng = np.random.default_rng(5)
    a = rng.uniform(0.1, 50.0, 500)
    b = rng.uniform(0.1, 50.0, 500)
    x = rng.uniform(0.0, 1.0, 500)
    worst = max(abs(reg_inc_beta(xi, ai, bi) - sps.betainc(ai, bi, xi))
                for ai, bi, xi in zip(a, b, x))
    assert worst < 1e-12


def test_reg_inc_beta_domain():
    with pytest.raises(DomainError):
        reg_inc_beta(-0.1, 1.0, 1.0)
    with pytest.raises(DomainError):
        reg_inc_beta(1.1, 1.0, 1.0)
    with pytest.raises(DomainError):
        reg_inc_beta(0.5, 0.0, 1.0)
