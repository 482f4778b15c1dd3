"""Ground-truth solvers for the defining equations on known distributions.

The population Lp-quantile at level tau solves the scale equation

    tau * E[(X - theta)_+**(p-1)] = (1 - tau) * E[(X - theta)_-**(p-1)].

Expectations are computed by adaptive quadrature: through the quantile
transform on (0, 1) for the families with closed-form quantiles, and in
x-space against the density for Student-t (whose quantile is itself
iterative). The transition coefficient and its dual are then roots of
level-matching equations in the multiplier, solved by monotone bracketed
root finding. These oracles supply the truth values the Monte Carlo
harness scores estimators against.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad as _scipy_quad

from .distributions import HeavyTailDistribution, StudentT
from .errors import DomainError, NumericError
from .quantiles import Level
from .solvers import bracketed_root
from .transition import OrderPair, quantile_ratio_limit
from .validation import check_count, check_order, check_positive, check_prob


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and subdivision budget for the adaptive quadrature."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 200

    def __post_init__(self):
        check_positive(self.abs_tol, "abs_tol")
        check_positive(self.rel_tol, "rel_tol")
        check_count(self.max_subdivisions, "max_subdivisions", minimum=1)


DEFAULT_QUADRATURE = QuadratureSpec()


def _quad(f, a, b, spec: QuadratureSpec) -> float:
    out = _scipy_quad(f, a, b, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                      limit=spec.max_subdivisions, full_output=1)
    value, abserr = out[0], out[1]
    if len(out) > 3:
        # QUADPACK flagged trouble; accept only if its own error estimate
        # is still within a plausible multiple of the requested tolerance
        if not abserr <= 1e3 * max(spec.abs_tol, spec.rel_tol * abs(value)):
            raise NumericError(f"quadrature failed on [{a!r}, {b!r}]: {out[3]}")
    return float(value)


def _tail_moments(dist: HeavyTailDistribution, theta, p, spec: QuadratureSpec):
    """(E[(X - theta)_+**(p-1)], E[(X - theta)_-**(p-1)]) for the given theta."""
    pm1 = p - 1.0
    if isinstance(dist, StudentT):
        # x-space against the closed-form density (the Student-t quantile is
        # itself iterative); the left integral is split at 0 to isolate the
        # heavy left tail
        right = _quad(lambda x: (x - theta) ** pm1 * dist.pdf(x), theta, np.inf, spec)
        if theta > 0.0:
            left = (_quad(lambda x: (theta - x) ** pm1 * dist.pdf(x), -np.inf, 0.0, spec)
                    + _quad(lambda x: (theta - x) ** pm1 * dist.pdf(x), 0.0, theta, spec))
        else:
            left = _quad(lambda x: (theta - x) ** pm1 * dist.pdf(x), -np.inf, theta, spec)
        return right, left

    # quantile-transform route: E[g(X)] = int_0^1 g(Q(u)) du, which makes
    # the interval finite and puts support endpoints at u in {0, 1}
    f_theta = float(dist.cdf(theta))
    right = 0.0
    left = 0.0
    if f_theta < 1.0:
        # integrate over the survival variable s = 1 - u; the integrand
        # blows up like s**(-alpha) at s = 0, so stretch s = w**m with
        # m = 1/(1 - alpha) to make it bounded
        surv = 1.0 - f_theta
        alpha = dist.gamma * pm1
        m = 1.0 / (1.0 - alpha) if alpha > 1e-12 else 1.0

        def upper_integrand(w):
            s = w ** m
            if s <= 0.0:
                return 0.0
            excess = dist.tail_quantile(s) - theta
            if excess <= 0.0:
                return 0.0
            return excess ** pm1 * m * w ** (m - 1.0)

        right = _quad(upper_integrand, 0.0, surv ** (1.0 / m), spec)
    if f_theta > 0.0:
        alpha_left = (dist.gamma_left or 0.0) * pm1
        m = 1.0 / (1.0 - alpha_left) if alpha_left > 1e-12 else 1.0

        def lower_integrand(w):
            u = w ** m
            if u <= 0.0:
                return 0.0
            shortfall = theta - dist.quantile(u)
            if shortfall <= 0.0:
                return 0.0
            return shortfall ** pm1 * m * w ** (m - 1.0)

        left = _quad(lower_integrand, 0.0, f_theta ** (1.0 / m), spec)
    return right, left


def scale_equation_residual(dist, theta, p, tau, quad_spec=DEFAULT_QUADRATURE,
                            normalized=True):
    """Residual tau*E[(X-theta)_+**(p-1)] - (1-tau)*E[(X-theta)_-**(p-1)].

    With ``normalized`` the residual is divided by the sum of both sides,
    giving a level-independent quantity in (-1, 1); the raw residual grows
    with theta**(p-1) at extreme levels, where an absolute reading is
    meaningless.
    """
    level = Level.coerce(tau)
    right, left = _tail_moments(dist, float(theta), check_order(p), quad_spec)
    num = level.tau * right - (1.0 - level.tau) * left
    if not normalized:
        return num
    denom = level.tau * right + (1.0 - level.tau) * left
    if denom == 0.0:
        raise NumericError(f"degenerate scale equation at theta={theta!r}")
    return num / denom


def _check_moment_regime(dist, p):
    if not p < 1.0 + 1.0 / dist.gamma:
        raise DomainError(
            f"p={p} requires p < 1 + 1/gamma = {1.0 + 1.0 / dist.gamma!r} "
            "for a finite right-tail moment"
        )


def true_lp_quantile(dist: HeavyTailDistribution, p, tau,
                     quad_spec=DEFAULT_QUADRATURE):
    """Population Lp-quantile of ``dist`` at level tau by solving the
    scale equation; p = 1 returns the ordinary quantile directly."""
    p = check_order(p)
    level = Level.coerce(tau)
    if p == 1.0:
        return float(dist.quantile(level.tau))
    _check_moment_regime(dist, p)

    q_tau = float(dist.quantile(level.tau))

    def h(theta):
        return scale_equation_residual(dist, theta, p, level, quad_spec)

    # h decreases from +1 to -1. Anchor the bracket at the ordinary
    # quantile scaled by the small-eps ratio limit, which is tight near the
    # tail; geometric expansion below recovers any mid-range miss.
    anchor = q_tau * quantile_ratio_limit(dist.gamma, p, 1.0) if q_tau > 0.0 else q_tau
    if anchor > 0.0:
        lo, hi = 0.5 * anchor, 1.9 * anchor
    else:
        lo, hi = anchor - 1.0, anchor + 1.0
    f_lo = h(lo)
    span = hi - lo
    for _ in range(60):
        if f_lo > 0.0:
            break
        lo -= span
        span *= 2.0
        f_lo = h(lo)
    else:
        raise NumericError("could not bracket the Lp-quantile from below",
                           bracket=(lo, hi))
    f_hi = h(hi)
    span = hi - lo
    for _ in range(60):
        if f_hi < 0.0:
            break
        hi += span
        span *= 2.0
        f_hi = h(hi)
    else:
        raise NumericError("could not bracket the Lp-quantile from above",
                           bracket=(lo, hi))
    scale = max(1.0, abs(lo), abs(hi))
    return bracketed_root(h, lo, hi, xtol=1e-13 * scale, rtol=1e-14,
                          f_lo=f_lo, f_hi=f_hi)


def true_transition_coefficient(dist: HeavyTailDistribution, pair: OrderPair,
                                eps, tau0=0.0, quad_spec=DEFAULT_QUADRATURE):
    """The multiplier c in [1, (1 - tau0)/eps] with
    theta_p(1 - c*eps) = theta_q(1 - eps).

    theta_p is strictly decreasing in c, so the root is found by bracketed
    root finding; by the infimum convention, c = 1 is returned whenever
    theta_p(1 - eps) <= theta_q(1 - eps) already holds.
    """
    eps = check_prob(eps, "eps")
    tau0 = check_prob(tau0, "tau0", inclusive_low=True)
    if not eps < 1.0 - tau0:
        raise DomainError(f"need eps < 1 - tau0, got eps={eps}, tau0={tau0}")
    if pair.p == pair.q:
        return 1.0
    theta_q_target = true_lp_quantile(dist, pair.q, Level.from_eps(eps), quad_spec)

    def phi(c):
        return true_lp_quantile(dist, pair.p, 1.0 - c * eps, quad_spec) - theta_q_target

    c_max = (1.0 - tau0) / eps
    f_one = phi(1.0)
    if f_one <= 0.0:
        return 1.0
    # expand geometrically toward c_max, staying strictly inside so the
    # level 1 - c*eps never hits tau0 itself
    c_limit = c_max * (1.0 - 1e-12)
    lo, f_lo = 1.0, f_one
    hi = min(4.0, c_limit)
    while True:
        f_hi = phi(hi)
        if f_hi <= 0.0:
            break
        if hi >= c_limit:
            raise NumericError(
                "no level transition on [1, (1 - tau0)/eps]: "
                f"theta_p(1 - c*eps) = {f_hi + theta_q_target!r} still exceeds "
                f"theta_q(1 - eps) = {theta_q_target!r} at c = {hi!r}"
            )
        lo, f_lo = hi, f_hi
        hi = min(hi * 4.0, c_limit)
    return bracketed_root(phi, lo, hi, xtol=1e-10, rtol=1e-12,
                          f_lo=f_lo, f_hi=f_hi)


def true_dual_transition_coefficient(dist: HeavyTailDistribution, pair: OrderPair,
                                     eps, quad_spec=DEFAULT_QUADRATURE,
                                     d_limit=1e12):
    """The multiplier d in [1, inf) with theta_p(1 - eps) = theta_q(1 - eps/d).

    theta_q(1 - eps/d) increases in d; the bracket grows geometrically and
    gives up past ``d_limit``. d = 1 is returned when
    theta_q(1 - eps) >= theta_p(1 - eps) already holds.
    """
    eps = check_prob(eps, "eps")
    if pair.p == pair.q:
        return 1.0
    theta_p_target = true_lp_quantile(dist, pair.p, Level.from_eps(eps), quad_spec)

    def psi(d):
        return true_lp_quantile(dist, pair.q, 1.0 - eps / d, quad_spec) - theta_p_target

    f_one = psi(1.0)
    if f_one >= 0.0:
        return 1.0
    lo, f_lo = 1.0, f_one
    hi = min(4.0, d_limit)
    while True:
        f_hi = psi(hi)
        if f_hi >= 0.0:
            break
        if hi >= d_limit:
            raise NumericError(
                f"dual transition bracket expansion exceeded d = {d_limit:g}",
                bracket=(lo, hi),
            )
        lo, f_lo = hi, f_hi
        hi = min(hi * 4.0, d_limit)
    return bracketed_root(psi, lo, hi, xtol=1e-12, rtol=1e-10,
                          f_lo=f_lo, f_hi=f_hi)


def tau0_scan(dist: HeavyTailDistribution, pair: OrderPair, grid_step,
              quad_spec=DEFAULT_QUADRATURE):
    """Largest grid level tau with theta_p(tau) <= theta_q(tau), or 0.0.

    Scans tau = j * grid_step downward from the top of the grid. The
    comparison reuses the scale-equation residual of order q evaluated at
    theta_p(tau), whose sign decides the ordering without a second root
    solve. The degenerate p = q case returns the top grid point.
    """
    grid_step = float(grid_step)
    if not 0.0 < grid_step <= 0.1:
        raise DomainError(f"grid_step must lie in (0, 0.1], got {grid_step!r}")
    n_steps = int(np.ceil(1.0 / grid_step))
    top = n_steps - 1
    if pair.p == pair.q:
        # identical curves: equality holds everywhere, flag the convention
        return top * grid_step
    for j in range(top, 0, -1):
        tau = j * grid_step
        if tau >= 1.0:
            continue
        theta_p = true_lp_quantile(dist, pair.p, tau, quad_spec)
        # residual of order q at theta_p: >= 0 iff theta_p <= theta_q
        if scale_equation_residual(dist, theta_p, pair.q, tau, quad_spec) >= 0.0:
            return tau
    return 0.0
