"""Tail level-transition coefficients between Lp- and Lq-quantiles.

For orders p > q >= 1 and a tail probability eps, the transition
coefficient is the multiplier c with

    theta_p(1 - c * eps) = theta_q(1 - eps),

i.e. the factor by which the tail level of the higher-order risk measure
must move to match the lower-order one. Three estimators are provided:

* plug-in: the small-eps limit, a ratio of Beta functions evaluated at a
  fitted tail index (level-free);
* intermediate: a ratio of empirical moment sums around the empirical
  Lq-quantile at an intermediate level;
* extreme: the same moment-sum ratio around an extrapolated Lq-quantile
  at an extreme level.

All three are exactly invariant under location-scale maps of the data.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .errors import DegenerateTailError, DomainError, RegimeError
from .quantiles import Level, as_sample, empirical_lp_quantile
from .special import beta
from .validation import check_order, check_positive, check_prob


@dataclass(frozen=True)
class OrderPair:
    """A validated pair of loss-power orders 1 <= q < p.

    ``gamma_context`` optionally records the tail index the pair was
    validated against (the true index for oracle work, a Hill estimate
    for data work). When provided, the estimation regime

        1 - q < p - 1/(2 * gamma) < 1

    is enforced, which also keeps every Beta argument used downstream
    positive. Constructed without a context, only the ordering constraint
    is checked; per-use regime checks then live with the consumers, which
    lets the oracles cover boundary cases like p - 1/gamma = 1 - q where
    the coefficient degenerates to 1.
    """

    p: float
    q: float
    gamma_context: Optional[float] = None

    def __post_init__(self):
        p = check_order(self.p, "p")
        q = check_order(self.q, "q")
        # q == p is tolerated as the degenerate identity transition
        if q > p:
            raise DomainError(f"orders must satisfy 1 <= q <= p, got p={p}, q={q}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        if self.gamma_context is not None:
            gamma = check_positive(self.gamma_context, "gamma_context")
            object.__setattr__(self, "gamma_context", gamma)
            self.check_estimation_regime(gamma)

    def check_estimation_regime(self, gamma):
        """Enforce 1 - q < p - 1/(2*gamma) < 1, raising RegimeError outside it."""
        gamma = check_positive(gamma, "gamma")
        delta_half = self.p - 1.0 / (2.0 * gamma)
        if not (1.0 - self.q < delta_half < 1.0):
            raise RegimeError(
                f"pair (p={self.p}, q={self.q}) outside the estimation regime "
                f"1 - q < p - 1/(2*gamma) < 1 at gamma={gamma!r}"
            )
        return self

    def check_limit_regime(self, gamma):
        """Beta arguments must be positive: p < 1 + 1/gamma."""
        gamma = check_positive(gamma, "gamma")
        if not self.p < 1.0 + 1.0 / gamma:
            raise RegimeError(
                f"p={self.p} must be below 1 + 1/gamma = {1.0 + 1.0 / gamma!r} "
                f"for the Beta-ratio limit (gamma={gamma!r})"
            )
        return self


class TransitionMethod(Enum):
    PLUGIN = "plugin"
    INTERMEDIATE = "intermediate"
    EXTREME = "extreme"


@dataclass(frozen=True)
class TransitionEstimate:
    """A transition-coefficient value tagged with its method and level."""

    value: float
    method: TransitionMethod
    pair: OrderPair
    eps_used: Optional[float] = None

    def __post_init__(self):
        if not (np.isfinite(self.value) and self.value > 0.0):
            raise DomainError(f"transition coefficient must be finite and positive, got {self.value!r}")


def _beta_pair(gamma, p, q):
    gamma = check_positive(gamma, "gamma")
    p = check_order(p, "p")
    q = check_order(q, "q")
    if q > p:
        raise DomainError(f"need q <= p, got p={p}, q={q}")
    if not p < 1.0 + 1.0 / gamma:
        raise DomainError(
            f"need q <= p < 1 + 1/gamma; got p={p} with 1 + 1/gamma = {1.0 + 1.0 / gamma!r}"
        )
    inv = 1.0 / gamma
    return beta(p, inv - p + 1.0), beta(q, inv - q + 1.0)


def quantile_ratio_limit(gamma, p, q):
    """Small-eps limit of theta_p(1-eps) / theta_q(1-eps).

    Equals [B(p, 1/gamma - p + 1) / B(q, 1/gamma - q + 1)]**gamma; it is 1
    exactly on the boundary p - 1/gamma = 1 - q.
    """
    bp, bq = _beta_pair(gamma, p, q)
    return float((bp / bq) ** gamma)


def transition_limit(gamma, p, q):
    """Small-eps limit of the transition coefficient (and of its dual).

    The ratio B(p, 1/gamma - p + 1) / B(q, 1/gamma - q + 1), i.e. the
    quantile-ratio limit raised to 1/gamma.
    """
    bp, bq = _beta_pair(gamma, p, q)
    return float(bp / bq)


def plugin_transition(gamma_hat, pair: OrderPair) -> TransitionEstimate:
    """Plug a fitted tail index into the small-eps limit. Level-free."""
    pair.check_limit_regime(gamma_hat)
    value = transition_limit(gamma_hat, pair.p, pair.q)
    return TransitionEstimate(value=value, method=TransitionMethod.PLUGIN, pair=pair)


def _power_sum(values, exponent):
    # fsum keeps the wide dynamic range of heavy-tailed powers from
    # washing out the small terms
    if exponent == 0.0:
        return float(values.size)
    return math.fsum(np.power(values, exponent))


def empirical_transition(sample, pair: OrderPair, theta_q_hat,
                         method=TransitionMethod.INTERMEDIATE,
                         eps_used=None) -> TransitionEstimate:
    """Moment-sum ratio around a given Lq-quantile value ``theta_q_hat``:

        [ sum (X - t)_+**(p-1) / sum (X - t)_+**(q-1) ]
      * [ sum |X - t|**(q-1)   / sum |X - t|**(p-1)   ]

    The 1/n factors cancel. For q = 1 the positive-part zero power counts
    strict exceedances while the absolute zero power counts every
    observation, which is what reduces the ratio to the empirical level
    transformation of the quantile.
    """
    sample = as_sample(sample)
    theta = float(theta_q_hat)
    if not np.isfinite(theta):
        raise DomainError(f"theta_q_hat must be finite, got {theta_q_hat!r}")
    p, q = pair.p, pair.q
    xs = sample.sorted_values
    cut = np.searchsorted(xs, theta, side="right")
    excess = xs[cut:] - theta
    if excess.size == 0:
        raise DegenerateTailError(
            f"no observations above theta_q_hat={theta!r}; exceedance sums vanish"
        )
    abs_dev = np.abs(xs - theta)
    num_p = _power_sum(excess, p - 1.0)
    num_q = _power_sum(excess, q - 1.0)
    abs_q = _power_sum(abs_dev, q - 1.0)
    abs_p = _power_sum(abs_dev, p - 1.0)
    value = (num_p / num_q) * (abs_q / abs_p)
    return TransitionEstimate(value=value, method=method, pair=pair, eps_used=eps_used)


def intermediate_transition(sample, pair: OrderPair, eps_n) -> TransitionEstimate:
    """Empirical transition coefficient at an intermediate tail level."""
    eps_n = check_prob(eps_n, "eps_n")
    sample = as_sample(sample)
    theta = empirical_lp_quantile(sample, pair.q, Level.from_eps(eps_n))
    return empirical_transition(sample, pair, theta,
                                method=TransitionMethod.INTERMEDIATE, eps_used=eps_n)


def extreme_transition(sample, pair: OrderPair, eps_n, eps_prime,
                       gamma_hat) -> TransitionEstimate:
    """Empirical transition coefficient at an extreme tail level.

    The reference point is the standard extrapolation of the intermediate
    Lq-quantile: (eps_prime / eps_n)**(-gamma_hat) * theta_q_hat(1 - eps_n).
    The extrapolated point can exceed the sample maximum, in which case a
    DegenerateTailError propagates and the caller decides how to record it.
    """
    eps_n = check_prob(eps_n, "eps_n")
    eps_prime = check_prob(eps_prime, "eps_prime")
    # equality degenerates to the intermediate estimator (factor 1)
    if eps_prime > eps_n:
        raise DomainError(f"need eps_prime <= eps_n, got {eps_prime} > {eps_n}")
    gamma_hat = float(gamma_hat)
    sample = as_sample(sample)
    theta_n = empirical_lp_quantile(sample, pair.q, Level.from_eps(eps_n))
    theta = (eps_prime / eps_n) ** (-gamma_hat) * theta_n
    return empirical_transition(sample, pair, theta,
                                method=TransitionMethod.EXTREME, eps_used=eps_prime)
