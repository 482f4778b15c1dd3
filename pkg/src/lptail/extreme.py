"""Extrapolative estimators of extreme Lp-quantiles.

All four share one structure: an intermediate-level anchor estimate times
a power-law extrapolation factor driven by a fitted tail index. They
differ in the anchor and in whether a transition coefficient enters:

* bm: anchor is the Lp-quantile itself, plain (eps'/eps)**(-gamma) factor;
* qua: anchor is the order-statistic quantile, with a Beta-ratio prefactor;
* extram 1/2/3: anchor is the Lq-quantile, with the transition coefficient
  estimated at the intermediate level (1), at the extreme level (2), or by
  the plug-in limit (3).
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateTailError, DomainError, RegimeError
from .quantiles import Level, as_sample, empirical_lp_quantile, order_statistic_quantile
from .special import beta
from .transition import (
    OrderPair,
    TransitionEstimate,
    extreme_transition,
    intermediate_transition,
    plugin_transition,
)
from .validation import check_order, check_prob

EXTREME_METHODS = ("bm", "qua", "extram1", "extram2", "extram3")


@dataclass(frozen=True)
class ExtremeEstimate:
    """An extreme Lp-quantile estimate with the ingredients that built it."""

    value: float
    method: str
    eps_n: float
    eps_prime: float
    gamma_hat: float
    transition: Optional[TransitionEstimate] = None

    def __post_init__(self):
        if self.method not in EXTREME_METHODS:
            raise DomainError(f"unknown method {self.method!r}; choose from {EXTREME_METHODS}")
        if self.eps_prime > self.eps_n:
            raise DomainError(
                f"need eps_prime <= eps_n, got {self.eps_prime} > {self.eps_n}"
            )
        if not np.isfinite(self.value):
            raise DomainError(f"estimate must be finite, got {self.value!r}")


def _check_levels(eps_n, eps_prime):
    eps_n = check_prob(eps_n, "eps_n")
    eps_prime = check_prob(eps_prime, "eps_prime")
    # equality means an extrapolation factor of exactly 1
    if eps_prime > eps_n:
        raise DomainError(f"need eps_prime <= eps_n, got {eps_prime} > {eps_n}")
    return eps_n, eps_prime


def _require_positive_anchor(anchor, what):
    if anchor <= 0.0:
        raise DegenerateTailError(
            f"{what} is nonpositive ({anchor!r}); power extrapolation undefined"
        )
    return anchor


def bm_estimator(sample, p, eps_n, eps_prime, gamma_hat) -> ExtremeEstimate:
    """Standard extrapolation of the intermediate Lp-quantile."""
    p = check_order(p, "p")
    eps_n, eps_prime = _check_levels(eps_n, eps_prime)
    sample = as_sample(sample)
    anchor = empirical_lp_quantile(sample, p, Level.from_eps(eps_n))
    _require_positive_anchor(anchor, "intermediate Lp-quantile estimate")
    value = (eps_prime / eps_n) ** (-float(gamma_hat)) * anchor
    return ExtremeEstimate(value=value, method="bm", eps_n=eps_n,
                           eps_prime=eps_prime, gamma_hat=float(gamma_hat))


def qua_estimator(sample, p, eps_n, eps_prime, gamma_hat) -> ExtremeEstimate:
    """Quantile-anchored extrapolation with a Beta-ratio prefactor.

    Needs gamma_hat < 1/(p - 1) so the Beta argument stays positive; for
    p = 1 the prefactor collapses to 1 and this is plain quantile
    extrapolation.
    """
    p = check_order(p, "p")
    eps_n, eps_prime = _check_levels(eps_n, eps_prime)
    gamma_hat = float(gamma_hat)
    if gamma_hat <= 0.0:
        raise RegimeError(f"gamma_hat must be positive, got {gamma_hat!r}")
    if 1.0 / gamma_hat - p + 1.0 <= 0.0:
        raise RegimeError(
            f"gamma_hat={gamma_hat!r} >= 1/(p-1) breaks the Beta prefactor for p={p}"
        )
    sample = as_sample(sample)
    anchor = order_statistic_quantile(sample, eps_n)
    _require_positive_anchor(anchor, "order-statistic anchor")
    prefactor = (gamma_hat / beta(p, 1.0 / gamma_hat - p + 1.0)) ** (-gamma_hat)
    value = prefactor * (eps_prime / eps_n) ** (-gamma_hat) * anchor
    return ExtremeEstimate(value=value, method="qua", eps_n=eps_n,
                           eps_prime=eps_prime, gamma_hat=gamma_hat)


def extram(sample, pair: OrderPair, eps_n, eps_prime, gamma_hat,
           variant) -> ExtremeEstimate:
    """Transition-based extrapolation of the extreme Lp-quantile.

    value = (c * eps_n / eps_prime)**gamma_hat * theta_q_hat(1 - eps_n),
    with the coefficient c from the intermediate estimator (variant 1),
    the extreme estimator (variant 2), or the plug-in limit (variant 3).
    Regime and degenerate-tail failures from the coefficient propagate.
    """
    if variant not in (1, 2, 3):
        raise DomainError(f"variant must be 1, 2, or 3, got {variant!r}")
    eps_n, eps_prime = _check_levels(eps_n, eps_prime)
    gamma_hat = float(gamma_hat)
    sample = as_sample(sample)
    if variant == 1:
        coeff = intermediate_transition(sample, pair, eps_n)
    elif variant == 2:
        coeff = extreme_transition(sample, pair, eps_n, eps_prime, gamma_hat)
    else:
        coeff = plugin_transition(gamma_hat, pair)
    anchor = empirical_lp_quantile(sample, pair.q, Level.from_eps(eps_n))
    _require_positive_anchor(anchor, "intermediate Lq-quantile estimate")
    value = (coeff.value * eps_n / eps_prime) ** gamma_hat * anchor
    return ExtremeEstimate(value=value, method=f"extram{variant}", eps_n=eps_n,
                           eps_prime=eps_prime, gamma_hat=gamma_hat,
                           transition=coeff)
