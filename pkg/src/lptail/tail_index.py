"""Hill estimation of the extreme value index and Hill-plot series.

No automatic choice of the order-statistic count k is provided: k is a
tuning input, picked from the first stable stretch of a Hill plot and
then carried in configuration.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quantiles import as_sample
from .validation import check_count

#: 95th percentile of the standard normal, fixed for the 90% pointwise band
Z_90_BAND = 1.6449


@dataclass(frozen=True)
class HillSeries:
    """Hill estimates over a range of k with a 90% pointwise normal band."""

    k_values: np.ndarray
    gamma_hat: np.ndarray
    ci_low: np.ndarray
    ci_high: np.ndarray

    def __post_init__(self):
        lens = {len(self.k_values), len(self.gamma_hat), len(self.ci_low), len(self.ci_high)}
        if len(lens) != 1:
            raise DomainError("HillSeries fields must have equal lengths")


def hill(sample, k):
    """Hill estimator from the top k + 1 order statistics.

    gamma_hat = mean(log X_{n-i,n}, i = 0..k-1) - log X_{n-k,n}, which is
    nonnegative and exactly scale invariant. All of the top k + 1 order
    statistics must be positive.
    """
    sample = as_sample(sample)
    n = sample.n
    k = check_count(k, "k", minimum=2)
    if k > n - 1:
        raise DomainError(f"k must satisfy 2 <= k <= n - 1 = {n - 1}, got {k}")
    top = sample.sorted_values[n - k - 1:]
    if top[0] <= 0.0:
        raise DomainError(
            "Hill estimator needs the top k + 1 order statistics positive "
            f"(X_(n-k) = {top[0]!r})"
        )
    logs = np.log(top)
    # mathematically nonnegative (sorted order); clamp off -1 ulp noise
    return max(0.0, float(np.mean(logs[1:]) - logs[0]))


def hill_series(sample, k_min, k_max):
    """Hill estimates for every k in [k_min, k_max] with 90% bands.

    The band is gamma_hat * (1 +/- z / sqrt(k)) from the asymptotic normal
    variance gamma**2 / k.
    """
    sample = as_sample(sample)
    n = sample.n
    k_min = check_count(k_min, "k_min", minimum=2)
    k_max = check_count(k_max, "k_max", minimum=2)
    if not (2 <= k_min < k_max <= n - 1):
        raise DomainError(
            f"need 2 <= k_min < k_max <= n - 1; got k_min={k_min}, k_max={k_max}, n={n}"
        )
    ks = np.arange(k_min, k_max + 1)
    gammas = np.array([hill(sample, int(k)) for k in ks], dtype=float)
    half = Z_90_BAND / np.sqrt(ks)
    return HillSeries(
        k_values=ks,
        gamma_hat=gammas,
        ci_low=gammas * (1.0 - half),
        ci_high=gammas * (1.0 + half),
    )
