"""Scikit-learn style estimator classes.

Thin fit-shaped wrappers over the functional core, so the estimators
compose with the wider ecosystem (``get_params``/``set_params``,
``clone``, pipelines that pass 1-d samples or single-column matrices).
Fitted results land in trailing-underscore attributes.
"""

from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .errors import DomainError
from .extreme import EXTREME_METHODS, bm_estimator, extram, qua_estimator
from .quantiles import Level, Sample, empirical_lp_quantile
from .tail_index import hill
from .transition import (
    OrderPair,
    extreme_transition,
    intermediate_transition,
    plugin_transition,
)


class _SampleFitMixin:
    def _fit_sample(self, X):
        sample = Sample(X)
        self.n_samples_ = sample.n
        return sample

    def _check_fitted(self, attr):
        if not hasattr(self, attr):
            raise NotFittedError(f"{type(self).__name__} is not fitted yet; call fit first")


class LpQuantile(BaseEstimator, _SampleFitMixin):
    """Empirical Lp-quantile of a univariate sample.

    Parameters
    ----------
    p : float, default 2.0
        Loss-power order, p >= 1 (p = 1 gives the ordinary quantile,
        p = 2 the expectile).
    tau : float, default 0.9
        Risk level in (0, 1).

    Attributes
    ----------
    quantile_ : float
    """

    def __init__(self, p=2.0, tau=0.9):
        self.p = p
        self.tau = tau

    def fit(self, X, y=None):
        sample = self._fit_sample(X)
        self.quantile_ = empirical_lp_quantile(sample, self.p, Level.from_tau(self.tau))
        return self


class HillTailIndex(BaseEstimator, _SampleFitMixin):
    """Hill estimator of the extreme value index from the top k + 1
    order statistics.

    Attributes
    ----------
    gamma_ : float
    """

    def __init__(self, k=80):
        self.k = k

    def fit(self, X, y=None):
        sample = self._fit_sample(X)
        self.gamma_ = hill(sample, self.k)
        return self


class TransitionCoefficient(BaseEstimator, _SampleFitMixin):
    """Level-transition coefficient between the Lp- and Lq-quantile tails.

    Parameters
    ----------
    p, q : float
        Orders with 1 <= q < p.
    k : int, default 80
        Order-statistic count for the Hill estimate; also sets the
        intermediate level eps_n = k / n.
    method : {'plugin', 'intermediate', 'extreme'}
    eps_prime : float, default 0.005
        Extreme tail level, used by the 'extreme' method.

    Attributes
    ----------
    value_ : float
    gamma_ : float
    eps_used_ : float or None
    """

    def __init__(self, p=2.0, q=1.0, k=80, method="intermediate", eps_prime=0.005):
        self.p = p
        self.q = q
        self.k = k
        self.method = method
        self.eps_prime = eps_prime

    def fit(self, X, y=None):
        sample = self._fit_sample(X)
        pair = OrderPair(self.p, self.q)
        self.gamma_ = hill(sample, self.k)
        eps_n = self.k / sample.n
        if self.method == "plugin":
            est = plugin_transition(self.gamma_, pair)
        elif self.method == "intermediate":
            est = intermediate_transition(sample, pair, eps_n)
        elif self.method == "extreme":
            est = extreme_transition(sample, pair, eps_n, self.eps_prime, self.gamma_)
        else:
            raise DomainError(
                f"method must be 'plugin', 'intermediate' or 'extreme', got {self.method!r}"
            )
        self.value_ = est.value
        self.eps_used_ = est.eps_used
        return self


class ExtremeLpQuantile(BaseEstimator, _SampleFitMixin):
    """Extrapolated Lp-quantile at an extreme tail level.

    Parameters
    ----------
    p : float
        Target order.
    q : float or None
        Anchor order for the transition-based methods; bm and qua ignore it.
    k : int, default 80
    eps_prime : float, default 0.005
    method : {'bm', 'qua', 'extram1', 'extram2', 'extram3'}

    Attributes
    ----------
    quantile_ : float
    gamma_ : float
    transition_ : TransitionEstimate or None
    """

    def __init__(self, p=2.0, q=None, k=80, eps_prime=0.005, method="extram3"):
        self.p = p
        self.q = q
        self.k = k
        self.eps_prime = eps_prime
        self.method = method

    def fit(self, X, y=None):
        if self.method not in EXTREME_METHODS:
            raise DomainError(f"method must be one of {EXTREME_METHODS}, got {self.method!r}")
        sample = self._fit_sample(X)
        self.gamma_ = hill(sample, self.k)
        eps_n = self.k / sample.n
        if self.method == "bm":
            est = bm_estimator(sample, self.p, eps_n, self.eps_prime, self.gamma_)
        elif self.method == "qua":
            est = qua_estimator(sample, self.p, eps_n, self.eps_prime, self.gamma_)
        else:
            if self.q is None:
                raise DomainError(f"method {self.method!r} needs the anchor order q")
            variant = int(self.method[-1])
            pair = OrderPair(self.p, self.q)
            est = extram(sample, pair, eps_n, self.eps_prime, self.gamma_, variant)
        self.quantile_ = est.value
        self.transition_ = est.transition
        return self
