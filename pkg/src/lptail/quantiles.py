"""Empirical Lp-quantile estimation at fixed and intermediate levels.

The Lp-quantile at level tau minimizes the asymmetric power loss
``tau * s_+**p + (1 - tau) * s_-**p`` over location candidates. For p > 1
the minimizer is the unique root of the monotone first-order condition,
located by bracketed root finding over the sample range; p = 1 reduces to
an order statistic.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .solvers import bracketed_root
from .validation import check_order, check_prob, check_sample

#: tolerance for snapping n*eps to an adjacent integer before flooring;
#: absorbs the dust that 1 - tau introduces (e.g. 10 * (1 - 0.9))
_INDEX_SNAP = 1e-9


@dataclass(frozen=True)
class Level:
    """A risk level tau in (0, 1) together with its tail probability eps."""

    tau: float
    eps: float

    def __post_init__(self):
        check_prob(self.tau, "tau")
        check_prob(self.eps, "eps")
        if abs((1.0 - self.tau) - self.eps) > 1e-12:
            raise DomainError(
                f"inconsistent level: tau={self.tau!r} but eps={self.eps!r}"
            )

    @classmethod
    def from_tau(cls, tau):
        tau = check_prob(tau, "tau")
        return cls(tau=tau, eps=1.0 - tau)

    @classmethod
    def from_eps(cls, eps):
        eps = check_prob(eps, "eps")
        return cls(tau=1.0 - eps, eps=eps)

    @classmethod
    def coerce(cls, level):
        """Accept a Level or a plain tau float."""
        if isinstance(level, cls):
            return level
        return cls.from_tau(level)


class Sample:
    """An immutable batch of observations with a cached stable sort order."""

    __slots__ = ("values", "_sorted_idx", "_sorted_values")

    def __init__(self, values):
        object.__setattr__(self, "values", check_sample(values))
        object.__setattr__(self, "_sorted_idx", None)
        object.__setattr__(self, "_sorted_values", None)

    def __setattr__(self, name, value):
        raise AttributeError("Sample is immutable")

    def __len__(self):
        return self.values.size

    @property
    def n(self):
        return self.values.size

    @property
    def sorted_idx(self):
        if self._sorted_idx is None:
            idx = np.argsort(self.values, kind="stable")
            idx.setflags(write=False)
            object.__setattr__(self, "_sorted_idx", idx)
        return self._sorted_idx

    @property
    def sorted_values(self):
        if self._sorted_values is None:
            sv = self.values[self.sorted_idx]
            sv.setflags(write=False)
            object.__setattr__(self, "_sorted_values", sv)
        return self._sorted_values

    @property
    def min(self):
        return float(self.sorted_values[0])

    @property
    def max(self):
        return float(self.sorted_values[-1])


def as_sample(x):
    return x if isinstance(x, Sample) else Sample(x)


def check_loss(s, p, tau):
    """Asymmetric power loss tau * s_+**p + (1 - tau) * s_-**p, vectorized in s."""
    p = check_order(p)
    level = Level.coerce(tau)
    s = np.asarray(s, dtype=float)
    pos = np.power(np.maximum(s, 0.0), p)
    neg = np.power(np.maximum(-s, 0.0), p)
    out = level.tau * pos + (1.0 - level.tau) * neg
    return out if out.ndim else float(out)


def _tail_index_count(n, eps):
    """floor(n * eps) with a snap for values within rounding dust of an integer."""
    t = n * eps
    j = int(np.floor(t))
    if t - j > 1.0 - _INDEX_SNAP:
        j += 1
    return j


def order_statistic_quantile(sample, eps):
    """The ascending order statistic with index n - floor(n * eps) (1-based)."""
    sample = as_sample(sample)
    eps = check_prob(eps, "eps")
    n = sample.n
    idx = n - _tail_index_count(n, eps)
    if not 1 <= idx <= n:
        raise DomainError(f"order statistic index {idx} outside [1, {n}]")
    return float(sample.sorted_values[idx - 1])


def empirical_lp_quantile(sample, p, tau, *, max_iter=200):
    """Empirical Lp-quantile of a sample at level tau.

    For p > 1, returns the root of

        g(u) = (1 - tau) * sum((u - X_i)_+**(p-1)) - tau * sum((X_i - u)_+**(p-1)),

    which is continuous and nondecreasing with a guaranteed sign change on
    [min(X), max(X)]; strict convexity of the empirical loss makes the root
    its minimizer. p = 1 delegates to the order statistic.
    """
    sample = as_sample(sample)
    p = check_order(p)
    level = Level.coerce(tau)
    if p == 1.0:
        return order_statistic_quantile(sample, level.eps)

    xs = sample.sorted_values
    lo, hi = sample.min, sample.max
    if lo == hi:
        return lo

    tau_v = level.tau
    pm1 = p - 1.0

    def g(u):
        cut = np.searchsorted(xs, u)
        below = np.sum(np.power(u - xs[:cut], pm1)) if cut else 0.0
        above = np.sum(np.power(xs[cut:] - u, pm1)) if cut < xs.size else 0.0
        return (1.0 - tau_v) * below - tau_v * above

    xtol = 1e-10 * (hi - lo)
    return bracketed_root(g, lo, hi, xtol=xtol, max_iter=max_iter)
