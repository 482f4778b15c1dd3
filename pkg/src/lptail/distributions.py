"""Reference heavy-tailed distributions for sampling, oracles, and tests.

Four families, each exposing pdf/cdf/survival/quantile/sample:

* Pareto, F(x) = 1 - x**(-1/gamma) on x > 1
* Frechet, F(x) = exp(-x**(-1/gamma)) on x > 0
* Student-t with degrees of freedom 1/gamma
* the Koenker-Bassett distribution, a fixed gamma = 1/2 family whose
  asymmetric-square-loss minimizer coincides with its quantile at
  every level

Sampling is inverse-transform only, driven by counter-based Philox
streams, so draws are reproducible bit-for-bit for a given
(seed, stream_id) on a given platform. The scalar branches of the
closed-form methods use plain ``math`` calls; adaptive quadrature in the
oracles hits them hundreds of times per integral.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .special import log_gamma, reg_inc_beta
from .validation import check_count, check_positive


@dataclass(frozen=True)
class RngStream:
    """A reproducible random stream: (seed, stream_id) -> Philox keystream.

    Distinct stream ids under the same seed give statistically independent
    streams; replications of a Monte Carlo experiment each own one stream.
    """

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ("seed", "stream_id"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or v < 0 or v > 2**64 - 1:
                raise DomainError(f"{name} must be an unsigned 64-bit integer, got {v!r}")

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(key=[int(self.seed), int(self.stream_id)]))

    def uniforms(self, n: int) -> np.ndarray:
        """n uniforms on the open interval (0, 1)."""
        u = self.generator().random(check_count(n, "n"))
        # random() can return exactly 0.0; nudge into the open interval so
        # quantile transforms stay finite
        return np.where(u == 0.0, 0.5**53, u)


def _bad_tau(t):
    return not (0.0 < t < 1.0) or t != t


class HeavyTailDistribution:
    """Base class; subclasses fill in the closed forms.

    ``gamma`` is the upper-tail extreme value index. ``gamma_left`` is the
    lower-tail index, or None when the support is bounded below; the
    oracles use it to treat the left-endpoint quadrature singularity.
    """

    kind = "base"
    gamma_left = None

    def __init__(self, gamma):
        self.gamma = check_positive(gamma, "gamma")

    def __repr__(self):
        return f"{type(self).__name__}(gamma={self.gamma!r})"

    def pdf(self, x):
        raise NotImplementedError

    def cdf(self, x):
        raise NotImplementedError

    def survival(self, x):
        if isinstance(x, np.ndarray):
            return 1.0 - self.cdf(x)
        return 1.0 - self.cdf(float(x))

    def quantile(self, tau):
        raise NotImplementedError

    def tail_quantile(self, s):
        """Scalar upper quantile parameterized by survival: x with
        survival(x) = s. Overridden where 1 - s would lose precision."""
        s = float(s)
        if _bad_tau(s):
            raise DomainError("survival level s must lie in (0, 1)")
        return self.quantile(min(1.0 - s, 1.0 - 1e-16))

    def sample(self, n, rng: RngStream):
        """n independent draws by applying the quantile to Philox uniforms."""
        return self.quantile(rng.uniforms(n))

    def _check_tau_array(self, t):
        if t.size and (np.any(t <= 0.0) or np.any(t >= 1.0) or not np.all(np.isfinite(t))):
            raise DomainError("tau must lie in the open interval (0, 1)")
        return t

    def _tau_error(self):
        raise DomainError("tau must lie in the open interval (0, 1)")


class Pareto(HeavyTailDistribution):
    kind = "pareto"

    def pdf(self, x):
        if isinstance(x, np.ndarray):
            inv = 1.0 / self.gamma
            return np.where(x > 1.0, inv * np.power(np.maximum(x, 1.0), -inv - 1.0), 0.0)
        x = float(x)
        inv = 1.0 / self.gamma
        return inv * x ** (-inv - 1.0) if x > 1.0 else 0.0

    def cdf(self, x):
        if isinstance(x, np.ndarray):
            return np.where(x > 1.0, 1.0 - np.power(np.maximum(x, 1.0), -1.0 / self.gamma), 0.0)
        x = float(x)
        return 1.0 - x ** (-1.0 / self.gamma) if x > 1.0 else 0.0

    def quantile(self, tau):
        if isinstance(tau, np.ndarray):
            t = self._check_tau_array(tau)
            return np.power(1.0 - t, -self.gamma)
        t = float(tau)
        if _bad_tau(t):
            self._tau_error()
        return (1.0 - t) ** (-self.gamma)

    def tail_quantile(self, s):
        s = float(s)
        if _bad_tau(s):
            raise DomainError("survival level s must lie in (0, 1)")
        return s ** (-self.gamma)


class Frechet(HeavyTailDistribution):
    kind = "frechet"

    def pdf(self, x):
        if isinstance(x, np.ndarray):
            inv = 1.0 / self.gamma
            xs = np.maximum(x, np.finfo(float).tiny)
            with np.errstate(over="ignore"):  # exp(-huge) underflows to the right answer
                return np.where(x > 0.0,
                                inv * np.power(xs, -inv - 1.0) * np.exp(-np.power(xs, -inv)),
                                0.0)
        x = float(x)
        if x <= 0.0:
            return 0.0
        inv = 1.0 / self.gamma
        arg = x ** -inv
        return 0.0 if arg > 700.0 else inv * x ** (-inv - 1.0) * math.exp(-arg)

    def cdf(self, x):
        if isinstance(x, np.ndarray):
            xs = np.maximum(x, np.finfo(float).tiny)
            with np.errstate(over="ignore"):
                return np.where(x > 0.0, np.exp(-np.power(xs, -1.0 / self.gamma)), 0.0)
        x = float(x)
        if x <= 0.0:
            return 0.0
        arg = x ** (-1.0 / self.gamma)
        return 0.0 if arg > 700.0 else math.exp(-arg)

    def quantile(self, tau):
        if isinstance(tau, np.ndarray):
            t = self._check_tau_array(tau)
            return np.power(-np.log(t), -self.gamma)
        t = float(tau)
        if _bad_tau(t):
            self._tau_error()
        return (-math.log(t)) ** (-self.gamma)

    def tail_quantile(self, s):
        s = float(s)
        if _bad_tau(s):
            raise DomainError("survival level s must lie in (0, 1)")
        # -log(1 - s) via log1p keeps precision for tiny s
        return (-math.log1p(-s)) ** (-self.gamma)


class StudentT(HeavyTailDistribution):
    """Student-t with degrees of freedom nu = 1/gamma.

    The cdf routes through the regularized incomplete Beta; the quantile
    inverts the cdf by vectorized bisection with a Newton polish, which
    keeps the package free of an inverse-incomplete-Beta routine.
    """

    kind = "student_t"

    def __init__(self, gamma):
        super().__init__(gamma)
        self.gamma_left = self.gamma  # symmetric tails
        self.nu = 1.0 / self.gamma
        self._log_norm = (log_gamma((self.nu + 1.0) / 2.0)
                          - log_gamma(self.nu / 2.0)
                          - 0.5 * math.log(self.nu * math.pi))

    def pdf(self, x):
        if isinstance(x, np.ndarray):
            return np.exp(self._log_norm - 0.5 * (self.nu + 1.0) * np.log1p(x * x / self.nu))
        x = float(x)
        return math.exp(self._log_norm - 0.5 * (self.nu + 1.0) * math.log1p(x * x / self.nu))

    def cdf(self, x):
        scalar = not isinstance(x, np.ndarray)
        arr = np.atleast_1d(np.asarray(x, dtype=float))
        z = self.nu / (self.nu + arr * arr)
        half_tail = 0.5 * reg_inc_beta(z, self.nu / 2.0, 0.5)
        out = np.where(arr >= 0.0, 1.0 - half_tail, half_tail)
        return float(out[0]) if scalar else out

    def quantile(self, tau):
        scalar = not isinstance(tau, np.ndarray)
        t = np.atleast_1d(np.asarray(tau, dtype=float))
        self._check_tau_array(t)
        # symmetry: solve on the upper half only
        upper = np.where(t >= 0.5, t, 1.0 - t)
        x = self._upper_quantile(upper)
        out = np.where(t >= 0.5, x, -x)
        return float(out[0]) if scalar else out

    def _upper_quantile(self, tau):
        # bracket [0, hi] by doubling, then bisection, then Newton polish
        hi = np.ones_like(tau)
        for _ in range(100):
            need = self.cdf(hi) < tau
            if not np.any(need):
                break
            hi = np.where(need, 2.0 * hi, hi)
        lo = np.zeros_like(tau)
        for _ in range(40):
            mid = 0.5 * (lo + hi)
            below = self.cdf(mid) < tau
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        x = 0.5 * (lo + hi)
        for _ in range(4):
            step = (self.cdf(x) - tau) / np.maximum(self.pdf(x), np.finfo(float).tiny)
            x = np.clip(x - step, lo, hi)
        return x


class KoenkerBassett(HeavyTailDistribution):
    """The distribution whose asymmetric-square-loss minimizer equals its
    quantile at every level: F(x) = (1 + x / sqrt(4 + x^2)) / 2, gamma = 1/2.
    """

    kind = "koenker_bassett"
    gamma_left = 0.5  # symmetric

    def __init__(self, gamma=0.5):
        # the family has no free parameter; the tail index is pinned at 1/2
        super().__init__(0.5)

    def pdf(self, x):
        if isinstance(x, np.ndarray):
            return 2.0 * np.power(4.0 + x * x, -1.5)
        x = float(x)
        return 2.0 * (4.0 + x * x) ** -1.5

    def cdf(self, x):
        if isinstance(x, np.ndarray):
            return 0.5 * (1.0 + x / np.sqrt(4.0 + x * x))
        x = float(x)
        return 0.5 * (1.0 + x / math.sqrt(4.0 + x * x))

    def quantile(self, tau):
        if isinstance(tau, np.ndarray):
            t = self._check_tau_array(tau)
            eps = 1.0 - t
            return (1.0 - 2.0 * eps) / np.sqrt(eps * (1.0 - eps))
        t = float(tau)
        if _bad_tau(t):
            self._tau_error()
        eps = 1.0 - t
        return (1.0 - 2.0 * eps) / math.sqrt(eps * (1.0 - eps))

    def tail_quantile(self, s):
        s = float(s)
        if _bad_tau(s):
            raise DomainError("survival level s must lie in (0, 1)")
        return (1.0 - 2.0 * s) / math.sqrt(s * (1.0 - s))


_KINDS = {
    "pareto": Pareto,
    "frechet": Frechet,
    "student_t": StudentT,
    "koenker_bassett": KoenkerBassett,
}


def make_distribution(kind, gamma=None):
    """Construct a distribution by name; gamma is ignored for koenker_bassett."""
    key = str(kind).lower().replace("-", "_")
    if key not in _KINDS:
        raise DomainError(f"unknown distribution kind {kind!r}; choose from {sorted(_KINDS)}")
    if key == "koenker_bassett":
        return KoenkerBassett()
    if gamma is None:
        raise DomainError(f"distribution {kind!r} requires gamma")
    return _KINDS[key](gamma)
