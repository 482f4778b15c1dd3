"""Scalar special functions: log-gamma, Beta, regularized incomplete Beta.

Everything downstream is a ratio of Beta functions, so the Beta function is
evaluated in log space to keep small tail indices from overflowing.
All routines accept scalars or numpy arrays and are pure.
"""

import numpy as np

from .errors import DomainError, NumericError

# Lanczos approximation, g = 7, 9 terms. Coefficients carry full double
# precision; relative accuracy is ~1e-14 over the positive axis.
_LANCZOS_G = 7.0
_LANCZOS_COEF = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])

_HALF_LOG_TWO_PI = 0.91893853320467274178
_LOG_PI = 1.1447298858494002


def _log_gamma_lanczos(x):
    # valid for x >= 0.5
    z = x - 1.0
    series = np.full_like(z, _LANCZOS_COEF[0])
    for i in range(1, len(_LANCZOS_COEF)):
        series = series + _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * np.log(t) - t + np.log(series)


def log_gamma(x):
    """Natural log of the Gamma function for x > 0.

    Uses the Lanczos series for x >= 0.5 and the reflection formula below,
    which keeps relative accuracy near 1e-14 down to very small arguments.
    """
    arr = np.asarray(x, dtype=float)
    if arr.size and (not np.all(np.isfinite(arr)) or np.any(arr <= 0.0)):
        raise DomainError("log_gamma requires finite x > 0")
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.empty_like(arr)
    small = arr < 0.5
    if np.any(small):
        xs = arr[small]
        # Gamma(x) Gamma(1-x) = pi / sin(pi x)
        out[small] = _LOG_PI - np.log(np.sin(np.pi * xs)) - _log_gamma_lanczos(1.0 - xs)
    if np.any(~small):
        out[~small] = _log_gamma_lanczos(arr[~small])
    return float(out[0]) if scalar else out


def beta(a, b):
    """Euler Beta function B(a, b) for a, b > 0, evaluated in log space."""
    a_arr = np.asarray(a, dtype=float)
    b_arr = np.asarray(b, dtype=float)
    for name, v in (("a", a_arr), ("b", b_arr)):
        if v.size and (not np.all(np.isfinite(v)) or np.any(v <= 0.0)):
            raise DomainError(f"beta requires finite {name} > 0")
    return np.exp(log_gamma(a) + log_gamma(b) - log_gamma(a_arr + b_arr))


_BETACF_MAX_ITER = 400
_BETACF_EPS = 1e-15  # just above machine epsilon; 1e-16 can never be met
_BETACF_FPMIN = 1e-300


def _betacf(a, b, x):
    """Continued fraction for the incomplete Beta, modified Lentz method.

    Vectorized over x (and broadcast a, b); iterates until every lane
    converges. Only called on the fast-converging side of the symmetry
    switch, where ~O(sqrt(max(a,b))) iterations suffice.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    x = np.asarray(x, dtype=float)
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = np.ones_like(x)
    d = 1.0 - qab * x / qap
    d = np.where(np.abs(d) < _BETACF_FPMIN, _BETACF_FPMIN, d)
    d = 1.0 / d
    h = d.copy()
    for m in range(1, _BETACF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = np.where(np.abs(d) < _BETACF_FPMIN, _BETACF_FPMIN, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _BETACF_FPMIN, _BETACF_FPMIN, c)
        d = 1.0 / d
        h = h * d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = np.where(np.abs(d) < _BETACF_FPMIN, _BETACF_FPMIN, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _BETACF_FPMIN, _BETACF_FPMIN, c)
        d = 1.0 / d
        delta = d * c
        h = h * delta
        if np.all(np.abs(delta - 1.0) < _BETACF_EPS):
            return h
    raise NumericError(
        f"incomplete beta continued fraction failed after {_BETACF_MAX_ITER} iterations"
    )


def reg_inc_beta(x, a, b):
    """Regularized incomplete Beta function I_x(a, b) on 0 <= x <= 1.

    The continued fraction is applied on whichever side of
    x = (a+1)/(a+b+2) converges quickly, using I_x(a,b) = 1 - I_{1-x}(b,a)
    on the other side. Absolute accuracy is ~1e-14.
    """
    x_arr = np.asarray(x, dtype=float)
    if x_arr.size and (np.any(x_arr < 0.0) or np.any(x_arr > 1.0) or not np.all(np.isfinite(x_arr))):
        raise DomainError("reg_inc_beta requires 0 <= x <= 1")
    a = float(a)
    b = float(b)
    if not (np.isfinite(a) and np.isfinite(b) and a > 0.0 and b > 0.0):
        raise DomainError("reg_inc_beta requires a > 0 and b > 0")
    scalar = x_arr.ndim == 0
    x_arr = np.atleast_1d(x_arr).astype(float)
    out = np.empty_like(x_arr)
    log_beta_ab = log_gamma(a) + log_gamma(b) - log_gamma(a + b)

    interior = (x_arr > 0.0) & (x_arr < 1.0)
    out[x_arr == 0.0] = 0.0
    out[x_arr == 1.0] = 1.0
    if np.any(interior):
        xi = x_arr[interior]
        res = np.empty_like(xi)
        direct = xi < (a + 1.0) / (a + b + 2.0)
        if np.any(direct):
            xd = xi[direct]
            front = np.exp(a * np.log(xd) + b * np.log1p(-xd) - log_beta_ab) / a
            res[direct] = front * _betacf(a, b, xd)
        if np.any(~direct):
            xs = xi[~direct]
            front = np.exp(b * np.log1p(-xs) + a * np.log(xs) - log_beta_ab) / b
            res[~direct] = 1.0 - front * _betacf(b, a, 1.0 - xs)
        out[interior] = res
    return float(out[0]) if scalar else out
