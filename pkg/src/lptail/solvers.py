"""Bracketed scalar root finding.

A single solver backs the empirical estimators and the oracles: bisection
with secant acceleration (the Illinois variant of regula falsi). Given a
sign change on [lo, hi] it is globally convergent, needs no derivatives,
and tolerates the kinked integrands that p in (1, 2) produces.
"""

import numpy as np

from .errors import NumericError


def bracketed_root(f, lo, hi, *, xtol, rtol=4e-16, max_iter=200,
                   f_lo=None, f_hi=None):
    """Root of ``f`` on [lo, hi], assuming f(lo) and f(hi) differ in sign.

    Parameters
    ----------
    f : callable
        Continuous scalar function.
    lo, hi : float
        Bracket endpoints, lo < hi.
    xtol, rtol : float
        Convergence when the bracket width falls below xtol + rtol*|x|.
    max_iter : int
        Iteration cap; exceeding it raises NumericError carrying the
        final bracket.
    f_lo, f_hi : float, optional
        Known endpoint values, to save two evaluations.

    Returns
    -------
    float
    """
    lo = float(lo)
    hi = float(hi)
    if not (np.isfinite(lo) and np.isfinite(hi)) or lo > hi:
        raise NumericError("invalid bracket", bracket=(lo, hi))
    flo = float(f(lo)) if f_lo is None else float(f_lo)
    if flo == 0.0:
        return lo
    fhi = float(f(hi)) if f_hi is None else float(f_hi)
    if fhi == 0.0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise NumericError("no sign change on bracket", bracket=(lo, hi))

    side = 0  # -1 if lo was retained last, +1 if hi was; drives Illinois halving
    for _ in range(max_iter):
        width = hi - lo
        if width <= xtol + rtol * max(abs(lo), abs(hi)):
            # interpolate once more for the return value
            return hi - fhi * (hi - lo) / (fhi - flo)
        x = hi - fhi * (hi - lo) / (fhi - flo)
        # keep strictly interior; fall back to bisection when secant stalls
        margin = 0.01 * width
        if not (lo + margin <= x <= hi - margin):
            x = 0.5 * (lo + hi)
        fx = float(f(x))
        if np.isnan(fx):
            raise NumericError(f"function returned NaN at {x!r}", bracket=(lo, hi))
        if fx == 0.0:
            return x
        if np.sign(fx) == np.sign(flo):
            lo, flo = x, fx
            if side == -1:
                fhi *= 0.5
            side = -1
        else:
            hi, fhi = x, fx
            if side == +1:
                flo *= 0.5
            side = +1
    raise NumericError(
        f"root finding did not converge in {max_iter} iterations",
        bracket=(lo, hi),
    )


def expand_bracket(f, lo, hi, *, grow=2.0, max_expansions=200, upper_limit=None):
    """Grow [lo, hi] geometrically upward until f changes sign.

    Returns (lo, hi, f_lo, f_hi). Only the upper end moves; the caller is
    expected to pass a lower end where the sign is already known-correct.
    """
    flo = float(f(lo))
    fhi = float(f(hi))
    sign0 = np.sign(flo)
    if sign0 == 0:
        return lo, lo, flo, flo
    for _ in range(max_expansions):
        if np.sign(fhi) != sign0:
            return lo, hi, flo, fhi
        lo, flo = hi, fhi
        hi = hi * grow
        if upper_limit is not None and hi > upper_limit:
            raise NumericError(
                f"bracket expansion exceeded limit {upper_limit:g}",
                bracket=(lo, hi),
            )
        fhi = float(f(hi))
    raise NumericError("bracket expansion failed to find a sign change",
                       bracket=(lo, hi))
