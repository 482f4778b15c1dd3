"""Rolling-window pipeline for price series.

Ingests a date/adjusted-close CSV, turns it into log-losses
(negative log-returns), and walks a fixed-length moving window over the
losses computing the Hill estimate, the three transition-coefficient
estimates per order pair, and the four extrapolative extreme-quantile
estimates. Each output row uses only losses up to its end date.
"""

import csv
import datetime as _dt
import warnings
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from .errors import DegenerateTailError, DomainError, RegimeError
from .quantiles import Level, Sample, empirical_lp_quantile
from .simulate import fmt_float
from .tail_index import hill
from .transition import OrderPair, empirical_transition, plugin_transition
from .validation import check_count, check_prob

DEFAULT_PAIRS = ((2.0, 1.0), (2.2, 1.5), (2.4, 2.0))
DEFAULT_REFERENCE_GAMMA = 0.34


@dataclass(frozen=True)
class PriceSeries:
    dates: Tuple[_dt.date, ...]
    prices: np.ndarray

    def __post_init__(self):
        if len(self.dates) != len(self.prices):
            raise DomainError("dates and prices must have equal length")
        if np.any(np.asarray(self.prices) <= 0.0):
            raise DomainError("prices must be positive")
        for i in range(1, len(self.dates)):
            if self.dates[i] <= self.dates[i - 1]:
                raise DomainError(
                    f"dates must be strictly increasing; row {i + 1} "
                    f"({self.dates[i]}) does not follow {self.dates[i - 1]}"
                )

    def __len__(self):
        return len(self.prices)


@dataclass(frozen=True)
class LossSeries:
    """Log-losses aligned to the later of each pair of dates."""

    dates: Tuple[_dt.date, ...]
    values: np.ndarray

    def __len__(self):
        return len(self.values)


def load_price_csv(path) -> PriceSeries:
    """Parse a CSV with header columns ``date`` and ``adjusted_close``.

    Rows with a missing price are dropped (a warning reports how many);
    malformed dates or numbers and out-of-order dates are hard errors
    carrying the offending line number.
    """
    dates: List[_dt.date] = []
    prices: List[float] = []
    dropped = 0
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"date", "adjusted_close"} <= set(reader.fieldnames):
            raise DomainError(
                f"{path}: header must contain 'date' and 'adjusted_close' "
                f"(got {reader.fieldnames})"
            )
        for lineno, row in enumerate(reader, start=2):
            raw_price = (row.get("adjusted_close") or "").strip()
            if raw_price == "" or raw_price.upper() in ("NA", "NAN", "NULL"):
                dropped += 1
                continue
            raw_date = (row.get("date") or "").strip()
            try:
                date = _dt.date.fromisoformat(raw_date)
            except ValueError:
                raise DomainError(f"{path}:{lineno}: malformed date {raw_date!r}") from None
            try:
                price = float(raw_price)
            except ValueError:
                raise DomainError(f"{path}:{lineno}: malformed price {raw_price!r}") from None
            if not np.isfinite(price) or price <= 0.0:
                raise DomainError(f"{path}:{lineno}: price must be positive, got {raw_price!r}")
            if dates and date <= dates[-1]:
                raise DomainError(
                    f"{path}:{lineno}: dates out of order ({date} after {dates[-1]})"
                )
            dates.append(date)
            prices.append(price)
    if dropped:
        warnings.warn(f"{path}: dropped {dropped} row(s) with missing price")
    return PriceSeries(dates=tuple(dates), prices=np.asarray(prices, dtype=float))


def log_losses(series: PriceSeries) -> LossSeries:
    """value_t = -ln(P_t / P_{t-1}); a gain shows up as a negative loss."""
    if len(series) < 2:
        raise DomainError("need at least two prices to form a loss")
    ratios = series.prices[1:] / series.prices[:-1]
    return LossSeries(dates=series.dates[1:], values=-np.log(ratios))


@dataclass(frozen=True)
class RollingResult:
    """One row per window end; NaN marks a regime-skipped cell."""

    dates: Tuple[_dt.date, ...]
    gamma_hat: np.ndarray
    pairs: Tuple[Tuple[float, float], ...]
    columns: Dict[str, np.ndarray]  # keyed by output column name

    def __len__(self):
        return len(self.dates)

    def column_names(self):
        return list(self.columns)


def _num(x) -> str:
    return format(float(x), "g")


def _column_layout(pairs):
    names = []
    for p, q in pairs:
        names.append(f"pi_plugin_p{_num(p)}_q{_num(q)}")
        names.append(f"pi_int_p{_num(p)}_q{_num(q)}")
        names.append(f"pi_ext_p{_num(p)}_q{_num(q)}")
    seen_p = []
    for p, _ in pairs:
        if p not in seen_p:
            seen_p.append(p)
            names.append(f"theta_bm_p{_num(p)}")
    for p, q in pairs:
        for variant in (1, 2, 3):
            names.append(f"theta_extram{variant}_p{_num(p)}_q{_num(q)}")
    return names


def rolling_estimates(losses, window=1800, k=80, pairs=DEFAULT_PAIRS,
                      eps_prime=0.005, reference_gamma=DEFAULT_REFERENCE_GAMMA) -> RollingResult:
    """Walk a ``window``-observation moving window over the loss series.

    Per window: Hill estimate with the given k, then per pair the plug-in,
    intermediate, and extreme transition coefficients, and the
    bm/extram1/extram2/extram3 extreme-quantile estimates at tail level
    eps_prime with eps_n = k / window. Pairs are validated once against
    ``reference_gamma``; windows whose fitted index leaves an estimator's
    regime get NaN in the affected cells rather than aborting the run.
    """
    if isinstance(losses, LossSeries):
        dates = losses.dates
        values = np.asarray(losses.values, dtype=float)
    else:
        values = np.asarray(losses, dtype=float)
        dates = tuple(range(len(values)))  # synthetic index dates
    window = check_count(window, "window", minimum=4)
    k = check_count(k, "k", minimum=2)
    eps_prime = check_prob(eps_prime, "eps_prime")
    if len(values) < window:
        raise DomainError(f"series length {len(values)} is below the window {window}")
    if k >= window:
        raise DomainError(f"k = {k} must be below the window {window}")
    eps_n = k / window
    if not eps_prime < eps_n:
        raise DomainError(f"need eps_prime < k/window = {eps_n}, got {eps_prime}")
    order_pairs = tuple(OrderPair(p, q, gamma_context=reference_gamma) for p, q in pairs)
    pairs = tuple((op.p, op.q) for op in order_pairs)

    n_rows = len(values) - window + 1
    names = _column_layout(pairs)
    columns = {name: np.full(n_rows, np.nan) for name in names}
    gamma_col = np.empty(n_rows)
    level_n = Level.from_eps(eps_n)

    for row in range(n_rows):
        sample = Sample(values[row:row + window])
        gamma_hat = hill(sample, k)
        gamma_col[row] = gamma_hat
        extrapolation = (eps_prime / eps_n) ** (-gamma_hat)
        theta_q = {}
        for op in order_pairs:
            if op.q not in theta_q:
                theta_q[op.q] = empirical_lp_quantile(sample, op.q, level_n)
        theta_p = {}
        for op in order_pairs:
            if op.p not in theta_p:
                theta_p[op.p] = empirical_lp_quantile(sample, op.p, level_n)
            tag = f"_p{_num(op.p)}_q{_num(op.q)}"
            tq = theta_q[op.q]
            try:
                plugin = plugin_transition(gamma_hat, op).value
                columns["pi_plugin" + tag][row] = plugin
            except RegimeError:
                plugin = None
            try:
                emp_int = empirical_transition(sample, op, tq).value
                columns["pi_int" + tag][row] = emp_int
            except DegenerateTailError:
                emp_int = None
            try:
                emp_ext = empirical_transition(sample, op, extrapolation * tq).value
                columns["pi_ext" + tag][row] = emp_ext
            except DegenerateTailError:
                emp_ext = None
            if tq > 0.0:
                if emp_int is not None:
                    columns[f"theta_extram1{tag}"][row] = \
                        (emp_int * eps_n / eps_prime) ** gamma_hat * tq
                if emp_ext is not None:
                    columns[f"theta_extram2{tag}"][row] = \
                        (emp_ext * eps_n / eps_prime) ** gamma_hat * tq
                if plugin is not None:
                    columns[f"theta_extram3{tag}"][row] = \
                        (plugin * eps_n / eps_prime) ** gamma_hat * tq
        for p, tp in theta_p.items():
            if tp > 0.0:
                columns[f"theta_bm_p{_num(p)}"][row] = extrapolation * tp

    return RollingResult(dates=tuple(dates[window - 1:]), gamma_hat=gamma_col,
                         pairs=pairs, columns=columns)


def write_rolling_csv(result: RollingResult, path):
    """One row per window end; NaN cells are left empty."""
    names = result.column_names()
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["date", "gamma_hat"] + names)
        for i, date in enumerate(result.dates):
            row = [date.isoformat() if isinstance(date, _dt.date) else date,
                   fmt_float(result.gamma_hat[i])]
            for name in names:
                v = result.columns[name][i]
                row.append(fmt_float(v) if np.isfinite(v) else "")
            writer.writerow(row)
