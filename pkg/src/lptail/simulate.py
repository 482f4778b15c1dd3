"""Seeded Monte Carlo benchmark harness.

Runs N independent replications of a sampling experiment, evaluates a set
of estimators on each, and aggregates mean squared relative errors (MSRE)
against oracle truths:

    MSRE = mean_i (estimate_i / truth - 1)**2

Replication i draws from its own counter-based random stream
(base_seed, i), so results are bitwise reproducible and independent of
how replications are scheduled across workers. Replications where an
estimator leaves its parameter regime or the extrapolated tail holds no
observations are recorded as skips, never silently folded into the mean.
"""

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from .distributions import RngStream, make_distribution
from .errors import DegenerateTailError, DomainError, NumericError, RegimeError
from .oracle import DEFAULT_QUADRATURE, true_lp_quantile, true_transition_coefficient
from .quantiles import Level, Sample, empirical_lp_quantile
from .tail_index import hill
from .transition import OrderPair, empirical_transition, plugin_transition
from .validation import check_count, check_prob

#: coefficient-estimator methods, scored against the transition coefficient
COEFFICIENT_METHODS = ("plugin_int", "plugin_ext", "emp_int", "emp_ext")
#: quantile-estimator methods, scored against the extreme Lp-quantile
QUANTILE_METHODS = ("bm", "extram1", "extram2", "extram3")
ALL_METHODS = COEFFICIENT_METHODS + QUANTILE_METHODS

_FLOAT_FMT = ".17g"


def fmt_float(x) -> str:
    return format(float(x), _FLOAT_FMT)


@dataclass(frozen=True)
class ExperimentConfig:
    """Specification of one Monte Carlo experiment.

    ``pairs`` holds (p, q) order pairs; every pair is validated against the
    true ``gamma`` in the strict estimation regime up front. The
    intermediate tail level is eps_n = k / n.
    """

    dist_kind: str
    gamma: float
    pairs: Tuple[Tuple[float, float], ...]
    n: int
    replications: int
    k: int
    base_seed: int
    eps_prime: float = 0.005
    tau0: float = 0.0
    methods: Tuple[str, ...] = ALL_METHODS

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((float(p), float(q)) for p, q in self.pairs))
        object.__setattr__(self, "methods", tuple(self.methods))
        if not self.pairs:
            raise DomainError("config needs at least one (p, q) pair")
        unknown = [m for m in self.methods if m not in ALL_METHODS]
        if unknown:
            raise DomainError(f"unknown methods {unknown}; choose from {ALL_METHODS}")
        # an empty method set is legal and yields header-only outputs
        check_count(self.n, "n", minimum=4)
        check_count(self.replications, "replications", minimum=1)
        check_count(self.k, "k", minimum=2)
        check_count(self.base_seed, "base_seed", minimum=0)
        check_prob(self.tau0, "tau0", inclusive_low=True)
        check_prob(self.eps_prime, "eps_prime")
        eps_n = self.k / self.n
        if not eps_n < 1.0 - self.tau0:
            raise DomainError(f"eps_n = k/n = {eps_n} must be below 1 - tau0 = {1 - self.tau0}")
        if not self.eps_prime < eps_n:
            raise DomainError(f"need eps_prime < eps_n = k/n; got {self.eps_prime} >= {eps_n}")
        self.distribution()  # validates kind/gamma
        for p, q in self.pairs:
            OrderPair(p, q, gamma_context=self.gamma)

    @property
    def eps_n(self) -> float:
        return self.k / self.n

    def distribution(self):
        return make_distribution(self.dist_kind, self.gamma)

    def order_pairs(self):
        return tuple(OrderPair(p, q) for p, q in self.pairs)


@dataclass(frozen=True)
class CellResult:
    msre: float
    truth: float
    skip_count: int
    rel_errors: np.ndarray  # NaN where the replication was skipped


@dataclass
class MsreTable:
    """Aggregated results keyed by (dist, gamma, p, q, n, method)."""

    config: ExperimentConfig
    cells: Dict[Tuple[str, float, float, float, int, str], CellResult] = field(default_factory=dict)

    def cell(self, p, q, method) -> CellResult:
        key = (self.config.dist_kind, self.config.gamma, float(p), float(q),
               self.config.n, method)
        return self.cells[key]

    def write_msre_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["dist", "gamma", "p", "q", "n", "method",
                             "msre", "truth", "skip_count", "n_used"])
            for key in sorted(self.cells, key=_cell_sort_key):
                dist, gamma, p, q, n, method = key
                cell = self.cells[key]
                n_used = int(np.sum(np.isfinite(cell.rel_errors)))
                writer.writerow([dist, fmt_float(gamma), fmt_float(p), fmt_float(q),
                                 n, method, fmt_float(cell.msre), fmt_float(cell.truth),
                                 cell.skip_count, n_used])

    def write_boxplot_csv(self, path):
        """Long-format per-replication relative errors for external plotting."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["dist", "gamma", "p", "q", "n", "method",
                             "replication", "relative_error"])
            for key in sorted(self.cells, key=_cell_sort_key):
                dist, gamma, p, q, n, method = key
                cell = self.cells[key]
                for i, err in enumerate(cell.rel_errors):
                    if np.isfinite(err):
                        writer.writerow([dist, fmt_float(gamma), fmt_float(p),
                                         fmt_float(q), n, method, i, fmt_float(err)])


def _cell_sort_key(key):
    dist, gamma, p, q, n, method = key
    return (dist, gamma, p, q, n, ALL_METHODS.index(method))


def msre(estimates, truth) -> float:
    """Mean squared relative error over the finite entries of ``estimates``."""
    truth = float(truth)
    if truth == 0.0:
        raise DomainError("msre is undefined for truth == 0")
    arr = np.asarray(estimates, dtype=float)
    if arr.size == 0:
        raise DomainError("msre needs at least one estimate")
    finite = arr[np.isfinite(arr)]
    if finite.size == 0:
        return float("nan")
    return float(np.mean((finite / truth - 1.0) ** 2))


def evaluate_methods(sample: Sample, pairs, k, eps_prime, methods=ALL_METHODS):
    """Evaluate the configured estimators on one sample.

    Returns an array of shape (len(pairs), len(methods)) with NaN wherever a
    regime or degenerate-tail condition forced a skip. The Hill estimate and
    the intermediate Lq/Lp-quantiles are computed once and shared across
    methods, so method comparisons are not confounded by tuning differences.
    """
    n = sample.n
    eps_n = k / n
    gamma_hat = hill(sample, k)
    level_n = Level.from_eps(eps_n)
    extrapolation = (eps_prime / eps_n) ** (-gamma_hat)

    theta_q = {}
    for pair in pairs:
        if pair.q not in theta_q:
            theta_q[pair.q] = empirical_lp_quantile(sample, pair.q, level_n)
    theta_p = {}
    if "bm" in methods:
        for pair in pairs:
            if pair.p not in theta_p:
                theta_p[pair.p] = empirical_lp_quantile(sample, pair.p, level_n)

    out = np.full((len(pairs), len(methods)), np.nan)
    for i, pair in enumerate(pairs):
        tq = theta_q[pair.q]
        plugin_value = None
        if {"plugin_int", "plugin_ext", "extram3"} & set(methods):
            try:
                plugin_value = plugin_transition(gamma_hat, pair).value
            except RegimeError:
                plugin_value = None
        emp_int_value = None
        if {"emp_int", "extram1"} & set(methods):
            try:
                emp_int_value = empirical_transition(sample, pair, tq).value
            except (DegenerateTailError, NumericError):
                emp_int_value = None
        emp_ext_value = None
        if {"emp_ext", "extram2"} & set(methods):
            try:
                emp_ext_value = empirical_transition(sample, pair, extrapolation * tq).value
            except (DegenerateTailError, NumericError):
                emp_ext_value = None

        for j, method in enumerate(methods):
            if method in ("plugin_int", "plugin_ext"):
                value = plugin_value
            elif method == "emp_int":
                value = emp_int_value
            elif method == "emp_ext":
                value = emp_ext_value
            elif method == "bm":
                tp = theta_p[pair.p]
                value = extrapolation * tp if tp > 0.0 else None
            elif method == "extram1":
                value = (None if emp_int_value is None or tq <= 0.0
                         else (emp_int_value * eps_n / eps_prime) ** gamma_hat * tq)
            elif method == "extram2":
                value = (None if emp_ext_value is None or tq <= 0.0
                         else (emp_ext_value * eps_n / eps_prime) ** gamma_hat * tq)
            else:  # extram3
                value = (None if plugin_value is None or tq <= 0.0
                         else (plugin_value * eps_n / eps_prime) ** gamma_hat * tq)
            if value is not None:
                out[i, j] = value
    return out


def _replication_chunk(config: ExperimentConfig, indices):
    dist = config.distribution()
    pairs = config.order_pairs()
    rows = np.empty((len(indices), len(pairs), len(config.methods)))
    for row, i in enumerate(indices):
        draws = dist.sample(config.n, RngStream(config.base_seed, i))
        sample = Sample(draws)
        rows[row] = evaluate_methods(sample, pairs, config.k,
                                     config.eps_prime, config.methods)
    return rows


def compute_truths(config: ExperimentConfig, quad_spec=DEFAULT_QUADRATURE,
                   cache=None):
    """Oracle truth per (pair, method): the transition coefficient at the
    level each coefficient method targets, or the extreme Lp-quantile."""
    dist = config.distribution()
    cache = {} if cache is None else cache
    truths = np.empty((len(config.pairs), len(config.methods)))

    def transition_at(pair, eps):
        key = ("pi", config.dist_kind, config.gamma, pair.p, pair.q, eps, config.tau0)
        if key not in cache:
            cache[key] = true_transition_coefficient(dist, pair, eps,
                                                     tau0=config.tau0,
                                                     quad_spec=quad_spec)
        return cache[key]

    def extreme_quantile(p):
        key = ("theta", config.dist_kind, config.gamma, p, config.eps_prime)
        if key not in cache:
            cache[key] = true_lp_quantile(dist, p, Level.from_eps(config.eps_prime),
                                          quad_spec=quad_spec)
        return cache[key]

    for i, (p, q) in enumerate(config.pairs):
        pair = OrderPair(p, q)
        for j, method in enumerate(config.methods):
            if method in ("plugin_int", "emp_int"):
                truths[i, j] = transition_at(pair, config.eps_n)
            elif method in ("plugin_ext", "emp_ext"):
                truths[i, j] = transition_at(pair, config.eps_prime)
            else:
                truths[i, j] = extreme_quantile(p)
    return truths


# shared across run_experiment calls in one process; oracle quadrature is
# by far the most expensive piece of a small experiment
_ORACLE_CACHE: dict = {}


def run_experiment(config: ExperimentConfig, workers=1,
                   quad_spec=DEFAULT_QUADRATURE) -> MsreTable:
    """Run all replications, score them against oracle truths, aggregate.

    ``workers`` > 1 distributes replications over processes; results are
    reduced in replication order, so the output is identical for any
    worker count.
    """
    workers = check_count(workers, "workers", minimum=1)
    truths = compute_truths(config, quad_spec=quad_spec, cache=_ORACLE_CACHE)

    n_rep = config.replications
    indices = list(range(n_rep))
    if workers == 1 or n_rep < 2 * workers:
        values = _replication_chunk(config, indices)
    else:
        chunk_size = max(1, -(-n_rep // (workers * 4)))
        chunks = [indices[s:s + chunk_size] for s in range(0, n_rep, chunk_size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_replication_chunk, [config] * len(chunks), chunks))
        values = np.concatenate(parts, axis=0)

    table = MsreTable(config=config)
    for i, (p, q) in enumerate(config.pairs):
        for j, method in enumerate(config.methods):
            estimates = values[:, i, j]
            truth = truths[i, j]
            rel = estimates / truth - 1.0
            skip_count = int(np.sum(~np.isfinite(estimates)))
            key = (config.dist_kind, config.gamma, p, q, config.n, method)
            table.cells[key] = CellResult(
                msre=msre(estimates, truth),
                truth=float(truth),
                skip_count=skip_count,
                rel_errors=rel,
            )
    return table


def parse_config_file(path) -> ExperimentConfig:
    """Read a flat key = value experiment config.

    Example::

        dist = pareto
        gamma = 0.3333333333333333
        n = 2000
        replications = 1000
        k = 58
        eps_prime = 0.005
        tau0 = 0.0
        base_seed = 913201
        pairs = 2.4:1.8 2.4:2.0
        methods = plugin_int plugin_ext emp_int emp_ext bm extram1 extram2 extram3
    """
    entries = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
            key, value = line.split("=", 1)
            entries[key.strip().lower()] = value.strip()

    required = ["dist", "gamma", "n", "replications", "k", "base_seed", "pairs"]
    missing = [key for key in required if key not in entries]
    if missing:
        raise DomainError(f"{path}: missing config keys {missing}")

    def parse_pairs(text):
        pairs = []
        for token in text.replace(",", " ").split():
            if ":" not in token:
                raise DomainError(f"{path}: pair {token!r} must look like p:q")
            p, q = token.split(":", 1)
            pairs.append((float(p), float(q)))
        return tuple(pairs)

    methods = tuple(entries["methods"].replace(",", " ").split()) if "methods" in entries \
        else ALL_METHODS
    try:
        return ExperimentConfig(
            dist_kind=entries["dist"],
            gamma=float(entries["gamma"]),
            pairs=parse_pairs(entries["pairs"]),
            n=int(entries["n"]),
            replications=int(entries["replications"]),
            k=int(entries["k"]),
            base_seed=int(entries["base_seed"]),
            eps_prime=float(entries.get("eps_prime", 0.005)),
            tau0=float(entries.get("tau0", 0.0)),
            methods=methods,
        )
    except ValueError as exc:
        raise DomainError(f"{path}: {exc}") from exc
