"""Command-line front end.

Subcommands: estimate, hill, trelt, oracle, simulate, rolling. Outputs are
pure functions of the inputs and flags (seeds included), so repeated
invocations are byte-identical. Exit codes: 0 success, 1 validation
error, 2 numeric error. Failures print one machine-parseable line
``E_VALIDATION: ...`` or ``E_NUMERIC: ...`` to stderr.
"""

import argparse
import csv
import dataclasses
import os
import sys

import numpy as np

from .distributions import make_distribution
from .errors import DomainError, NumericError
from .extreme import EXTREME_METHODS, bm_estimator, extram, qua_estimator
from .oracle import (
    QuadratureSpec,
    true_dual_transition_coefficient,
    true_lp_quantile,
    true_transition_coefficient,
)
from .quantiles import Level, Sample, empirical_lp_quantile
from .rolling import (
    DEFAULT_PAIRS,
    DEFAULT_REFERENCE_GAMMA,
    load_price_csv,
    log_losses,
    rolling_estimates,
    write_rolling_csv,
)
from .simulate import fmt_float, parse_config_file, run_experiment
from .tail_index import hill, hill_series
from .transition import (
    OrderPair,
    extreme_transition,
    intermediate_transition,
    plugin_transition,
)
from .validation import check_sample


class _CliParser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; the CLI contract wants 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"E_VALIDATION: {message}", file=sys.stderr)
        raise SystemExit(1)


def _read_loss_csv(path):
    """One-column CSV of losses; a non-numeric first row is treated as a header."""
    values = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or not row[0].strip():
                continue
            token = row[0].strip()
            try:
                values.append(float(token))
            except ValueError:
                if lineno == 1:
                    continue
                raise DomainError(f"{path}:{lineno}: malformed number {token!r}") from None
    return check_sample(values, name=f"losses from {path}")


def _parse_pairs(text):
    pairs = []
    for token in text.replace(",", " ").split():
        if ":" not in token:
            raise DomainError(f"pair {token!r} must look like p:q")
        p, q = token.split(":", 1)
        pairs.append((float(p), float(q)))
    if not pairs:
        raise DomainError("no pairs given")
    return tuple(pairs)


def _open_out(path):
    return open(path, "w", newline="") if path else sys.stdout


def _cmd_estimate(args):
    sample = Sample(_read_loss_csv(args.input))
    if args.method is None:
        value = empirical_lp_quantile(sample, args.p, Level.from_tau(args.tau))
    else:
        if args.k is None and args.eps_n is None:
            raise DomainError("extreme estimation needs --k or --eps-n")
        eps_n = args.eps_n if args.eps_n is not None else args.k / sample.n
        k = args.k if args.k is not None else max(2, int(round(eps_n * sample.n)))
        gamma_hat = hill(sample, k)
        if args.method == "bm":
            est = bm_estimator(sample, args.p, eps_n, args.eps_prime, gamma_hat)
        elif args.method == "qua":
            est = qua_estimator(sample, args.p, eps_n, args.eps_prime, gamma_hat)
        else:
            if args.q is None:
                raise DomainError(f"method {args.method} needs --q")
            est = extram(sample, OrderPair(args.p, args.q), eps_n,
                         args.eps_prime, gamma_hat, int(args.method[-1]))
        value = est.value
    print(fmt_float(value))
    return 0


def _cmd_hill(args):
    sample = Sample(_read_loss_csv(args.input))
    k_max = args.k_max if args.k_max is not None else sample.n - 1
    series = hill_series(sample, args.k_min, k_max)
    out = _open_out(args.out)
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["k", "gamma_hat", "ci_low", "ci_high"])
        for i in range(len(series.k_values)):
            writer.writerow([int(series.k_values[i]), fmt_float(series.gamma_hat[i]),
                             fmt_float(series.ci_low[i]), fmt_float(series.ci_high[i])])
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_trelt(args):
    sample = Sample(_read_loss_csv(args.input))
    pair = OrderPair(args.p, args.q)
    gamma_hat = hill(sample, args.k)
    eps_n = args.k / sample.n
    rows = [
        ("plugin", plugin_transition(gamma_hat, pair)),
        ("intermediate", intermediate_transition(sample, pair, eps_n)),
        ("extreme", extreme_transition(sample, pair, eps_n, args.eps_prime, gamma_hat)),
    ]
    out = _open_out(args.out)
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["method", "value", "eps_used", "gamma_hat"])
        for name, est in rows:
            writer.writerow([name, fmt_float(est.value),
                             "" if est.eps_used is None else fmt_float(est.eps_used),
                             fmt_float(gamma_hat)])
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_oracle(args):
    dist = make_distribution(args.dist, args.gamma)
    pair = OrderPair(args.p, args.q)
    quad = QuadratureSpec(abs_tol=args.abs_tol, rel_tol=args.rel_tol)
    eps_values = [float(tok) for tok in args.eps.replace(",", " ").split()]
    if not eps_values:
        raise DomainError("--eps needs at least one value")
    out = _open_out(args.out)
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["eps", "theta_p", "theta_q", "pi", "dual_pi"])
        for eps in eps_values:
            theta_p = true_lp_quantile(dist, args.p, 1.0 - eps, quad)
            theta_q = true_lp_quantile(dist, args.q, 1.0 - eps, quad)
            pi = true_transition_coefficient(dist, pair, eps, tau0=args.tau0, quad_spec=quad)
            dual = true_dual_transition_coefficient(dist, pair, eps, quad_spec=quad)
            writer.writerow([fmt_float(eps), fmt_float(theta_p), fmt_float(theta_q),
                             fmt_float(pi), fmt_float(dual)])
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_simulate(args):
    config = parse_config_file(args.config)
    if args.seed is not None:
        config = dataclasses.replace(config, base_seed=args.seed)
    table = run_experiment(config, workers=args.workers)
    os.makedirs(args.out_dir, exist_ok=True)
    stem = os.path.splitext(os.path.basename(args.config))[0]
    msre_path = os.path.join(args.out_dir, f"{stem}_msre.csv")
    box_path = os.path.join(args.out_dir, f"{stem}_boxplot.csv")
    table.write_msre_csv(msre_path)
    table.write_boxplot_csv(box_path)
    print(msre_path)
    print(box_path)
    return 0


def _cmd_rolling(args):
    series = load_price_csv(args.input)
    losses = log_losses(series)
    result = rolling_estimates(losses, window=args.window, k=args.k,
                               pairs=_parse_pairs(args.pairs),
                               eps_prime=args.eps_prime,
                               reference_gamma=args.reference_gamma)
    write_rolling_csv(result, args.out)
    print(args.out)
    return 0


def build_parser():
    parser = _CliParser(prog="lptail",
                        description="Lp-quantile tail risk estimation toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_est = sub.add_parser("estimate", parents=[], help="Lp-quantile point estimate")
    p_est.add_argument("--input", required=True, help="one-column CSV of losses")
    p_est.add_argument("--p", type=float, required=True)
    p_est.add_argument("--tau", type=float, default=0.9)
    p_est.add_argument("--q", type=float, default=None)
    p_est.add_argument("--eps-n", type=float, default=None)
    p_est.add_argument("--eps-prime", type=float, default=0.005)
    p_est.add_argument("--k", type=int, default=None)
    p_est.add_argument("--method", choices=list(EXTREME_METHODS), default=None,
                       help="extreme extrapolation method; omit for the plain estimate")
    p_est.set_defaults(func=_cmd_estimate)

    p_hill = sub.add_parser("hill", help="Hill-plot series as CSV")
    p_hill.add_argument("--input", required=True)
    p_hill.add_argument("--k-min", type=int, default=2)
    p_hill.add_argument("--k-max", type=int, default=None)
    p_hill.add_argument("--out", default=None)
    p_hill.set_defaults(func=_cmd_hill)

    p_tr = sub.add_parser("trelt", help="the three transition-coefficient estimates")
    p_tr.add_argument("--input", required=True)
    p_tr.add_argument("--p", type=float, required=True)
    p_tr.add_argument("--q", type=float, required=True)
    p_tr.add_argument("--k", type=int, required=True)
    p_tr.add_argument("--eps-prime", type=float, default=0.005)
    p_tr.add_argument("--out", default=None)
    p_tr.set_defaults(func=_cmd_trelt)

    p_or = sub.add_parser("oracle", help="oracle grid of true values")
    p_or.add_argument("--dist", required=True,
                      choices=["pareto", "frechet", "student_t", "koenker_bassett"])
    p_or.add_argument("--gamma", type=float, default=None)
    p_or.add_argument("--p", type=float, required=True)
    p_or.add_argument("--q", type=float, required=True)
    p_or.add_argument("--eps", required=True, help="comma/space separated tail levels")
    p_or.add_argument("--tau0", type=float, default=0.0)
    p_or.add_argument("--abs-tol", type=float, default=1e-10)
    p_or.add_argument("--rel-tol", type=float, default=1e-10)
    p_or.add_argument("--out", default=None)
    p_or.set_defaults(func=_cmd_oracle)

    p_sim = sub.add_parser("simulate", help="run a Monte Carlo experiment config")
    p_sim.add_argument("--config", required=True)
    p_sim.add_argument("--out-dir", required=True)
    p_sim.add_argument("--workers", type=int, default=1)
    p_sim.add_argument("--seed", type=int, default=None,
                       help="override the config base_seed")
    p_sim.set_defaults(func=_cmd_simulate)

    p_roll = sub.add_parser("rolling", help="moving-window estimation over a price CSV")
    p_roll.add_argument("--input", required=True, help="CSV with date,adjusted_close")
    p_roll.add_argument("--window", type=int, default=1800)
    p_roll.add_argument("--k", type=int, default=80)
    p_roll.add_argument("--pairs", default=",".join(f"{p}:{q}" for p, q in DEFAULT_PAIRS))
    p_roll.add_argument("--eps-prime", type=float, default=0.005)
    p_roll.add_argument("--reference-gamma", type=float, default=DEFAULT_REFERENCE_GAMMA)
    p_roll.add_argument("--out", required=True)
    p_roll.set_defaults(func=_cmd_rolling)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    except (DomainError, OSError) as exc:
        print(f"E_VALIDATION: {exc}", file=sys.stderr)
        return 1
    except NumericError as exc:
        print(f"E_NUMERIC: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
