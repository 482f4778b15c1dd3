"""Lp-quantile tail risk estimation.

Heavy-tailed risk measurement built around Lp-quantiles: empirical
estimation at intermediate levels, Hill tail-index fitting, the tail
level-transition coefficient between two Lp-quantiles, extrapolative
estimators of extreme Lp-quantiles, numerical oracles on reference
distributions, a reproducible Monte Carlo benchmark harness, and a
rolling-window pipeline for price series.
"""

from .distributions import (
    Frechet,
    HeavyTailDistribution,
    KoenkerBassett,
    Pareto,
    RngStream,
    StudentT,
    make_distribution,
)
from .errors import DegenerateTailError, DomainError, NumericError, RegimeError
from .estimators import ExtremeLpQuantile, HillTailIndex, LpQuantile, TransitionCoefficient
from .extreme import ExtremeEstimate, bm_estimator, extram, qua_estimator
from .oracle import (
    QuadratureSpec,
    scale_equation_residual,
    tau0_scan,
    true_dual_transition_coefficient,
    true_lp_quantile,
    true_transition_coefficient,
)
from .quantiles import (
    Level,
    Sample,
    check_loss,
    empirical_lp_quantile,
    order_statistic_quantile,
)
from .rolling import (
    LossSeries,
    PriceSeries,
    RollingResult,
    load_price_csv,
    log_losses,
    rolling_estimates,
    write_rolling_csv,
)
from .simulate import (
    ALL_METHODS,
    ExperimentConfig,
    MsreTable,
    evaluate_methods,
    msre,
    parse_config_file,
    run_experiment,
)
from .special import beta, log_gamma, reg_inc_beta
from .tail_index import HillSeries, hill, hill_series
from .transition import (
    OrderPair,
    TransitionEstimate,
    TransitionMethod,
    empirical_transition,
    extreme_transition,
    intermediate_transition,
    plugin_transition,
    quantile_ratio_limit,
    transition_limit,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_METHODS",
    "DegenerateTailError",
    "DomainError",
    "ExperimentConfig",
    "ExtremeEstimate",
    "ExtremeLpQuantile",
    "Frechet",
    "HeavyTailDistribution",
    "HillSeries",
    "HillTailIndex",
    "KoenkerBassett",
    "Level",
    "LossSeries",
    "LpQuantile",
    "MsreTable",
    "NumericError",
    "OrderPair",
    "Pareto",
    "PriceSeries",
    "QuadratureSpec",
    "RegimeError",
    "RngStream",
    "RollingResult",
    "Sample",
    "StudentT",
    "TransitionCoefficient",
    "TransitionEstimate",
    "TransitionMethod",
    "beta",
    "bm_estimator",
    "check_loss",
    "empirical_lp_quantile",
    "empirical_transition",
    "evaluate_methods",
    "extram",
    "extreme_transition",
    "hill",
    "hill_series",
    "intermediate_transition",
    "load_price_csv",
    "log_gamma",
    "log_losses",
    "make_distribution",
    "msre",
    "order_statistic_quantile",
    "parse_config_file",
    "plugin_transition",
    "qua_estimator",
    "quantile_ratio_limit",
    "reg_inc_beta",
    "rolling_estimates",
    "run_experiment",
    "scale_equation_residual",
    "tau0_scan",
    "true_dual_transition_coefficient",
    "true_lp_quantile",
    "true_transition_coefficient",
    "transition_limit",
    "write_rolling_csv",
]
