"""Euler-Maruyama strong convergence in temporal-spatial Hoelder norms."""

from ._core import (
    ConfigError,
    Error,
    InvalidArgument,
    Model,
    ParseError,
    Partition,
    bounds,
    builtin,
    eval_expr,
    experiment_names,
    expression_model,
    fit_rate,
    four_point_stat,
    gauss_hermite_mean,
    interpolate,
    lipschitz_quotient,
    multigrid_sum,
    run_experiment,
    two_point_stat,
)

__all__ = [
    "ConfigError",
    "Error",
    "InvalidArgument",
    "Model",
    "ParseError",
    "Partition",
    "bounds",
    "builtin",
    "eval_expr",
    "experiment_names",
    "expression_model",
    "fit_rate",
    "four_point_stat",
    "gauss_hermite_mean",
    "interpolate",
    "lipschitz_quotient",
    "multigrid_sum",
    "run_experiment",
    "two_point_stat",
]
