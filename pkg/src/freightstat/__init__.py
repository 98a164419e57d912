"""Descriptive and predictive analytics for intermodal freight data."""

from .errors import DomainError
from .stats import BinSpec, Histogram, SummaryStats, bin_sample, summarize
from .distributions import (
    DistributionSpec,
    FitResult,
    cdf,
    fit_mle,
    std_normal_cdf,
)
from .gof import (
    GofReport,
    ad_test,
    chi2_sf,
    chi_square_gof,
    expected_frequencies,
    ks_test,
)
from .crosstab import ContingencyTable, expected_table, independence_test, tabulate
from .regression import (
    LinearModel,
    SumsOfSquares,
    general_ols,
    pearson_r,
    predict,
    simple_ols,
    sums_of_squares,
    two_var_ols_closed_form,
)
from .lp import Constraint, LpProblem, LpSolution, solve
from .fuzzy import FuzzyModel, Interval, build_lp, fit, predict_interval

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "BinSpec",
    "Histogram",
    "SummaryStats",
    "bin_sample",
    "summarize",
    "DistributionSpec",
    "FitResult",
    "cdf",
    "fit_mle",
    "std_normal_cdf",
    "GofReport",
    "ad_test",
    "chi2_sf",
    "chi_square_gof",
    "expected_frequencies",
    "ks_test",
    "ContingencyTable",
    "expected_table",
    "independence_test",
    "tabulate",
    "LinearModel",
    "SumsOfSquares",
    "general_ols",
    "pearson_r",
    "predict",
    "simple_ols",
    "sums_of_squares",
    "two_var_ols_closed_form",
    "Constraint",
    "LpProblem",
    "LpSolution",
    "solve",
    "FuzzyModel",
    "Interval",
    "build_lp",
    "fit",
    "predict_interval",
]
