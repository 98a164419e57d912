"""Goodness-of-fit tests: chi-square, Kolmogorov-Smirnov, Anderson-Darling."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
from scipy.special import gammaincc

from .distributions import DistributionSpec
from .errors import DomainError
from .stats import BinSpec, Histogram, as_sample

# Upper-tail chi-square critical values, df 1..30.
CHI2_CRITICAL = {
    0.10: (
        2.7055, 4.6052, 6.2514, 7.7794, 9.2364, 10.6446, 12.0170, 13.3616, 14.6837, 15.9872,
        17.2750, 18.5493, 19.8119, 21.0641, 22.3071, 23.5418, 24.7690, 25.9894, 27.2036, 28.4120,
        29.6151, 30.8133, 32.0069, 33.1962, 34.3816, 35.5632, 36.7412, 37.9159, 39.0875, 40.2560,
    ),
    0.05: (
        3.8415, 5.9915, 7.8147, 9.4877, 11.0705, 12.5916, 14.0671, 15.5073, 16.9190, 18.3070,
        19.6751, 21.0261, 22.3620, 23.6848, 24.9958, 26.2962, 27.5871, 28.8693, 30.1435, 31.4104,
        32.6706, 33.9244, 35.1725, 36.4150, 37.6525, 38.8851, 40.1133, 41.3371, 42.5570, 43.7730,
    ),
    0.01: (
        6.6349, 9.2103, 11.3449, 13.2767, 15.0863, 16.8119, 18.4753, 20.0902, 21.6660, 23.2093,
        24.7250, 26.2170, 27.6882, 29.1412, 30.5779, 31.9999, 33.4087, 34.8053, 36.1909, 37.5662,
        38.9322, 40.2894, 41.6384, 42.9798, 44.3141, 45.6417, 46.9629, 48.2782, 49.5879, 50.8922,
    ),
}

# Asymptotic two-sided K-S coefficients c(alpha); critical value c / sqrt(n).
KS_COEFFICIENT = {0.10: 1.22, 0.05: 1.36, 0.01: 1.63}

# Anderson-Darling critical values (Stephens).
AD_FULLY_SPECIFIED = {0.10: 1.933, 0.05: 2.492, 0.025: 3.070, 0.01: 3.857}
AD_NORMAL_ESTIMATED = {0.10: 0.631, 0.05: 0.752, 0.025: 0.873, 0.01: 1.035}
AD_EXPONENTIAL_ESTIMATED = {0.10: 1.062, 0.05: 1.321, 0.025: 1.591, 0.01: 1.959}

KS_CAVEAT = (
    "asymptotic critical value assumes a fully specified distribution; "
    "it is conservative when parameters were estimated from the sample"
)

_AD_EPS = 1e-12


def _lookup(table: dict, alpha: float, what: str) -> float:
    for level, value in table.items():
        if math.isclose(level, alpha):
            return value
    raise DomainError(
        f"no {what} critical value tabulated for alpha={alpha}; "
        f"available: {', '.join(str(a) for a in sorted(table))}"
    )


def chi2_critical(df: int, alpha: float = 0.05) -> float:
    """Tabulated upper-alpha point; beyond the table, ``chi2_sf`` is inverted by bisection."""
    row = _lookup(CHI2_CRITICAL, alpha, "chi-square")
    if df < 1:
        raise DomainError(f"df must be at least 1, got {df}")
    if df <= len(row):
        return row[df - 1]
    lo, hi = 0.0, df + 20.0 * math.sqrt(2.0 * df) + 50.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if chi2_sf(mid, df) > alpha:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def chi2_sf(statistic: float, df: int) -> float:
    """Upper-tail chi-square probability, Q(df/2, x/2)."""
    if df < 1:
        raise DomainError("df must be at least 1")
    return float(gammaincc(df / 2.0, max(statistic, 0.0) / 2.0))


@dataclass(frozen=True)
class GofReport:
    test: str
    statistic: float
    alpha: float
    critical_value: float
    reject_null: bool
    df: Optional[int] = None
    p_value: Optional[float] = None
    n: Optional[int] = None
    inconclusive: bool = False
    warnings: tuple[str, ...] = field(default=())
    notes: tuple[str, ...] = field(default=())

    @property
    def decision(self) -> str:
        if self.inconclusive:
            return "inconclusive"
        return "reject" if self.reject_null else "fail to reject"

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["warnings"] = list(self.warnings)
        d["notes"] = list(self.notes)
        d["decision"] = self.decision
        return d


def expected_frequencies(spec: DistributionSpec, bins: BinSpec, n: int) -> list[float]:
    """``E_i = n * (F(upper_i) - F(lower_i))``; an open final bin uses F = 1."""
    if n < 1:
        raise DomainError("n must be at least 1")
    return [n * (spec.cdf(hi) - spec.cdf(lo)) for lo, hi in bins.intervals()]


def chi_square_gof(
    observed: Union[Histogram, Sequence[float]],
    expected: Sequence[float],
    estimated_params: int,
    alpha: float = 0.05,
) -> GofReport:
    """Pearson chi-square goodness-of-fit test with df = k - p - 1.

    When k - p - 1 < 1 the df is floored at 1 and the report is flagged
    inconclusive instead of raising.
    """
    obs = np.asarray(observed.counts if isinstance(observed, Histogram) else observed, dtype=float)
    exp = np.asarray(expected, dtype=float)
    if obs.shape != exp.shape or obs.ndim != 1:
        raise DomainError("observed and expected must be 1-D and the same length")
    if estimated_params < 0:
        raise DomainError("estimated_params must be non-negative")
    zero = np.flatnonzero(exp <= 0.0)
    if zero.size:
        raise DomainError(
            f"expected frequency of bin {zero[0] + 1} is zero; merge it with a neighbouring bin"
        )
    notes: list[str] = []
    if abs(obs.sum() - exp.sum()) > 1e-6:
        msg = f"observed total {obs.sum():g} differs from expected total {exp.sum():.6g}"
        warnings.warn(msg, stacklevel=2)
        notes.append(msg)

    stat = float(np.sum((obs - exp) ** 2 / exp))
    k = len(obs)
    df = k - estimated_params - 1
    inconclusive = False
    warns = list(notes)
    if df < 1:
        warns.append(f"k - p - 1 = {df} is not positive; df floored at 1 and the test is inconclusive")
        warnings.warn(warns[-1], stacklevel=2)
        df = 1
        inconclusive = True
    crit = chi2_critical(df, alpha)
    return GofReport(
        test="chi_square",
        statistic=stat,
        alpha=alpha,
        critical_value=crit,
        reject_null=stat > crit,
        df=df,
        p_value=chi2_sf(stat, df),
        n=int(round(obs.sum())),
        inconclusive=inconclusive,
        warnings=tuple(warns),
    )


def ks_statistic(sample: Sequence[float], spec: DistributionSpec) -> float:
    x = np.sort(as_sample(sample))
    n = len(x)
    if n == 0:
        raise DomainError("empty sample")
    f = np.array([spec.cdf(v) for v in x])
    i = np.arange(1, n + 1)
    d_plus = np.max(i / n - f)
    d_minus = np.max(f - (i - 1) / n)
    return float(max(d_plus, d_minus))


def ks_test(sample: Sequence[float], spec: DistributionSpec, alpha: float = 0.05) -> GofReport:
    """Two-sided Kolmogorov-Smirnov test, ``D = max(D+, D-)``."""
    stat = ks_statistic(sample, spec)
    n = len(sample)
    crit = _lookup(KS_COEFFICIENT, alpha, "Kolmogorov-Smirnov") / math.sqrt(n)
    return GofReport(
        test="ks",
        statistic=stat,
        alpha=alpha,
        critical_value=crit,
        reject_null=stat > crit,
        n=n,
        notes=(KS_CAVEAT,),
    )


def ad_statistic(sample: Sequence[float], spec: DistributionSpec) -> float:
    x = np.sort(as_sample(sample))
    n = len(x)
    if n == 0:
        raise DomainError("empty sample")
    f = np.clip([spec.cdf(v) for v in x], _AD_EPS, 1.0 - _AD_EPS)
    i = np.arange(1, n + 1)
    s = np.sum((2 * i - 1) * (np.log(f) + np.log1p(-f[::-1])))
    return float(-n - s / n)


def ad_critical(spec: DistributionSpec, n: int, alpha: float = 0.05, estimated: bool = True) -> float:
    """Anderson-Darling critical value with Stephens' small-sample modification.

    For estimated normal/lognormal parameters the tabulated value is divided
    by ``1 + 0.75/n + 2.25/n**2``; for an estimated exponential rate by
    ``1 + 0.6/n``.
    """
    if not estimated:
        return _lookup(AD_FULLY_SPECIFIED, alpha, "Anderson-Darling")
    if spec.family == "exponential":
        return _lookup(AD_EXPONENTIAL_ESTIMATED, alpha, "Anderson-Darling") / (1.0 + 0.6 / n)
    base = _lookup(AD_NORMAL_ESTIMATED, alpha, "Anderson-Darling")
    return base / (1.0 + 0.75 / n + 2.25 / n**2)


def ad_test(
    sample: Sequence[float],
    spec: DistributionSpec,
    alpha: float = 0.05,
    estimated: bool = True,
) -> GofReport:
    """Anderson-Darling test of ``sample`` against ``spec``.

    ``estimated`` says whether ``spec`` was fitted to this same sample, which
    selects the critical-value table.
    """
    stat = ad_statistic(sample, spec)
    n = len(sample)
    crit = ad_critical(spec, n, alpha, estimated)
    return GofReport(
        test="ad",
        statistic=stat,
        alpha=alpha,
        critical_value=crit,
        reject_null=stat > crit,
        n=n,
    )
