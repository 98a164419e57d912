"""Lognormal, normal and exponential families: CDF/PDF, maximum likelihood fits."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError
from .stats import as_sample

FAMILIES = ("lognormal", "normal", "exponential")

PARAM_NAMES = {
    "lognormal": ("meanlog", "sdlog"),
    "normal": ("mean", "sd"),
    "exponential": ("rate",),
}

_SQRT2 = math.sqrt(2.0)
_SQRTPI = math.sqrt(math.pi)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


def _erfc_positive(x: float) -> float:
    if x < 3.0:
        # erf(x) = 2/sqrt(pi) exp(-x^2) sum_k 2^k x^(2k+1) / (1*3*...*(2k+1));
        # every term is positive so nothing cancels.
        term = x
        total = x
        two_x2 = 2.0 * x * x
        k = 0
        while term > 1e-17 * total:
            k += 1
            term *= two_x2 / (2 * k + 1)
            total += term
        return 1.0 - 2.0 / _SQRTPI * math.exp(-x * x) * total
    # continued fraction
    #   erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    # evaluated with the modified Lentz method.
    tiny = 1e-300
    f = x
    c = x
    d = 0.0
    for j in range(1, 500):
        a = 0.5 * j
        d = x + a * d
        d = 1.0 / (d if d != 0.0 else tiny)
        c = x + a / c
        if c == 0.0:
            c = tiny
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return math.exp(-x * x) / (_SQRTPI * f)


def erfc(x: float) -> float:
    """Complementary error function, accurate to ~1e-15 absolute."""
    if math.isnan(x):
        return math.nan
    if x < 0.0:
        return 2.0 - _erfc_positive(-x)
    return _erfc_positive(x)


def std_normal_cdf(z: float) -> float:
    """Standard normal CDF, ``0.5 * erfc(-z / sqrt(2))``."""
    return 0.5 * erfc(-z / _SQRT2)


@dataclass(frozen=True)
class DistributionSpec:
    family: str
    params: tuple[float, ...]

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        params = tuple(float(p) for p in self.params)
        if len(params) != len(PARAM_NAMES[self.family]):
            raise DomainError(f"{self.family} takes parameters {PARAM_NAMES[self.family]}")
        if not all(math.isfinite(p) for p in params):
            raise DomainError("distribution parameters must be finite")
        if params[-1] <= 0.0:
            raise DomainError(f"{PARAM_NAMES[self.family][-1]} must be positive")
        object.__setattr__(self, "params", params)

    @classmethod
    def lognormal(cls, meanlog: float, sdlog: float) -> "DistributionSpec":
        return cls("lognormal", (meanlog, sdlog))

    @classmethod
    def normal(cls, mean: float, sd: float) -> "DistributionSpec":
        return cls("normal", (mean, sd))

    @classmethod
    def exponential(cls, rate: float) -> "DistributionSpec":
        return cls("exponential", (rate,))

    @property
    def param_names(self) -> tuple[str, ...]:
        return PARAM_NAMES[self.family]

    def cdf(self, x: float) -> float:
        x = float(x)
        if math.isinf(x):
            return 1.0 if x > 0 else 0.0
        if self.family == "lognormal":
            if x <= 0.0:
                return 0.0
            mu, sigma = self.params
            return std_normal_cdf((math.log(x) - mu) / sigma)
        if self.family == "normal":
            mu, sigma = self.params
            return std_normal_cdf((x - mu) / sigma)
        (rate,) = self.params
        return 0.0 if x <= 0.0 else -math.expm1(-rate * x)

    def logpdf(self, x: float) -> float:
        x = float(x)
        if self.family == "lognormal":
            if x <= 0.0:
                return -math.inf
            mu, sigma = self.params
            z = (math.log(x) - mu) / sigma
            return -math.log(x) - math.log(sigma) - _LOG_SQRT_2PI - 0.5 * z * z
        if self.family == "normal":
            mu, sigma = self.params
            z = (x - mu) / sigma
            return -math.log(sigma) - _LOG_SQRT_2PI - 0.5 * z * z
        (rate,) = self.params
        return -math.inf if x < 0.0 else math.log(rate) - rate * x

    def pdf(self, x: float) -> float:
        return math.exp(self.logpdf(x))

    def loglik(self, sample: Sequence[float]) -> float:
        return math.fsum(self.logpdf(v) for v in sample)


def cdf(spec: DistributionSpec, x: float) -> float:
    return spec.cdf(x)


@dataclass(frozen=True)
class FitResult:
    """Maximum likelihood fit with fit-quality metadata.

    ``std_errors`` come from the observed information matrix, evaluated by
    central finite differences (step 1e-3) of the negative log-likelihood.
    ``asymptotic_std_errors`` are the exact closed forms of the same quantity.
    """

    spec: DistributionSpec
    n: int
    loglik: float
    aic: float
    bic: float
    std_errors: tuple[float, ...]
    asymptotic_std_errors: tuple[float, ...] = field(default=())

    @property
    def n_params(self) -> int:
        return len(self.spec.params)

    def as_dict(self) -> dict:
        names = self.spec.param_names
        return {
            "family": self.spec.family,
            "n": self.n,
            "estimates": dict(zip(names, self.spec.params)),
            "std_errors": dict(zip(names, self.std_errors)),
            "asymptotic_std_errors": dict(zip(names, self.asymptotic_std_errors)),
            "loglik": self.loglik,
            "aic": self.aic,
            "bic": self.bic,
        }


def _check_positive(x: np.ndarray, family: str) -> None:
    bad = np.flatnonzero(x <= 0.0)
    if bad.size:
        raise DomainError(
            f"{family} requires strictly positive observations; "
            f"index {bad[0]} has value {x[bad[0]]!r}"
        )


def _numeric_std_errors(family: str, params: Sequence[float], x: np.ndarray, step: float = 1e-3):
    def nll(p):
        return -DistributionSpec(family, tuple(p)).loglik(x)

    def grad(p):
        g = np.empty(len(p))
        for i in range(len(p)):
            e = np.zeros(len(p))
            e[i] = step
            g[i] = (nll(p + e) - nll(p - e)) / (2.0 * step)
        return g

    p0 = np.asarray(params, dtype=float)
    k = len(p0)
    hess = np.empty((k, k))
    for i in range(k):
        e = np.zeros(k)
        e[i] = step
        hess[i] = (grad(p0 + e) - grad(p0 - e)) / (2.0 * step)
    hess = 0.5 * (hess + hess.T)
    try:
        cov = np.linalg.inv(hess)
    except np.linalg.LinAlgError:
        return tuple(math.nan for _ in range(k))
    return tuple(float(math.sqrt(v)) if v > 0 else math.nan for v in np.diag(cov))


def fit_mle(sample: Sequence[float], family: str) -> FitResult:
    """Fit ``family`` to ``sample`` by maximum likelihood.

    Lognormal and normal use the divisor-n standard deviation (of ``ln x``
    and ``x`` respectively); exponential uses ``rate = 1 / mean``.
    """
    if family not in FAMILIES:
        raise DomainError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    x = as_sample(sample)
    n = len(x)
    if n < 2:
        raise DomainError("maximum likelihood fitting needs at least 2 observations")
    if family in ("lognormal", "exponential"):
        _check_positive(x, family)

    if family == "exponential":
        rate = 1.0 / float(np.mean(x))
        params: tuple[float, ...] = (rate,)
        closed = (rate / math.sqrt(n),)
    else:
        data = np.log(x) if family == "lognormal" else x
        mu = float(np.mean(data))
        sigma = float(np.sqrt(np.mean((data - mu) ** 2)))
        if sigma <= 0.0:
            raise DomainError(f"{family} fit is degenerate: all observations are equal")
        params = (mu, sigma)
        closed = (sigma / math.sqrt(n), sigma / math.sqrt(2.0 * n))

    spec = DistributionSpec(family, params)
    loglik = spec.loglik(x)
    k = len(params)
    return FitResult(
        spec=spec,
        n=n,
        loglik=loglik,
        aic=2.0 * k - 2.0 * loglik,
        bic=k * math.log(n) - 2.0 * loglik,
        std_errors=_numeric_std_errors(family, params, x),
        asymptotic_std_errors=closed,
    )
