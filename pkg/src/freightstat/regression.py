"""Least-squares regression: simple, two-predictor closed form, and general OLS."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError
from .stats import as_sample

PIVOT_TOL = 1e-10


@dataclass(frozen=True)
class SumsOfSquares:
    n: int
    sum_x: float
    sum_y: float
    sum_x2: float
    sum_y2: float
    sum_xy: float
    ss_x: float
    ss_y: float
    ss_xy: float


def sums_of_squares(x: Sequence[float], y: Sequence[float]) -> SumsOfSquares:
    x = as_sample(x, "x")
    y = as_sample(y, "y")
    if len(x) != len(y):
        raise DomainError("x and y must have the same length")
    n = len(x)
    if n == 0:
        raise DomainError("empty sample")
    sx, sy = float(np.sum(x)), float(np.sum(y))
    sx2, sy2, sxy = float(x @ x), float(y @ y), float(x @ y)
    # centred sums: same values as sum(x^2) - (sum x)^2 / n without the cancellation
    xc, yc = x - sx / n, y - sy / n
    return SumsOfSquares(
        n=n,
        sum_x=sx,
        sum_y=sy,
        sum_x2=sx2,
        sum_y2=sy2,
        sum_xy=sxy,
        ss_x=float(xc @ xc),
        ss_y=float(yc @ yc),
        ss_xy=float(xc @ yc),
    )


@dataclass(frozen=True)
class LinearModel:
    intercept: float
    coefficients: tuple[float, ...]
    names: tuple[str, ...]
    r_squared: float
    adj_r_squared: float
    residual_std_error: float
    df_residual: int
    n: int
    sse: float
    std_errors: tuple[float, ...] = field(default=())

    @property
    def p(self) -> int:
        return len(self.coefficients)

    def predict(self, point) -> float:
        return predict(self, point)

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["coefficients"] = dict(zip(self.names, self.coefficients))
        d["names"] = list(self.names)
        d["std_errors"] = dict(zip(("(intercept)",) + self.names, self.std_errors))
        return d


def predict(model: LinearModel, point) -> float:
    """``b0 + sum_j b_j * x_j``; ``point`` is a sequence or a name -> value mapping."""
    if isinstance(point, dict):
        missing = [n for n in model.names if n not in point]
        extra = [k for k in point if k not in model.names]
        if missing or extra:
            raise DomainError(f"prediction point mismatch: missing {missing}, unexpected {extra}")
        point = [point[n] for n in model.names]
    x = np.atleast_1d(np.asarray(point, dtype=float))
    if x.shape != (model.p,):
        raise DomainError(f"expected a point with {model.p} value(s), got {x.size}")
    return model.intercept + float(np.dot(model.coefficients, x))


def gauss_solve(a: np.ndarray, b: np.ndarray, names: Optional[Sequence[str]] = None) -> np.ndarray:
    """Solve ``a @ x = b`` for symmetric positive semi-definite ``a``.

    Gaussian elimination with partial pivoting on the diagonally equilibrated
    system. A pivot below 1e-10 means column k is a linear combination of the
    earlier columns and raises a DomainError naming it.
    """
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    vector = b.ndim == 1
    if vector:
        b = b[:, None]
    m = a.shape[0]
    names = list(names) if names is not None else [f"column {j}" for j in range(m)]
    diag = np.diag(a).copy()
    zero = np.flatnonzero(diag <= 0.0)
    if zero.size:
        raise DomainError(f"design matrix is rank deficient: {names[zero[0]]} is identically zero")
    scale = 1.0 / np.sqrt(diag)
    a = a * scale[:, None] * scale[None, :]
    b = b * scale[:, None]

    for k in range(m):
        piv = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[piv, k]) < PIVOT_TOL:
            raise DomainError(
                f"design matrix is rank deficient: {names[k]} is a linear combination of earlier columns"
            )
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            b[[k, piv]] = b[[piv, k]]
        factors = a[k + 1 :, k] / a[k, k]
        a[k + 1 :, k:] -= factors[:, None] * a[k, k:]
        b[k + 1 :] -= factors[:, None] * b[k]

    x = np.zeros_like(b)
    for k in range(m - 1, -1, -1):
        x[k] = (b[k] - a[k, k + 1 :] @ x[k + 1 :]) / a[k, k]
    x *= scale[:, None]
    return x[:, 0] if vector else x


def _finish(design: np.ndarray, y: np.ndarray, beta: np.ndarray, names: tuple[str, ...]) -> LinearModel:
    n, m = design.shape
    p = m - 1
    df = n - p - 1
    resid = y - design @ beta
    sse = float(resid @ resid)
    yc = y - y.mean()
    ss_y = float(yc @ yc)
    if ss_y > 0.0:
        r2 = min(max(1.0 - sse / ss_y, 0.0), 1.0)
    else:
        r2 = 1.0
    adj = 1.0 - (1.0 - r2) * (n - 1) / df
    rse = math.sqrt(sse / df)
    cov = gauss_solve(design.T @ design, np.eye(m), ("(intercept)",) + names) * rse**2
    se = tuple(float(math.sqrt(max(v, 0.0))) for v in np.diag(cov))
    return LinearModel(
        intercept=float(beta[0]),
        coefficients=tuple(float(v) for v in beta[1:]),
        names=names,
        r_squared=r2,
        adj_r_squared=adj,
        residual_std_error=rse,
        df_residual=df,
        n=n,
        sse=sse,
        std_errors=se,
    )


def simple_ols(x: Sequence[float], y: Sequence[float], name: str = "x") -> LinearModel:
    """Least-squares line ``y = b0 + b1 x`` with ``b1 = SS(xy)/SS(x)``."""
    ss = sums_of_squares(x, y)
    if ss.n < 3:
        raise DomainError("simple regression needs at least 3 observations")
    if ss.ss_x <= 0.0:
        raise DomainError("degenerate predictor: x is constant")
    b1 = ss.ss_xy / ss.ss_x
    b0 = ss.sum_y / ss.n - b1 * ss.sum_x / ss.n
    design = np.column_stack([np.ones(ss.n), as_sample(x)])
    return _finish(design, as_sample(y), np.array([b0, b1]), (name,))


def pearson_r(x: Sequence[float], y: Sequence[float]) -> float:
    """``SS(xy) / sqrt(SS(x) SS(y))``."""
    ss = sums_of_squares(x, y)
    if ss.n < 2:
        raise DomainError("correlation needs at least 2 observations")
    if ss.ss_x <= 0.0 or ss.ss_y <= 0.0:
        raise DomainError("correlation is undefined for a zero-variance variable")
    r = ss.ss_xy / math.sqrt(ss.ss_x * ss.ss_y)
    return min(max(r, -1.0), 1.0)


def _raw_sum_r(u: np.ndarray, v: np.ndarray) -> float:
    n = len(u)
    num = n * (u @ v) - u.sum() * v.sum()
    den = math.sqrt(n * (u @ u) - u.sum() ** 2) * math.sqrt(n * (v @ v) - v.sum() ** 2)
    return float(num / den)


def two_var_ols_closed_form(
    x1: Sequence[float],
    x2: Sequence[float],
    y: Sequence[float],
    names: tuple[str, str] = ("x1", "x2"),
) -> LinearModel:
    """Two-predictor regression from pairwise correlations and standard deviations.

    b1 = (r_y1 - r_y2 r_12) / (1 - r_12^2) * sd_y / sd_1, symmetrically for b2,
    and b0 = ybar - b1 x1bar - b2 x2bar. Standard deviations use divisor n-1.
    """
    x1, x2, y = as_sample(x1, "x1"), as_sample(x2, "x2"), as_sample(y, "y")
    if not len(x1) == len(x2) == len(y):
        raise DomainError("x1, x2 and y must have the same length")
    n = len(y)
    if n < 4:
        raise DomainError("two-predictor regression needs at least 4 observations")
    sd = [float(np.std(v, ddof=1)) for v in (y, x1, x2)]
    if min(sd) <= 0.0:
        raise DomainError("degenerate predictor: zero standard deviation")
    r_y1, r_y2, r_12 = _raw_sum_r(y, x1), _raw_sum_r(y, x2), _raw_sum_r(x1, x2)
    if abs(r_12) >= 1.0 - 1e-12:
        raise DomainError("predictors are perfectly collinear")
    den = 1.0 - r_12**2
    b1 = (r_y1 - r_y2 * r_12) / den * sd[0] / sd[1]
    b2 = (r_y2 - r_y1 * r_12) / den * sd[0] / sd[2]
    b0 = y.mean() - b1 * x1.mean() - b2 * x2.mean()
    design = np.column_stack([np.ones(n), x1, x2])
    return _finish(design, y, np.array([b0, b1, b2]), tuple(names))


def general_ols(predictors, y: Sequence[float], names: Optional[Sequence[str]] = None) -> LinearModel:
    """OLS with an intercept for an n x p predictor matrix via the normal equations."""
    y = as_sample(y, "y")
    x = np.asarray(predictors, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    n, p = x.shape
    if n != len(y):
        raise DomainError("predictor rows and y must have the same length")
    if not np.isfinite(x).all():
        raise DomainError("predictors contain non-finite values")
    if n < p + 2:
        raise DomainError(f"need at least {p + 2} observations for {p} predictor(s)")
    names = tuple(names) if names is not None else tuple(f"x{j + 1}" for j in range(p))
    if len(names) != p:
        raise DomainError("one name per predictor column is required")
    design = np.column_stack([np.ones(n), x])
    beta = gauss_solve(design.T @ design, design.T @ y, ("(intercept)",) + names)
    return _finish(design, y, beta, names)
