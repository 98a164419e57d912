"""Tanaka fuzzy linear regression.

Each coefficient is a symmetric fuzzy number with center ``a_k`` and radius
``c_k >= 0``. The fit minimises total spread ``sum_k c_k sum_i x_ik`` subject
to every observation lying inside its h-level band::

    sum_k a_k x_ik + (1 - h) sum_k c_k x_ik >= y_i
    sum_k a_k x_ik - (1 - h) sum_k c_k x_ik <= y_i

with ``x_i0 = 1``. The spread objective is only meaningful for non-negative
predictors, so negative predictor values are rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import DomainError
from .lp import Constraint, LpProblem, LpSolution, solve
from .stats import as_sample

DEFAULT_H = 0.9
COVERAGE_TOL = 1e-6


class Interval(NamedTuple):
    lower: float
    upper: float
    midpoint: float


@dataclass(frozen=True)
class FuzzyModel:
    centers: tuple[float, ...]
    radii: tuple[float, ...]
    h: float
    names: tuple[str, ...]
    objective: float = math.nan

    @property
    def p(self) -> int:
        return len(self.names)

    def predict_interval(self, point) -> Interval:
        return predict_interval(self, point)

    def as_dict(self) -> dict:
        labels = ("(intercept)",) + self.names
        return {
            "h": self.h,
            "centers": dict(zip(labels, self.centers)),
            "radii": dict(zip(labels, self.radii)),
            "lower_coefficients": dict(zip(labels, (a - c for a, c in zip(self.centers, self.radii)))),
            "upper_coefficients": dict(zip(labels, (a + c for a, c in zip(self.centers, self.radii)))),
            "objective": self.objective,
        }


def _check_inputs(predictors, y, h):
    y = as_sample(y, "y")
    if len(y) < 1:
        raise DomainError("fuzzy regression needs at least one observation")
    x = np.asarray(predictors, dtype=float)
    if x.ndim == 1:
        if x.size % len(y):
            raise DomainError("predictor rows and y must have the same length")
        x = x.reshape(len(y), -1)
    if x.ndim != 2 or x.shape[0] != len(y):
        raise DomainError("predictor rows and y must have the same length")
    if not np.isfinite(x).all():
        raise DomainError("predictors contain non-finite values")
    if not 0.0 <= h < 1.0:
        raise DomainError("certainty factor h must satisfy 0 <= h < 1 (h = 1 collapses every band)")
    neg = np.argwhere(x < 0.0)
    if neg.size:
        i, j = neg[0]
        raise DomainError(
            f"predictor {j + 1} is negative at row {i + 1}; the spread objective requires non-negative predictors"
        )
    return x, y


def build_lp(predictors, y: Sequence[float], h: float = DEFAULT_H, names: Optional[Sequence[str]] = None) -> LpProblem:
    """LP over ``(a_0..a_p, c_0..c_p)``: centers free, radii non-negative."""
    x, y = _check_inputs(predictors, y, h)
    n, p = x.shape
    names = tuple(names) if names is not None else tuple(f"x{j + 1}" for j in range(p))
    if len(names) != p:
        raise DomainError("one name per predictor column is required")
    design = np.column_stack([np.ones(n), x])
    objective = tuple([0.0] * (p + 1) + [float(v) for v in design.sum(axis=0)])
    cons = []
    w = 1.0 - h
    for row, yi in zip(design, y):
        cons.append(Constraint(tuple(row) + tuple(w * row), ">=", float(yi)))
        cons.append(Constraint(tuple(row) + tuple(-w * row), "<=", float(yi)))
    bounds = ((-math.inf, math.inf),) * (p + 1) + ((0.0, math.inf),) * (p + 1)
    var_names = tuple(f"a{k}" for k in range(p + 1)) + tuple(f"c{k}" for k in range(p + 1))
    return LpProblem(objective, tuple(cons), bounds, var_names)


class FuzzyFitError(DomainError):
    def __init__(self, solution: LpSolution):
        super().__init__(f"fuzzy LP did not solve: {solution.status} ({solution.message})")
        self.solution = solution


def fit(predictors, y: Sequence[float], h: float = DEFAULT_H, names: Optional[Sequence[str]] = None) -> FuzzyModel:
    """Fit a fuzzy linear model and check every observation is covered."""
    x, yv = _check_inputs(predictors, y, h)
    p = x.shape[1]
    names = tuple(names) if names is not None else tuple(f"x{j + 1}" for j in range(p))
    problem = build_lp(x, yv, h, names)
    sol = solve(problem)
    if not sol.optimal:
        raise FuzzyFitError(sol)
    values = sol.variable_values
    model = FuzzyModel(
        centers=tuple(values[: p + 1]),
        radii=tuple(max(v, 0.0) for v in values[p + 1 :]),
        h=h,
        names=names,
        objective=sol.objective_value,
    )
    lo, hi = coverage_bounds(model, x)
    design = np.column_stack([np.ones(len(x)), x])
    scale = np.maximum(np.maximum(1.0, np.abs(yv)), design @ (np.abs(model.centers) + np.abs(model.radii)))
    if ((lo - yv) > COVERAGE_TOL * scale).any() or ((yv - hi) > COVERAGE_TOL * scale).any():
        raise DomainError("fitted fuzzy model fails to cover the training data")
    return model


def coverage_bounds(model: FuzzyModel, predictors) -> tuple[np.ndarray, np.ndarray]:
    """Lower/upper ends of the h-level band at each row of ``predictors``."""
    x = np.asarray(predictors, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    design = np.column_stack([np.ones(len(x)), x])
    center = design @ np.asarray(model.centers)
    spread = (1.0 - model.h) * (np.abs(design) @ np.asarray(model.radii))
    return center - spread, center + spread


def predict_interval(model: FuzzyModel, point) -> Interval:
    """Range ``[sum (a_k - c_k) x_k, sum (a_k + c_k) x_k]`` with ``x_0 = 1``."""
    if isinstance(point, dict):
        missing = [n for n in model.names if n not in point]
        extra = [k for k in point if k not in model.names]
        if missing or extra:
            raise DomainError(f"prediction point mismatch: missing {missing}, unexpected {extra}")
        point = [point[n] for n in model.names]
    x = np.atleast_1d(np.asarray(point, dtype=float))
    if x.shape != (model.p,):
        raise DomainError(f"expected a point with {model.p} value(s), got {x.size}")
    if (x < 0.0).any():
        raise DomainError("prediction point must be non-negative")
    full = np.concatenate([[1.0], x])
    a = np.asarray(model.centers)
    c = np.asarray(model.radii)
    lower = float(full @ (a - c))
    upper = float(full @ (a + c))
    return Interval(lower, upper, float(full @ a))
