"""Descriptive statistics and histogram binning for one continuous variable."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError


def as_sample(values, name: str = "sample") -> np.ndarray:
    """Validate ``values`` as a 1-D array of finite floats."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise DomainError(f"{name} must be one-dimensional")
    bad = np.flatnonzero(~np.isfinite(arr))
    if bad.size:
        raise DomainError(f"{name} has a non-finite value at index {bad[0]}")
    return arr


def quantile(sorted_values: np.ndarray, p: float) -> float:
    # linear interpolation at position p*(n-1) (0-based), a.k.a. type 7
    n = len(sorted_values)
    h = p * (n - 1)
    lo = math.floor(h)
    hi = min(lo + 1, n - 1)
    return float(sorted_values[lo] + (h - lo) * (sorted_values[hi] - sorted_values[lo]))


@dataclass(frozen=True)
class SummaryStats:
    n: int
    mean: float
    median: float
    mode: tuple[float, ...]
    min: float
    max: float
    range: float
    q1: float
    q3: float
    iqr: float
    variance: float
    std_dev: float
    skewness: float
    kurtosis_excess: float

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["mode"] = list(self.mode)
        return d


def summarize(sample: Sequence[float]) -> SummaryStats:
    """Central tendency and dispersion of a sample.

    Quartiles use linear interpolation between order statistics. Variance
    uses the n-1 divisor; skewness and excess kurtosis are moment ratios
    built from divisor-n central moments, and are NaN for a constant sample.
    """
    x = as_sample(sample)
    n = len(x)
    if n == 0:
        raise DomainError("empty sample")
    xs = np.sort(x)
    mean = float(np.mean(x))
    dev = x - mean
    m2 = float(np.mean(dev**2))
    if m2**2 > 0.0:
        skew = float(np.mean(dev**3)) / m2**1.5
        kurt = float(np.mean(dev**4)) / m2**2 - 3.0
    else:
        skew = kurt = math.nan
    variance = float(np.sum(dev**2)) / (n - 1) if n > 1 else math.nan
    counts = Counter(xs.tolist())
    top = max(counts.values())
    mode = tuple(sorted(v for v, c in counts.items() if c == top)) if top > 1 else ()
    q1 = quantile(xs, 0.25)
    q3 = quantile(xs, 0.75)
    return SummaryStats(
        n=n,
        mean=mean,
        median=quantile(xs, 0.5),
        mode=mode,
        min=float(xs[0]),
        max=float(xs[-1]),
        range=float(xs[-1] - xs[0]),
        q1=q1,
        q3=q3,
        iqr=q3 - q1,
        variance=variance,
        std_dev=math.sqrt(variance),
        skewness=skew,
        kurtosis_excess=kurt,
    )


@dataclass(frozen=True)
class BinSpec:
    """Contiguous bins between consecutive ``edges``.

    A final edge of ``math.inf`` makes the last bin open-ended (``> edge``).
    """

    edges: tuple[float, ...]

    def __post_init__(self):
        edges = tuple(float(e) for e in self.edges)
        if len(edges) < 2:
            raise DomainError("a bin spec needs at least two edges")
        if any(math.isnan(e) for e in edges) or math.isinf(edges[0]):
            raise DomainError("bin edges must be real with a finite first edge")
        if any(b <= a for a, b in zip(edges, edges[1:])):
            raise DomainError("bin edges must be strictly increasing")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def open_ended(cls, edges: Sequence[float]) -> "BinSpec":
        """Bins between consecutive ``edges`` plus a final ``> edges[-1]`` bin."""
        return cls(tuple(edges) + (math.inf,))

    @property
    def k(self) -> int:
        return len(self.edges) - 1

    @property
    def open_last(self) -> bool:
        return math.isinf(self.edges[-1])

    def intervals(self) -> list[tuple[float, float]]:
        return list(zip(self.edges, self.edges[1:]))

    def labels(self) -> list[str]:
        out = []
        for lo, hi in self.intervals():
            out.append(f"> {lo:g}" if math.isinf(hi) else f"{lo:g}-{hi:g}")
        return out


@dataclass(frozen=True)
class Histogram:
    spec: BinSpec
    counts: tuple[int, ...]
    below: int = 0
    above: int = 0

    @property
    def covered(self) -> int:
        return sum(self.counts)

    @property
    def uncovered(self) -> int:
        return self.below + self.above


def bin_sample(sample: Sequence[float], spec: BinSpec, closed: str = "right") -> Histogram:
    """Count observations per bin.

    ``closed="right"`` uses ``(lower, upper]`` intervals with the first bin
    also including its lower edge; ``closed="left"`` uses ``[lower, upper)``.
    Values outside the bins are tallied in ``below``/``above`` rather than
    dropped.
    """
    if closed not in ("left", "right"):
        raise DomainError("closed must be 'left' or 'right'")
    x = as_sample(sample)
    edges = np.asarray(spec.edges)
    if closed == "left":
        idx = np.searchsorted(edges, x, side="right") - 1
    else:
        idx = np.searchsorted(edges, x, side="left") - 1
        idx[x == edges[0]] = 0
    below = int(np.sum(idx < 0))
    above = int(np.sum(idx >= spec.k))
    inside = idx[(idx >= 0) & (idx < spec.k)]
    counts = np.bincount(inside, minlength=spec.k)
    return Histogram(spec, tuple(int(c) for c in counts), below, above)
