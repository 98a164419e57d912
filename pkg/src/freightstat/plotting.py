"""Figures written next to CLI reports (PNG/PDF/SVG by file extension)."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

FIGSIZE = (6.4, 4.0)
BAR_COLOR = "#4c72b0"
LINE_COLOR = "#c44e52"


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    # fixed metadata keeps repeated renders byte-stable for PNG
    fig.savefig(path, dpi=100, metadata={"Software": None} if path.suffix == ".png" else None)
    plt.close(fig)
    return path


def histogram(
    edges: Sequence[float],
    counts: Sequence[int],
    path,
    expected: Optional[Sequence[float]] = None,
    xlabel: str = "",
    title: str = "",
) -> Path:
    """Bar histogram; an open final bin is drawn one neighbouring bin-width wide."""
    edges = list(edges)
    if math.isinf(edges[-1]):
        width = edges[-2] - edges[-3] if len(edges) > 2 else 1.0
        edges[-1] = edges[-2] + width
    lefts = np.asarray(edges[:-1])
    widths = np.diff(edges)
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.bar(lefts, counts, width=widths, align="edge", color=BAR_COLOR, edgecolor="white", label="observed")
    if expected is not None:
        ax.plot(lefts + widths / 2, expected, "o-", color=LINE_COLOR, label="expected")
        ax.legend(frameon=False)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("frequency")
    if title:
        ax.set_title(title)
    return _save(fig, path)


def regression(x, y, fitted, path, xlabel: str = "", ylabel: str = "") -> Path:
    """Scatter with the fitted line (one predictor) or observed-vs-fitted (several)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    fitted = np.asarray(fitted, dtype=float)
    fig, ax = plt.subplots(figsize=FIGSIZE)
    if x.ndim == 1:
        order = np.argsort(x)
        ax.scatter(x, y, color=BAR_COLOR, zorder=3)
        ax.plot(x[order], fitted[order], color=LINE_COLOR)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
    else:
        ax.scatter(fitted, y, color=BAR_COLOR, zorder=3)
        lo, hi = min(fitted.min(), y.min()), max(fitted.max(), y.max())
        ax.plot([lo, hi], [lo, hi], color=LINE_COLOR, ls="--")
        ax.set_xlabel(f"fitted {ylabel}".strip())
        ax.set_ylabel(f"observed {ylabel}".strip())
    return _save(fig, path)


def fuzzy_bands(y, lower, upper, center, path, ylabel: str = "") -> Path:
    """Observed values against their fuzzy prediction ranges, one column per observation."""
    idx = np.arange(1, len(y) + 1)
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.vlines(idx, lower, upper, color=BAR_COLOR, lw=6, alpha=0.35, label="predicted range")
    ax.plot(idx, center, "_", color=LINE_COLOR, ms=14, label="center")
    ax.plot(idx, y, "ko", ms=4, label="observed")
    ax.set_xlabel("observation")
    ax.set_ylabel(ylabel)
    ax.legend(frameon=False)
    return _save(fig, path)


def crosstab(row_labels, col_labels, counts, path, rows_name: str = "", cols_name: str = "") -> Path:
    """Grouped bars: one group per row category."""
    counts = np.asarray(counts, dtype=float)
    r, c = counts.shape
    width = 0.8 / c
    fig, ax = plt.subplots(figsize=FIGSIZE)
    base = np.arange(r)
    for j in range(c):
        ax.bar(base + j * width, counts[:, j], width=width, label=f"{cols_name}={col_labels[j]}")
    ax.set_xticks(base + 0.4 - width / 2)
    ax.set_xticklabels(row_labels)
    ax.set_xlabel(rows_name)
    ax.set_ylabel("count")
    ax.legend(frameon=False)
    return _save(fig, path)
