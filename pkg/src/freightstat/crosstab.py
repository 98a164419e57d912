"""Cross-tabulation of two categorical variables and the chi-square test of independence."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DomainError
from .gof import GofReport, chi2_critical, chi2_sf

SMALL_EXPECTED = 5.0


@dataclass(frozen=True)
class ContingencyTable:
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    counts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        arr = np.asarray(self.counts)
        if arr.shape != (len(self.row_labels), len(self.col_labels)):
            raise DomainError("counts shape does not match the labels")
        if (arr < 0).any():
            raise DomainError("counts must be non-negative")
        if len(set(self.row_labels)) != len(self.row_labels) or len(set(self.col_labels)) != len(
            self.col_labels
        ):
            raise DomainError("row and column labels must be unique")

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=float)

    @property
    def row_totals(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.counts)

    @property
    def col_totals(self) -> tuple[int, ...]:
        return tuple(sum(c) for c in zip(*self.counts))

    @property
    def grand_total(self) -> int:
        return sum(self.row_totals)

    def as_dict(self) -> dict:
        return {
            "row_labels": list(self.row_labels),
            "col_labels": list(self.col_labels),
            "counts": [list(r) for r in self.counts],
            "row_totals": list(self.row_totals),
            "col_totals": list(self.col_totals),
            "grand_total": self.grand_total,
        }


def tabulate(pairs: Iterable[tuple[str, str]]) -> ContingencyTable:
    """Count (row, column) category pairs; labels keep first-appearance order.

    Categories are compared after stripping surrounding whitespace only.
    """
    rows: dict[str, int] = {}
    cols: dict[str, int] = {}
    cells: dict[tuple[int, int], int] = {}
    for r, c in pairs:
        r, c = str(r).strip(), str(c).strip()
        i = rows.setdefault(r, len(rows))
        j = cols.setdefault(c, len(cols))
        cells[i, j] = cells.get((i, j), 0) + 1
    if not cells:
        raise DomainError("cannot tabulate an empty set of pairs")
    counts = tuple(tuple(cells.get((i, j), 0) for j in range(len(cols))) for i in range(len(rows)))
    return ContingencyTable(tuple(rows), tuple(cols), counts)


def expected_table(table: ContingencyTable) -> np.ndarray:
    """Expected cell counts under independence, ``T_i * T_j / N``."""
    n = table.grand_total
    if n <= 0:
        raise DomainError("table is empty")
    return np.outer(table.row_totals, table.col_totals) / n


def independence_test(table: ContingencyTable, alpha: float = 0.05) -> GofReport:
    """Pearson chi-square test of independence, df = (r-1)(c-1).

    No continuity correction is applied, 2x2 included.
    """
    obs = table.array
    exp = expected_table(table)
    if (exp <= 0.0).any():
        i, j = np.argwhere(exp <= 0.0)[0]
        raise DomainError(
            f"expected count is zero in cell ({table.row_labels[i]}, {table.col_labels[j]}); "
            "drop empty categories"
        )
    r, c = obs.shape
    df = (r - 1) * (c - 1)
    if df < 1:
        raise DomainError("independence test needs at least two rows and two columns")
    stat = float(np.sum((obs - exp) ** 2 / exp))
    crit = chi2_critical(df, alpha)
    warns = ()
    if (exp < SMALL_EXPECTED).any():
        warns = (
            f"{int((exp < SMALL_EXPECTED).sum())} expected cell(s) below {SMALL_EXPECTED:g}; "
            "chi-square approximation may be incorrect",
        )
    return GofReport(
        test="chi_square",
        statistic=stat,
        alpha=alpha,
        critical_value=crit,
        reject_null=stat > crit,
        df=df,
        p_value=chi2_sf(stat, df),
        n=table.grand_total,
        warnings=warns,
    )
