"""CSV ingestion with numeric/categorical column inference."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional, Sequence, Union

from .errors import DomainError

NUMERIC = "numeric"
CATEGORICAL = "categorical"


class DataError(DomainError):
    """Malformed input file or a column unsuitable for the requested analysis."""


def _parse_float(text: str) -> Optional[float]:
    try:
        v = float(text)
    except ValueError:
        return None
    return v if math.isfinite(v) else None


@dataclass(frozen=True)
class Column:
    name: str
    kind: str
    values: tuple  # floats / strings, None where missing


@dataclass(frozen=True)
class Dataset:
    columns: tuple[Column, ...]
    source: str = ""

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.columns]

    @property
    def n(self) -> int:
        return len(self.columns[0].values) if self.columns else 0

    def column(self, name: str) -> Column:
        for c in self.columns:
            if c.name == name:
                return c
        raise DataError(f"unknown column {name!r}; available: {', '.join(self.names)}")

    def numeric(self, name: str) -> Column:
        col = self.column(name)
        if col.kind != NUMERIC:
            raise DataError(f"column {name!r} is categorical; this analysis needs a numeric column")
        return col

    def categorical(self, name: str) -> Column:
        return self.column(name)

    def complete_rows(self, names: Sequence[str]) -> tuple[list[tuple], int]:
        """Rows (restricted to ``names``) with no missing cell, and the count dropped."""
        cols = [self.column(n).values for n in names]
        rows = list(zip(*cols))
        kept = [r for r in rows if all(v is not None for v in r)]
        return kept, len(rows) - len(kept)


def load_csv(
    path: Union[str, Path],
    delimiter: str = ",",
    header: bool = True,
    missing: str = "NA",
    types: Optional[Mapping[str, str]] = None,
) -> Dataset:
    """Read a CSV file into typed columns.

    A column is numeric when every non-missing cell parses as a finite real;
    ``types`` forces a column to ``"numeric"`` or ``"categorical"``.
    """
    path = Path(path)
    try:
        with open(path, newline="", encoding="utf-8-sig") as fh:
            rows = list(csv.reader(fh, delimiter=delimiter))
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from exc

    # csv.reader yields [] for blank lines; keep line numbers for messages
    numbered = [(i + 1, r) for i, r in enumerate(rows) if r]
    if not numbered:
        raise DataError(f"{path} is empty")
    if header:
        names = [c.strip() for c in numbered[0][1]]
        body = numbered[1:]
    else:
        names = [f"col{j + 1}" for j in range(len(numbered[0][1]))]
        body = numbered
    if len(set(names)) != len(names) or any(not n for n in names):
        raise DataError("column names must be unique and non-empty")
    width = len(names)
    for lineno, r in body:
        if len(r) != width:
            raise DataError(f"line {lineno}: expected {width} fields, found {len(r)}")

    types = dict(types or {})
    unknown = set(types) - set(names)
    if unknown:
        raise DataError(f"type override for unknown column(s): {', '.join(sorted(unknown))}")

    columns = []
    for j, name in enumerate(names):
        cells = [(lineno, r[j].strip()) for lineno, r in body]
        present = [(lineno, c) for lineno, c in cells if c != missing]
        kind = types.get(name)
        if kind is None:
            kind = NUMERIC if all(_parse_float(c) is not None for _, c in present) else CATEGORICAL
        if kind == NUMERIC:
            values = []
            for lineno, c in cells:
                if c == missing:
                    values.append(None)
                    continue
                v = _parse_float(c)
                if v is None:
                    raise DataError(f"line {lineno}, column {name!r}: {c!r} is not a finite number")
                values.append(v)
        elif kind == CATEGORICAL:
            values = [None if c == missing else c for _, c in cells]
        else:
            raise DataError(f"column type must be {NUMERIC!r} or {CATEGORICAL!r}, got {kind!r}")
        columns.append(Column(name, kind, tuple(values)))
    return Dataset(tuple(columns), str(path))
