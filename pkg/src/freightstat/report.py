"""Deterministic text/JSON rendering of analysis results."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field


def _clean(obj):
    # JSON has no NaN/Infinity; emit null instead
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return _clean(obj.item())
    return obj


@dataclass
class Report:
    kind: str
    input: dict
    result: dict
    warnings: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return _clean(
            {"kind": self.kind, "input": self.input, "result": self.result, "warnings": list(self.warnings)}
        )

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2, allow_nan=False) + "\n"

    def to_text(self) -> str:
        lines = [f"== {self.kind} =="]
        _text_lines(self.input, lines, 0, "input")
        _text_lines(self.result, lines, 0, None)
        for w in self.warnings:
            lines.append(f"warning: {w}")
        return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    if isinstance(v, bool) or v is None:
        return str(v).lower() if isinstance(v, bool) else "NA"
    if isinstance(v, float):
        return "NA" if math.isnan(v) else f"{v:.10g}"
    return str(v)


def _text_lines(obj, lines: list, depth: int, title) -> None:
    pad = "  " * depth
    if title is not None:
        lines.append(f"{pad}{title}:")
        depth += 1
        pad = "  " * depth
    for key, value in obj.items():
        if isinstance(value, dict):
            _text_lines(value, lines, depth, key)
        elif isinstance(value, (list, tuple)) and value and isinstance(value[0], (list, tuple)):
            lines.append(f"{pad}{key}:")
            for row in value:
                lines.append(f"{pad}  " + "  ".join(_fmt(v) for v in row))
        elif isinstance(value, (list, tuple)):
            lines.append(f"{pad}{key}: " + ", ".join(_fmt(v) for v in value))
        else:
            lines.append(f"{pad}{key}: {_fmt(value)}")


def gnuplot_block(edges, counts, expected=None) -> str:
    """Whitespace-separated ``lower upper midpoint count`` rows, plus ``expected`` if given.

    Open-ended final bins are plotted one bin-width past their edge.
    """
    out = ["# lower upper midpoint count" + (" expected" if expected is not None else "")]
    for i, c in enumerate(counts):
        lo, hi = edges[i], edges[i + 1]
        if math.isinf(hi):
            width = edges[i] - edges[i - 1] if i > 0 else 1.0
            mid = lo + width / 2.0
        else:
            mid = (lo + hi) / 2.0
        row = f"{lo!r} {hi!r} {mid!r} {c}"
        if expected is not None:
            row += f" {float(expected[i])!r}"
        out.append(row)
    return "\n".join(out) + "\n"
