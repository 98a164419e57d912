"""The bundled example datasets."""

from __future__ import annotations

import hashlib
import json
from importlib import resources
from pathlib import Path

from .io import Dataset, load_csv

FIXTURES = resources.files(__package__) / "fixtures"


def manifest() -> dict:
    return json.loads((FIXTURES / "manifest.json").read_text())


def fixture_names() -> list[str]:
    return sorted(manifest())


def fixture_path(name: str) -> Path:
    if not name.endswith(".csv"):
        name += ".csv"
    if name not in manifest():
        raise KeyError(f"no bundled dataset named {name!r}")
    return Path(str(FIXTURES / name))


def checksum(name: str) -> str:
    return hashlib.sha256(fixture_path(name).read_bytes()).hexdigest()


def load(name: str) -> Dataset:
    return load_csv(fixture_path(name))
