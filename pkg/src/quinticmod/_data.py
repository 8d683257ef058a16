"""Locate bundled data files, honoring the QML_DATA_DIR override."""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path


def data_path(name: str) -> Path:
    override = os.environ.get("QML_DATA_DIR")
    if override:
        cand = Path(override) / name
        if cand.exists():
            return cand
    return Path(str(resources.files("quinticmod") / "data" / name))
