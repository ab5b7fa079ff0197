"""Shared fixtures: paths to the packaged data files."""

import importlib.resources
from pathlib import Path

import pytest


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return Path(str(importlib.resources.files("casegraph").joinpath("data")))


@pytest.fixture(scope="session")
def demo_dir(data_dir: Path) -> Path:
    return data_dir / "demo"
