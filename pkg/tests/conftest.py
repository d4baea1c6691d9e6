import json

import numpy as np
import pytest

from core.models import RadioConfig, Room, SceneSummary


@pytest.fixture
def room() -> Room:
    return Room()


@pytest.fixture
def radio() -> RadioConfig:
    return RadioConfig()


@pytest.fixture
def scene(room, radio) -> SceneSummary:
    return SceneSummary.from_setup(room, radio)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240917)


@pytest.fixture
def write_config(tmp_path):
    """Write a run configuration dict as JSON and return its path as a string."""

    def _write(data: dict, name: str = "run.json") -> str:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return _write
