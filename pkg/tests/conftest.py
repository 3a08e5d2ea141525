import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rolemine import build_store

DATA = Path(__file__).parent / "data"
GOLDEN = DATA / "golden"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def fixture_paths() -> tuple[Path, Path]:
    return DATA / "fixture_actors.list", DATA / "fixture_actresses.list"


@pytest.fixture(scope="session")
def fixture_store(fixture_paths):
    store, _reports = build_store(*fixture_paths)
    return store
