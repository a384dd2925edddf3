import random

import pytest

from zpgabor.config import get_settings
from zpgabor.group.group import GroupParams


@pytest.fixture(autouse=True)
def isolated_workdir(tmp_path, monkeypatch):
    """Relative paths from the settings (log file, report db) land in tmp_path."""
    monkeypatch.chdir(tmp_path)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def z2sq():
    return GroupParams(2, 2)


@pytest.fixture
def z3sq():
    return GroupParams(3, 2)
