import os
import sys
from pathlib import Path

import pytest

# Add project root to python path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.numerics.quadrature import QuadratureSettings  # noqa: E402
from src.core.numerics.special_functions import DunklParameter  # noqa: E402


@pytest.fixture
def temp_config_file(tmp_path):
    """
    Fixture to provide a temporary config file path.
    This ensures tests don't mess with the real config.json.
    """
    config_path = tmp_path / "test_config.json"

    yield config_path

    if config_path.exists():
        os.remove(config_path)


@pytest.fixture(autouse=True)
def isolated_environment(tmp_path, monkeypatch):
    """Keep user config, logs and artifacts of the developer machine out of the tests."""
    monkeypatch.delenv("DUNKL_HERMITE_CONFIG", raising=False)
    monkeypatch.setenv("DUNKL_HERMITE_LOGS", str(tmp_path / "logs"))
    monkeypatch.chdir(tmp_path)


@pytest.fixture(params=[0.0, 0.5, 1.5], ids=lambda k: f"k={k:g}")
def parameter(request):
    """Multiplicities covering the Hermite case, the reference case and k > 1."""
    return DunklParameter(request.param)


@pytest.fixture
def half():
    return DunklParameter(0.5)


@pytest.fixture
def settings():
    return QuadratureSettings()
