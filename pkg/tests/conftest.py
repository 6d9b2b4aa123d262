import pytest

from dilators.config import get_settings


@pytest.fixture
def settings_env(monkeypatch):
    """Set ``DILATORS_*`` variables for one test: ``settings_env(WORKERS=2)``."""

    def apply(**values):
        for name, value in values.items():
            monkeypatch.setenv(f"DILATORS_{name}", str(value))
        get_settings.cache_clear()
        return get_settings()

    yield apply
    get_settings.cache_clear()
