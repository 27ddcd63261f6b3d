from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    """Keep CLI runs from touching the user's cache or inheriting a budget."""
    monkeypatch.setenv("HOMLP_CACHE_DIR", str(tmp_path / "cache"))
    monkeypatch.delenv("HOMLP_BUDGET", raising=False)
