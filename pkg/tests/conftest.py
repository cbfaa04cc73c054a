import pytest

from taxman.number_theory import build_spf


@pytest.fixture(autouse=True)
def _isolated_oracle_cache(tmp_path, monkeypatch):
    """Keep each test's on-disk oracle cache private."""
    monkeypatch.setenv("TAXMAN_ORACLE_CACHE", str(tmp_path / "oracle_cache.txt"))


@pytest.fixture(scope="session")
def spf200():
    return build_spf(200)


@pytest.fixture(scope="session")
def spf2000():
    return build_spf(2000)
