import pytest

from zetastar.numerics import PrecisionConfig


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    # never touch the user's real cache from the test suite
    monkeypatch.setenv("ZETASTAR_CACHE_DIR", str(tmp_path / "cache"))
    for var in ("ZETASTAR_DIGITS", "ZETASTAR_GUARD", "ZETASTAR_QMAX"):
        monkeypatch.delenv(var, raising=False)


@pytest.fixture(scope="session")
def cfg50():
    return PrecisionConfig(digits=50, guard=10)


@pytest.fixture(scope="session")
def cfg30():
    return PrecisionConfig(digits=30, guard=10)
